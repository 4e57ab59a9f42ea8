#include "doctest.h"

#include "dp2/local.hpp"
#include "dp2/local_internal.hpp"

#include <random>
#include <set>

using namespace dp2;

namespace {

// (a,b)_p = 1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo p^k (a, b with valuation <= 1)
int brute_hilbert(long a, long b, long p) {
    auto reduce = [&](long v) {
        while (v % (p * p) == 0) v /= p * p;
        return v;
    };
    a = reduce(a);
    b = reduce(b);
    long M = 1;
    for (int k = 0; k < (p == 2 ? 6 : 3); ++k) M *= p;
    std::set<long> squares, unit_squares;
    for (long z = 0; z < M; ++z) {
        squares.insert(z * z % M);
        if (z % p) unit_squares.insert(z * z % M);
    }
    for (long x = 0; x < M; ++x)
        for (long y = 0; y < M; ++y) {
            long v = ((a % M + M) % M * (x * x % M) + (b % M + M) % M * (y * y % M)) % M;
            bool prim = x % p || y % p;
            if (prim ? squares.count(v) : unit_squares.count(v)) return 1;
        }
    return -1;
}

// c = y / 2^s in Z[i][r]/(r^4 - 17): N_gh(c) = 1 and N_g(c) = target modulo 32, by schoolbook arithmetic
bool witness_holds(const NormWitness& w) {
    long M = 1L << (5 + 4 * w.scale);
    using E = std::array<long, 8>;
    auto mul = [&](const E& x, const E& y) {
        E out{};
        for (int k1 = 0; k1 < 8; ++k1)
            for (int k2 = 0; k2 < 8; ++k2) {
                int a = k1 % 2 + k2 % 2, b = k1 / 2 + k2 / 2;
                __int128 c = static_cast<__int128>(x[k1]) * y[k2];
                if (a == 2) a = 0, c = -c;
                if (b >= 4) b -= 4, c *= 17;
                out[a + 2 * b] = static_cast<long>(((out[a + 2 * b] + c) % M + M) % M);
            }
        return out;
    };
    // sigma: i -> e_i i, r -> e_r r (e = +-1) or r -> i r
    auto act = [&](const E& x, bool rotate) {
        E out{};
        for (int k = 0; k < 8; ++k) {
            int a = k % 2, b = k / 2;
            if (rotate) {
                // i^a (i r)^b
                int e = (a + b) % 4;
                long v = e >= 2 ? -x[k] : x[k];
                out[e % 2 + 2 * b] = ((out[e % 2 + 2 * b] + v) % M + M) % M;
            } else {
                out[k] = (a + b) % 2 ? (M - x[k]) % M : x[k];
            }
        }
        return out;
    };
    E y;
    for (int k = 0; k < 8; ++k) y[k] = w.y[k] % M;
    long Mh = 1L << (5 + 2 * w.scale);
    auto ngh = mul(y, act(y, false));
    for (int k = 0; k < 8; ++k)
        if (ngh[k] % Mh != (k == 0 ? (1L << (2 * w.scale)) % Mh : 0)) return false;
    E ng = y, cur = y;
    for (int t = 1; t < 4; ++t) {
        cur = act(cur, true);
        ng = mul(ng, cur);
    }
    long f = 1L << (4 * w.scale);
    for (int k = 0; k < 8; ++k) {
        long want = k == 0 ? f * w.target.first % M : (k == 1 ? f * w.target.second % M : 0);
        if (ng[k] != want) return false;
    }
    return true;
}

int hilbert_sum_over_places(const Rational& a, const Rational& b) {
    std::set<long> places{2};
    for (const mpz_class& n : {a.get_num(), a.get_den(), b.get_num(), b.get_den()}) {
        mpz_class m = abs(n);
        for (auto& [q, e] : factorize(m.get_si())) places.insert(static_cast<long>(q));
    }
    int minus = hilbert_symbol(a, b, kRealPlace) < 0;
    for (long p : places) minus += hilbert_symbol(a, b, p) < 0;
    return minus;
}

std::set<InvariantVector> set_of(std::initializer_list<InvariantVector> v) { return {v}; }

}  // namespace

TEST_SUITE("local") {
    TEST_CASE("Hilbert symbol values") {
        CHECK(hilbert_symbol(-1, -1, kRealPlace) == -1);
        CHECK(hilbert_symbol(-1, 3, kRealPlace) == 1);
        for (long place : {0L, 2L, 3L, 7L, 17L}) CHECK(hilbert_symbol(1, Rational(-34, 9), place) == 1);
        CHECK(hilbert_symbol(2, 7, 7) == brute_hilbert(2, 7, 7));
        CHECK(hilbert_symbol(2, 7, 7) == 1);
        CHECK(hilbert_symbol(-1, -1, 2) == -1);
        CHECK(hilbert_symbol(Rational(3, 4), Rational(-5, 9), 5) == hilbert_symbol(3, -5, 5));
    }

    TEST_CASE("Hilbert symbol agrees with brute-force solubility") {
        std::mt19937 rng(11);
        std::uniform_int_distribution<long> d(-40, 40);
        for (int t = 0; t < 60; ++t) {
            long a = d(rng), b = d(rng);
            if (a == 0 || b == 0) continue;
            for (long p : {2L, 3L, 5L, 7L}) {
                INFO("a = " << a << ", b = " << b << ", p = " << p);
                CHECK(hilbert_symbol(a, b, p) == brute_hilbert(a, b, p));
            }
        }
    }

    TEST_CASE("Hilbert product formula on random rationals") {
        std::mt19937 rng(5);
        std::uniform_int_distribution<long> n(-500, 500), den(1, 60);
        for (int t = 0; t < 200; ++t) {
            Rational a(n(rng), den(rng)), b(n(rng), den(rng));
            a.canonicalize();
            b.canonicalize();
            if (sgn(a) == 0 || sgn(b) == 0) continue;
            CHECK(hilbert_sum_over_places(a, b) % 2 == 0);
        }
    }

    TEST_CASE("bad primes") {
        CHECK(bad_primes({-25, -5, 45}) == std::vector<long>{2, 3, 5});
        CHECK(bad_primes({-126, -91, 78}) == std::vector<long>{2, 3, 7, 13});
        CHECK(bad_primes({1, 1, 1}) == std::vector<long>{2});
    }

    TEST_CASE("2-adic and 3-adic point classes of the first example") {
        Surface S{-25, -5, 45};
        auto cls = padic_point_classes(S, 2, 5);
        std::size_t liftable = 0;
        for (auto& c : cls) {
            if (c.status != PointStatus::liftable) continue;
            ++liftable;
            CHECK(c.wxyz[1] % 2 == 1);
            CHECK(c.wxyz[2] % 2 == 0);
            CHECK(c.wxyz[3] % 2 == 1);
        }
        CHECK(liftable > 0);
        auto cls3 = padic_point_classes(S, 3, 3);
        std::size_t lift3 = 0;
        bool x_divisible = false;
        for (auto& c : cls3) {
            if (c.status != PointStatus::liftable) continue;
            ++lift3;
            i64 x = c.wxyz[1], y = c.wxyz[2], z = c.wxyz[3];
            CHECK(y % 3 != 0);
            CHECK((-5 * x * x - 2 * y * y + 9 * z * z) % 3 != 0);
            if (x % 3 == 0) x_divisible = true;
        }
        CHECK(lift3 > 0);
        // (0 : 1 : 0) with w^2 = -5, a 3-adic square: x need not be prime to 3
        CHECK(x_divisible);
        CHECK_THROWS_AS(padic_point_classes(S, 2, 12, PadicOptions{Normalization::first_unit, 1e6}), CapacityError);
    }

    TEST_CASE("the point (1,1,0,0) lifts when A = 1") {
        auto cls = padic_point_classes({1, 3, 5}, 3, 1);
        bool found = false;
        for (auto& c : cls)
            if (c.wxyz == std::array<i64, 4>{1, 1, 0, 0}) {
                found = true;
                CHECK(c.status == PointStatus::liftable);
            }
        CHECK(found);
    }

    TEST_CASE("(x, y) mod 8 at 2-adic points with z = 1") {
        Surface S{-25, -5, 45};
        CellEvaluator ev = [](const std::array<i64, 4>& pt, int a) -> std::optional<InvariantVector> {
            if (a < 4) return std::nullopt;
            i64 g = ((-5 * pt[1] * pt[1] - 2 * pt[2] * pt[2] + 9) % 16 + 16) % 16;
            return InvariantVector{static_cast<int>(pt[1] % 8), static_cast<int>(pt[2] % 8), static_cast<int>(g)};
        };
        auto ex = explore_padic(S, 2, ev, 1, 12, Normalization::z_one);
        CHECK(ex.undetermined == 0);
        std::set<std::pair<int, int>> xy;
        for (auto& v : ex.attained) {
            xy.insert({v[0], v[1]});
            CHECK(v[2] == 12);
        }
        std::set<std::pair<int, int>> expected{{1, 2}, {1, 6}, {3, 0}, {3, 4}, {5, 0}, {5, 4}, {7, 2}, {7, 6}};
        CHECK(xy == expected);
        // every 2-adic point has z odd: the other charts contain no points
        auto other = explore_padic(S, 2, ev, 1, 12, Normalization::first_unit);
        std::size_t z_even = 0;
        CellEvaluator zev = [](const std::array<i64, 4>& pt, int) -> std::optional<InvariantVector> {
            return InvariantVector{static_cast<int>(pt[3] % 2)};
        };
        auto zs = explore_padic(S, 2, zev, 1, 12);
        for (auto& v : zs.attained) z_even += v[0] == 0;
        CHECK(z_even == 0);
        CHECK(other.undetermined == 0);
    }

    TEST_CASE("first example profiles and verdict") {
        auto ex = build_ex71();
        CHECK(ex.verified());
        REQUIRE(ex.classes.size() == 1);
        ProfileOptions opt;
        opt.real_samples = 20000;
        CHECK(quaternion_profile(ex.classes[0], ex.S, 2, opt).attained == set_of({{2}}));
        CHECK(quaternion_profile(ex.classes[0], ex.S, 3, opt).attained == set_of({{0}}));
        CHECK(quaternion_profile(ex.classes[0], ex.S, 5, opt).attained == set_of({{0}}));
        auto v = example_verdict(ex, opt);
        CHECK(v.conclusion == Conclusion::obstructed);
        CHECK(v.relies_on_sampling);
        for (auto& p : v.profiles) CHECK_FALSE(p.inconclusive());
    }

    TEST_CASE("deepening leaves attained sets unchanged") {
        auto ex = build_ex71();
        for (long p : {2L, 3L, 5L}) {
            std::set<InvariantVector> first;
            for (int start = 1; start <= 3; ++start) {
                ProfileOptions opt;
                opt.start_level = start;
                auto prof = quaternion_profile(ex.classes, ex.S, p, opt);
                CHECK_FALSE(prof.inconclusive());
                if (start == 1)
                    first = prof.attained;
                else
                    CHECK(prof.attained == first);
            }
        }
    }

    TEST_CASE("split algebras have invariant zero") {
        auto Q = NumberField::rationals();
        QuaternionClass q{1, make_function("x^2 + 3*y^2 - z^2", "x^2", Q), {}, "split"};
        Surface S{-25, -5, 45};
        for (long p : {2L, 3L, 5L}) CHECK(quaternion_profile(q, S, p).attained == set_of({{0}}));
        ProfileOptions opt;
        opt.real_samples = 2000;
        CHECK(quaternion_profile(q, S, kRealPlace, opt).attained == set_of({{0}}));
    }

    TEST_CASE("verdict rules") {
        LocalProfile a, b;
        a.place = kRealPlace;
        a.method = "sampling";
        a.attained = {{0}};
        b.place = 2;
        b.method = "exact-enumeration";
        b.attained = {{0}};
        CHECK(verdict({a, b}).conclusion == Conclusion::not_obstructed_by_class);
        b.attained = {{2}};
        auto v = verdict({a, b});
        CHECK(v.conclusion == Conclusion::obstructed);
        CHECK(v.relies_on_sampling);
        b.undetermined = 3;
        CHECK(verdict({a, b}).conclusion == Conclusion::inconclusive);
        b.attained = {{0}, {2}};
        CHECK(verdict({a, b}).conclusion == Conclusion::not_obstructed_by_class);
        b.attained = {};
        b.undetermined = 0;
        CHECK(verdict({a, b}).conclusion == Conclusion::inconclusive);
        LocalProfile c = a, d = b;
        c.attained = {{2, 2}, {0, 0}};
        d.attained = {{2, 0}, {0, 2}};
        CHECK(verdict({c, d}).conclusion == Conclusion::obstructed);
        d.attained = {{1}, {3}};
        LocalProfile e = a;
        e.attained = {{1}};
        CHECK(verdict({e, d}).conclusion == Conclusion::not_obstructed_by_class);
    }

    TEST_CASE("u^2 + 2 v^2 and the residue lemma") {
        auto r3 = represent_u2_plus_2v2(3);
        CHECK(r3.u == 1);
        CHECK(r3.v == 1);
        CHECK(r3.s == 1);
        auto r19 = represent_u2_plus_2v2(19);
        CHECK(r19.u == 1);
        CHECK(r19.v == 3);
        CHECK(r19.s == -1);
        CHECK_THROWS(represent_u2_plus_2v2(4));
        CHECK_THROWS(represent_u2_plus_2v2(5));
        CHECK_THROWS(represent_u2_plus_2v2(35));
        for (i64 p : {3, 19, 67, 83}) CHECK(lemma_check(p));
        // oracle: direct scan of y with y^4 = -2
        for (i64 p : {19, 83}) {
            auto r = represent_u2_plus_2v2(p);
            for (i64 y = 1; y < p; ++y)
                if (y * y % p * (y * y % p) % p == p - 2) CHECK((r.v * y * y - r.s * r.u) % p == 0);
        }
    }

    TEST_CASE("second example family") {
        ProfileOptions opt;
        opt.real_samples = 20000;
        for (i64 p : {3, 19}) {
            auto ex = build_ex72(p);
            CHECK(ex.verified());
            auto v = example_verdict(ex, opt);
            REQUIRE(v.profiles.size() == 3);
            CHECK(v.profiles[0].attained == set_of({{0}}));
            CHECK(v.profiles[1].place == 2);
            CHECK(v.profiles[1].attained == set_of({{2}}));
            CHECK(v.profiles[2].place == p);
            CHECK(v.profiles[2].attained == set_of({{0}}));
            CHECK(v.conclusion == Conclusion::obstructed);
        }
    }

    TEST_CASE("third example recipe") {
        Surface S{-126, -91, 78};
        CHECK(generic_triple(S));
        CHECK_FALSE(generic_triple({1, 2, 3}));
        CHECK_FALSE(generic_triple({2, 3, 6}));
        auto ex = build_ex73(S, ConicPoint{-13, 0, -12, 0, 21});
        for (auto& t : ex.transcript) INFO(t.claim << " " << t.ok);
        CHECK(ex.verified());
        REQUIRE(ex.classes.size() == 1);
        auto Q = NumberField::rationals();
        CHECK(ex.classes[0].g.num == parse_poly("3*x^2 + 2*y^2 + 3*z^2", Q, surface_vars()));
        CHECK(ex.classes[0].d == 894348 * -1);
        ProfileOptions opt;
        opt.real_samples = 20000;
        auto v = example_verdict(ex, opt);
        for (auto& p : v.profiles) {
            INFO(place_name(p.place));
            CHECK_FALSE(p.inconclusive());
            CHECK(p.attained == (p.place == 2 ? set_of({{2}}) : set_of({{0}})));
        }
        CHECK(v.conclusion == Conclusion::obstructed);
        auto found = find_conic_point(S, 40);
        REQUIRE(found.has_value());
        auto ex2 = build_ex73(S, found);
        CHECK(ex2.verified());
        CHECK_THROWS(build_ex73({1, 2, 3}));
    }

    TEST_CASE("third example recipe with an irrational conic point") {
        // a point with r2 != 0 exercises the theta-part of g
        Surface S{-10, 3, -7};
        REQUIRE(generic_triple(S));
        auto pt = find_conic_point(S, 8);
        REQUIRE(pt.has_value());
        CHECK(sgn(pt->r2) != 0);
        auto ex = build_ex73(S, pt);
        for (auto& t : ex.transcript) {
            INFO(t.claim);
            CHECK(t.ok);
        }
        CHECK(ex.verified());
    }

    TEST_CASE("fourth example: descent data and identities") {
        auto ex = build_ex74();
        for (auto& t : ex.transcript) {
            INFO(t.claim);
            CHECK(t.ok);
        }
        CHECK(ex.classes.size() == 3);
    }

    TEST_CASE("fourth example: local profiles") {
        auto ex = build_ex74();
        ProfileOptions opt;
        opt.start_level = 2;
        auto p17 = quaternion_profile(ex.classes, ex.S, 17, opt);
        CHECK_FALSE(p17.inconclusive());
        REQUIRE_FALSE(p17.attained.empty());
        for (auto& v : p17.attained) CHECK(std::count(v.begin(), v.end(), 2) == 2);
        auto p2 = quaternion_profile(ex.classes, ex.S, 2);
        CHECK_FALSE(p2.inconclusive());
        CHECK(p2.attained == set_of({{0, 0, 0}, {2, 2, 2}}));
        // real points: ramified exactly where w < 0
        std::vector<detail::PreparedFunction> fs;
        for (auto& q : ex.classes) fs.push_back(detail::prepare(q.g));
        RealEvaluator ev = [&](const std::array<double, 4>& pt) -> std::optional<InvariantVector> {
            int sign_w = pt[0] < 0 ? 2 : 0;
            InvariantVector out;
            for (auto& f : fs) {
                double v = f.h.eval_real(pt) * f.scale.get_d();
                if (std::fabs(v) < 1e-9) return std::nullopt;
                out.push_back((v < 0 ? 2 : 0) == sign_w ? 0 : 1);
            }
            return out;
        };
        auto real = real_profile(ex.S, ev, 20000);
        CHECK(real.attained == set_of({{0, 0, 0}}));
        ProfileOptions ropt;
        ropt.real_samples = 20000;
        auto v = example_verdict(ex, ropt);
        CHECK(v.conclusion == Conclusion::obstructed);
    }

    TEST_CASE("fifth example: identities and cocycle conditions") {
        auto ex = build_ex75();
        for (auto& t : ex.transcript) {
            INFO(t.claim);
            CHECK(t.ok);
        }
        CHECK(ex.kind == ClassKind::cyclic_order4);
        CHECK(ex.cyclic_functions.size() == 2);
    }

    TEST_CASE("fifth example: 17-adic quartic residues") {
        auto ex = build_ex75();
        auto rep = quartic_residue_profile(ex.cyclic_functions[0], ex.S, 17, 6);
        CHECK(rep.undetermined == 0);
        CHECK(rep.values == std::set<i64>{8, 15});
        for (auto& [u, res] : rep.quartic_residue) CHECK_FALSE(res);
        CHECK(rep.quarters == std::set<int>{2});
        auto Ki = adjoin_root(NumberField::rationals(), 2, nf(NumberField::rationals(), -1), "i");
        auto one = make_function("x^2", "x^2", Ki);
        auto r1 = quartic_residue_profile(one, ex.S, 17, 2);
        CHECK(r1.values == std::set<i64>{1});
        CHECK(r1.quartic_residue.at(1));
        auto fourth = make_function("x^4", "z^4", Ki);
        auto r4 = quartic_residue_profile(fourth, {1, 3, 5}, 13, 2);
        for (auto& [u, res] : r4.quartic_residue) CHECK(res);
    }

    TEST_CASE("fifth example: 2-adic table membership and norm witnesses") {
        auto ex = build_ex75();
        const auto& table = ex75_mod32_table();
        CHECK(table.size() == 32);
        CHECK(table.front() == GaussianResidue{1, 0});
        auto rep = mod32_membership(ex.S, ex.cyclic_functions, table);
        CHECK(rep.undetermined == 0);
        CHECK(rep.all_members);
        // fault injection: without 1 + 0i some 2-adic point has neither value in the table
        std::vector<GaussianResidue> broken(table.begin() + 1, table.end());
        CHECK_FALSE(mod32_membership(ex.S, ex.cyclic_functions, broken).all_members);
        auto wit = norm_image_witnesses(table);
        for (std::size_t k = 0; k < wit.size(); ++k) {
            auto& w = wit[k];
            INFO(w.target.first << "+" << w.target.second << "i");
            REQUIRE(w.found);
            // integral witnesses exactly for the first row
            CHECK((w.scale == 0) == (k < 8));
            CHECK(witness_holds(w));
        }
        CHECK(wit[24].target == GaussianResidue{0, 1});
    }

    TEST_CASE("fifth example: verdicts") {
        auto ex = build_ex75();
        ProfileOptions opt;
        opt.real_samples = 20000;
        auto v = example_verdict(ex, opt);
        for (auto& p : v.profiles) {
            INFO(place_name(p.place));
            CHECK_FALSE(p.inconclusive());
        }
        CHECK(v.profiles[0].skipped < v.profiles[0].samples / 100);
        CHECK(v.conclusion == Conclusion::obstructed);
        auto two = quaternion_verdict(ex.S, ex.classes, opt);
        for (auto& p : two.profiles) CHECK(p.attained == set_of({{0}}));
        CHECK(two.conclusion == Conclusion::not_obstructed_by_class);
    }

    TEST_CASE("good reduction") {
        Surface S{-25, -5, 45};
        auto c7 = good_reduction_solvable(S, 7);
        CHECK(c7.solvable);
        CHECK(c7.method == "smooth point mod p");
        auto c41 = good_reduction_solvable(S, 41);
        CHECK(c41.solvable);
        CHECK(c41.method == "Weil bound");
        CHECK_THROWS(good_reduction_solvable(S, 5));
        for (long p : {3L, 7L, 11L, 13L, 17L, 19L, 23L, 29L, 31L, 37L}) CHECK(good_reduction_solvable({1, 1, 1}, p).solvable);
    }
}

#include "doctest.h"
#include "dp2/cohomology.hpp"
#include "dp2/kummer.hpp"

#include <random>

using namespace dp2;

namespace {

GModule pic(const std::vector<std::string>& words) {
    std::vector<GroupElement> g;
    for (auto& w : words) g.push_back(parse_word(w));
    return GModule::from_subgroup(generate_subgroup(g));
}

std::size_t idx(const GModule& m, const std::string& word) {
    auto i = m.index_of(parse_word(word));
    REQUIRE(i.has_value());
    return *i;
}

IntVec iv(std::initializer_list<long> l) { return to_intvec(std::vector<long>(l)); }

bool same_span(const std::vector<IntVec>& a, const std::vector<IntVec>& b, std::size_t dim) {
    auto ea = echelon_basis(a, dim), eb = echelon_basis(b, dim);
    for (auto& v : a)
        if (!in_lattice(v, eb)) return false;
    for (auto& v : b)
        if (!in_lattice(v, ea)) return false;
    return true;
}

AbelianGroupType type(std::vector<long> d) { return AbelianGroupType{std::move(d), 0}; }

IntMatrix mat1(long x) { return IntMatrix{{x}}; }

// coordinates of v in the given basis of a saturated sublattice
IntVec coords_in(const std::vector<IntVec>& basis, const IntVec& v) {
    IntMatrix B(v.size(), basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
        for (std::size_t i = 0; i < v.size(); ++i) B(i, j) = basis[j][i];
    auto ks = kernel_and_solve(B, v);
    REQUIRE(ks.solution.has_value());
    return *ks.solution;
}

void check_representatives(const GModule& m, const CohomologyResult& r) {
    auto p = pc_presentation(m);
    for (std::size_t i = 0; i < r.representatives.size(); ++i) {
        auto& rep = r.representatives[i];
        std::vector<IntVec> f = rep.backend == "presentation" ? expand_presentation_cocycle(m, p, rep.values) : rep.values;
        CHECK(is_standard_cocycle(m, f));
        CHECK_FALSE(is_standard_coboundary(m, f));
        std::vector<IntVec> nf = f;
        for (auto& v : nf)
            for (auto& x : v) x *= r.orders[i];
        CHECK(is_standard_coboundary(m, nf));
    }
}

}  // namespace

TEST_SUITE("cohomology") {

TEST_CASE("toy modules") {
    auto neg = GModule::cyclic(2, mat1(-1));
    CHECK(h1_presentation(neg).group == type({2}));
    CHECK(h1_standard(neg).group == type({2}));
    auto res = build_resolution(neg, ResolutionKind::cyclic, {1});
    CHECK(h1_via_resolution(neg, res).group == type({2}));
    auto triv = GModule::cyclic(2, mat1(1));
    CHECK(h1_presentation(triv).group.trivial());
    CHECK(h1_standard(triv).group.trivial());
    auto swap = GModule::cyclic(2, IntMatrix{{0, 1}, {1, 0}});
    CHECK(h1_via_resolution(swap, build_resolution(swap, ResolutionKind::cyclic, {1})).group.trivial());
    CHECK(h1_presentation(swap).group.trivial());
    // Z/2 trivially on Z^8
    auto t8 = GModule::cyclic(2, IntMatrix::identity(8));
    CHECK(h1_presentation(t8).group.trivial());
    auto idx2 = index2_cyclic_generators(t8);
    REQUIRE(idx2.entries.size() == 1);
    CHECK(idx2.entries[0].h1.trivial());
    // cyclic of odd order and a non-2-group: Z/3 permuting coordinates of Z^3, and Z/6 = Z/2 x Z/3
    IntMatrix cyc3{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    auto p3 = GModule::cyclic(3, cyc3);
    CHECK(h1_presentation(p3).group.trivial());
    auto z6 = GModule::abelian({2, 3}, {IntMatrix{{-1}}, IntMatrix{{1}}});
    CHECK(h1_presentation(z6).group == type({2}));
    CHECK(h1_standard(z6).group == type({2}));
}

TEST_CASE("invariants") {
    auto g0 = GModule::from_subgroup(generic_group());
    auto h0 = invariants_H0(g0);
    CHECK(h0.rank == 1);
    CHECK(same_span(h0.basis, {iv({-1, -1, -1, -1, -1, -1, -1, 3})}, 8));
    auto triv = GModule::from_subgroup(generate_subgroup({}));
    CHECK(invariants_H0(triv).rank == 8);
    auto h = pic({"iota_c sigma tau"});
    auto r = invariants_H0(h);
    CHECK(r.rank == 3);
    CHECK(same_span(r.basis,
                    {iv({-1, -1, -1, -1, -1, -1, -1, 3}), iv({0, 0, 0, 0, 1, -1, 0, 0}), iv({0, 0, 0, 0, 1, 1, 1, -1})},
                    8));
}

TEST_CASE("presentation backend on the worked examples") {
    auto g0 = GModule::from_subgroup(generic_group());
    auto r = h1_presentation(g0);
    CHECK(r.group == type({2}));
    check_representatives(g0, r);
    auto klein = GModule::from_subgroup(galois_group(1, 1, 1));
    CHECK(h1_presentation(klein).group == type({2, 2, 2}));
    auto ex75 = GModule::from_subgroup(galois_group(-9826, -2, 136));
    CHECK(h1_presentation(ex75).group == type({4}));
    auto ex75p = pic({"iota_a iota_b iota_c sigma tau", "iota_a^3 iota_c", "iota_b iota_c^3 sigma"});
    CHECK(ex75p.order() == 16);
    CHECK(h1_presentation(ex75p).group == type({4}));
    auto pc = pc_presentation(g0);
    long prod = 1;
    for (long q : pc.relative_orders) prod *= q;
    CHECK(prod == 128);
    for (auto& rel : pc.relations) CHECK(evaluate_word(g0, pc, rel.lhs) == evaluate_word(g0, pc, rel.rhs));
}

TEST_CASE("standard backend") {
    auto h61 = pic({"iota_a iota_b", "sigma tau iota_a iota_c"});
    CHECK(h61.order() == 16);
    CHECK(h1_standard(h61).group.trivial());
    auto H = GModule::from_subgroup(normal_subgroup_H());
    auto r = h1_standard(H);
    CHECK(r.group == type({2}));
    check_representatives(H, r);
    CHECK_THROWS_AS(h1_standard(GModule::from_subgroup(generic_group())), CapacityError);
}

TEST_CASE("resolutions are complexes with chain-map comparisons") {
    auto H = GModule::from_subgroup(normal_subgroup_H());
    std::vector<std::size_t> gens{idx(H, "iota_a"), idx(H, "iota_b"), idx(H, "iota_a iota_b iota_c")};
    auto tri = build_resolution(H, ResolutionKind::tricyclic, gens);
    CHECK(boundaries_compose_to_zero(H, tri));
    CHECK(sigma1_is_chain_map(H, tri));
    // running the last partial norm one step further breaks the chain-map identity
    CHECK_FALSE(sigma1_is_chain_map(H, build_resolution_variant_full_norm(H, gens)));
    auto h61 = pic({"iota_a iota_b", "sigma tau iota_a iota_c"});
    auto bi = build_resolution(h61, ResolutionKind::bicyclic, {idx(h61, "iota_a iota_b"), idx(h61, "sigma tau iota_a iota_c")});
    CHECK(boundaries_compose_to_zero(h61, bi));
    CHECK(sigma1_is_chain_map(h61, bi));
    CHECK(h1_via_resolution(h61, bi).group.trivial());
    auto d4 = GModule::from_subgroup(generate_subgroup({parse_word("iota_a iota_b iota_c"), parse_word("sigma")}));
    auto det = detect_resolution(d4);
    REQUIRE(det.has_value());
    CHECK(boundaries_compose_to_zero(d4, *det));
    CHECK(sigma1_is_chain_map(d4, *det));
    // dihedral group of order 8 acting on Z^2 by a rotation and a reflection
    IntMatrix rot{{0, -1}, {1, 0}}, refl{{1, 0}, {0, -1}};
    auto dih = GModule::dihedral(4, rot, refl);
    auto dr = build_resolution(dih, ResolutionKind::dihedral, {1, 4});
    CHECK(boundaries_compose_to_zero(dih, dr));
    CHECK(sigma1_is_chain_map(dih, dr));
    CHECK(h1_via_resolution(dih, dr).group == h1_presentation(dih).group);
    CHECK(h1_via_resolution(dih, dr).group == h1_standard(dih).group);
}

TEST_CASE("generic H via the tricyclic complex and the given representative") {
    auto H = GModule::from_subgroup(normal_subgroup_H());
    std::vector<std::size_t> gens{idx(H, "iota_a"), idx(H, "iota_b"), idx(H, "iota_a iota_b iota_c")};
    auto tri = build_resolution(H, ResolutionKind::tricyclic, gens);
    auto r = h1_via_resolution(H, tri);
    CHECK(r.group == type({2}));
    std::vector<IntVec> u{iv({0, 0, 0, 0, -1, -1, -1, 1}), iv({0, 0, 0, 0, -1, 1, 0, 0}), iv({0, 0, 0, 0, -2, 0, -1, 1})};
    CHECK(is_resolution_cocycle(H, tri, u));
    CHECK_FALSE(is_resolution_coboundary(H, tri, u));
    auto f = resolution_to_standard(H, tri, u);
    CHECK(is_standard_cocycle(H, f));
    CHECK_FALSE(is_standard_coboundary(H, f));
    for (auto& rep : r.representatives) {
        CHECK(is_resolution_cocycle(H, tri, rep.values));
        CHECK(is_standard_cocycle(H, resolution_to_standard(H, tri, rep.values)));
    }
}

TEST_CASE("generic group: five-term sequence and the transgression") {
    auto G = GModule::from_subgroup(generic_group());
    ExtensionData ext{{idx(G, "iota_a"), idx(G, "iota_b"), idx(G, "iota_a iota_b iota_c")},
                      {idx(G, "sigma"), idx(G, "tau")}};
    ExtensionChase chase(G, ext);
    CHECK(chase.h_size() == 32);
    CHECK(chase.q_size() == 4);
    CHECK(same_span(chase.invariant_basis(), {iv({-1, -1, -1, -1, -1, -1, -1, 3})}, 8));

    const GModule& hm = chase.h_module();
    auto pos = [&](const std::string& w) {
        auto it = std::find(chase.h_elements().begin(), chase.h_elements().end(), idx(G, w));
        return static_cast<std::size_t>(it - chase.h_elements().begin());
    };
    auto tri = build_resolution(hm, ResolutionKind::tricyclic, {pos("iota_a"), pos("iota_b"), pos("iota_a iota_b iota_c")});
    std::vector<IntVec> u{iv({0, 0, 0, 0, -1, -1, -1, 1}), iv({0, 0, 0, 0, -1, 1, 0, 0}), iv({0, 0, 0, 0, -2, 0, -1, 1})};
    auto f = resolution_to_standard(hm, tri, u);
    auto v = chase.horizontal1(chase.lift(f));
    REQUIRE(v.size() == 2);
    // the stated preimage: constant vectors repeated over Q
    ExtensionChase::Cochain0 a(4, iv({0, 0, 0, 0, -1, 1, 0, 0})), b(4, iv({0, 0, 0, 0, -1, -1, -1, 1}));
    CHECK(chase.vertical(a) == v[0]);
    CHECK(chase.vertical(b) == v[1]);
    auto w = chase.horizontal0({a, b});
    std::vector<IntVec> wv;
    for (auto& c : w) {
        auto x = chase.invariant_part(c);
        REQUIRE(x.has_value());
        wv.push_back(*x);
    }
    for (auto& x : wv) CHECK(std::all_of(x.begin(), x.end(), [](const Int& y) { return sgn(y) == 0; }));
    CHECK(chase.is_q_coboundary(wv));
    auto t = chase.transgress(f);
    CHECK(t.q_invariant);
    CHECK(t.d2_zero);

    auto five = five_term_with_d2(G, ext);
    CHECK(five.h1_q_invariants.trivial());
    CHECK(five.h1_h == type({2}));
    CHECK(five.invariant_classes == 2);
    CHECK(five.d2_kernel == 2);
    CHECK(five.h1_g_order == 2);
}

TEST_CASE("split extensions of the small examples") {
    // (-6,-3,2): H = (Z/4)^2, Q = <sigma>
    auto G = pic({"iota_a iota_b", "sigma tau iota_a iota_c", "sigma"});
    REQUIRE(G.order() == 32);
    CHECK(contained_up_to_symmetry(galois_group(-6, -3, 2), generate_subgroup({parse_word("iota_a iota_b"),
                                                                               parse_word("sigma tau iota_a iota_c"),
                                                                               parse_word("sigma")})));
    ExtensionData e61{{idx(G, "iota_a iota_b"), idx(G, "sigma tau iota_a iota_c")}, {idx(G, "sigma")}};
    auto f61 = five_term_with_d2(G, e61);
    CHECK(f61.h1_h.trivial());
    CHECK(f61.h1_q_invariants == type({2}));
    CHECK(same_span(f61.invariant_basis, {iv({-1, -1, -1, -1, -1, -1, -1, 3}), iv({1, 1, 1, 1, 1, 1, 0, -2})}, 8));
    ExtensionChase c61(G, e61);
    auto qm = c61.q_module_on_invariants();
    // Z + Z': one trivial and one sign line
    IntMatrix s = qm.mats[1];
    CHECK(s.rows == 2);
    CHECK(s(0, 0) + s(1, 1) == 0);
    CHECK(determinant(s) == -1);
    CHECK(h1_presentation(G).group == type({2}));

    // (-25,-5,45): H = <iota_a^2 iota_b iota_c, iota_c^2, sigma tau>, Q = <sigma iota_a iota_b>
    auto G71 = pic({"iota_a^2 iota_b iota_c", "iota_c^2", "sigma tau", "sigma iota_a iota_b"});
    REQUIRE(G71.order() == 32);
    ExtensionData e71{{idx(G71, "iota_a^2 iota_b iota_c"), idx(G71, "iota_c^2"), idx(G71, "sigma tau")},
                      {idx(G71, "sigma iota_a iota_b")}};
    auto f71 = five_term_with_d2(G71, e71);
    CHECK(f71.h1_q_invariants == type({2}));
    CHECK(f71.h1_g_order == 2);
    CHECK(h1_presentation(G71).group == type({2}));
    CHECK(same_span(f71.invariant_basis, {iv({-1, -1, -1, -1, -1, -1, -1, 3}), iv({1, 1, 1, 1, 1, 1, 0, -2})}, 8));

    // automatic extension search agrees with the presentation backend
    for (auto* g : {&G, &G71}) {
        auto ext = find_split_extension(*g);
        REQUIRE(ext.has_value());
        auto ft = five_term_with_d2(*g, *ext);
        CHECK(static_cast<long>(ft.h1_g_order) == h1_presentation(*g).group.order());
    }
}

TEST_CASE("dihedral quotient acting on M^u") {
    auto G = pic({"iota_a iota_b iota_c sigma tau", "iota_a^3 iota_c", "iota_b iota_c^3 sigma"});
    std::size_t u = idx(G, "iota_a iota_b iota_c sigma tau");
    auto Mu = invariants_of(G, generated_subgroup(G, {u})).basis;
    auto onMu = G.on_sublattice(Mu);
    std::size_t g = idx(G, "iota_a^3 iota_c"), h = idx(G, "iota_b iota_c^3 sigma");
    auto dih = GModule::dihedral(4, onMu.mats[g], onMu.mats[h]);
    auto res = build_resolution(dih, ResolutionKind::dihedral, {1, 4});
    CHECK(h1_via_resolution(dih, res).group == type({4}));
    CHECK(h1_presentation(dih).group == type({4}));
    IntVec v1 = iv({-1, 0, 1, 0, 0, 0, 0, 0}), v2 = iv({-1, 0, -1, 0, -1, -1, -2, 2});
    IntVec zero(Mu.size());
    auto c1 = coords_in(Mu, v1), c2 = coords_in(Mu, v2);
    CHECK(is_resolution_cocycle(dih, res, {c1, zero}));
    CHECK(is_resolution_cocycle(dih, res, {c2, zero}));
    CHECK_FALSE(is_resolution_coboundary(dih, res, {c1, zero}));
    IntVec diff = c2;
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= c1[i];
    CHECK(is_resolution_coboundary(dih, res, {diff, zero}));
    // (v1, 0) generates: its order in H^1 is 4
    IntVec c1x2 = c1, c1x4 = c1;
    for (auto& x : c1x2) x *= 2;
    for (auto& x : c1x4) x *= 4;
    CHECK_FALSE(is_resolution_coboundary(dih, res, {c1x2, zero}));
    CHECK(is_resolution_coboundary(dih, res, {c1x4, zero}));
}

TEST_CASE("index-two subgroups and cyclic generators") {
    auto G = pic({"iota_a iota_b iota_c sigma", "tau", "sigma"});
    REQUIRE(G.order() == 8);
    auto rep = index2_cyclic_generators(G);
    CHECK(rep.h1_g.group == type({2, 2, 2}));
    auto H = generated_subgroup(G, {idx(G, "iota_a iota_b iota_c sigma"), idx(G, "tau")});
    bool found = false;
    for (auto& e : rep.entries)
        if (e.subgroup == H) {
            found = true;
            CHECK(e.invariant_basis.size() == 4);
            CHECK(same_span(e.invariant_basis,
                            {iv({1, -1, 0, 0, 0, 0, 0, 0}), iv({0, 0, 1, -1, 0, 0, 0, 0}), iv({0, 0, 0, 0, 1, -1, 0, 0}),
                             iv({-1, -1, -1, -1, -1, -1, -1, 3})},
                            8));
            CHECK(e.h1 == type({2, 2, 2}));
            // the inflation is an isomorphism onto H^1(G,M)
            IntMatrix L(e.images.size() + 3, 3);
            for (std::size_t i = 0; i < e.images.size(); ++i)
                for (std::size_t j = 0; j < 3; ++j) L(i, j) = e.images[i][j];
            for (std::size_t j = 0; j < 3; ++j) L(e.images.size() + j, j) = 2;
            auto sd = smith_normal_form(L);
            Int d = 1;
            for (auto& x : sd.divisors) d *= x;
            CHECK(d == 1);
        }
    CHECK(found);
    CHECK(rep.generated_order == 8);

    auto G71 = pic({"iota_a^2 iota_b iota_c", "iota_c^2", "sigma tau", "sigma iota_a iota_b"});
    auto r71 = index2_cyclic_generators(G71);
    auto H71 = generated_subgroup(G71, {idx(G71, "iota_a^2 iota_b iota_c"), idx(G71, "iota_c^2"), idx(G71, "sigma tau")});
    bool f71 = false;
    for (auto& e : r71.entries)
        if (e.subgroup == H71) {
            f71 = true;
            CHECK(e.h1 == type({2}));
            CHECK(same_span(e.invariant_basis, {iv({-1, -1, -1, -1, -1, -1, -1, 3}), iv({1, 1, 1, 1, 1, 1, 0, -2})}, 8));
        }
    CHECK(f71);
    CHECK(r71.generated_order == 2);
}

TEST_CASE("backend agreement on small subgroups") {
    std::mt19937 rng(20240611);
    std::vector<const Subgroup*> small;
    for (auto& s : all_subgroups())
        if (s.order() <= 32 && s.order() > 1) small.push_back(&s);
    std::shuffle(small.begin(), small.end(), rng);
    int resolution_checked = 0;
    for (std::size_t i = 0; i < 20 && i < small.size(); ++i) {
        auto m = GModule::from_subgroup(*small[i]);
        auto p = h1_presentation(m);
        auto s = h1_standard(m);
        CHECK_MESSAGE(p.group == s.group, small[i]->generators_string());
        if (auto r = detect_resolution(m)) {
            CHECK(h1_via_resolution(m, *r).group == p.group);
            ++resolution_checked;
        }
    }
    CHECK(resolution_checked > 0);
}

TEST_CASE("fingerprints") {
    auto fp = fingerprint(generic_group());
    CHECK(fp.order == 128);
    CHECK(fp.h1 == type({2}));
    CHECK(fp.invariant_rank == 1);
    auto s = generate_subgroup({parse_word("iota_a iota_b"), parse_word("sigma tau iota_a iota_c"), parse_word("sigma")});
    auto f1 = fingerprint(s);
    for (int x : {5, 17, 77}) {
        auto c = conjugate(s, GroupElement::from_code(static_cast<std::uint8_t>(x)));
        CHECK(fingerprint(c) == f1);
    }
    for (int p = 1; p < 6; ++p) CHECK(fingerprint(relabel(s, p)) == f1);
}

}

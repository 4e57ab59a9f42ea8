#include "dp2/local.hpp"
#include "dp2/local_internal.hpp"

#include "dp2/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dp2 {

namespace detail {

i64 modp(i64 a, i64 m) {
    a %= m;
    return a < 0 ? a + m : a;
}

i64 mulmod(i64 a, i64 b, i64 m) { return static_cast<i64>(static_cast<__int128>(a) * b % m); }

i64 powmod(i64 b, i64 e, i64 m) {
    i64 r = 1 % m;
    b = modp(b, m);
    while (e > 0) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

i64 prime_power(long p, int k) {
    __int128 r = 1;
    for (int i = 0; i < k; ++i) {
        r *= p;
        if (r >= (static_cast<__int128>(1) << 62)) throw CapacityError("p-adic modulus exceeds 2^62");
    }
    return static_cast<i64>(r);
}

int valuation(i64 x, long p) {
    if (x == 0) throw std::domain_error("valuation of zero");
    int v = 0;
    while (x % p == 0) {
        x /= p;
        ++v;
    }
    return v;
}

i64 inverse_mod(i64 a, i64 m) {
    mpz_class r, A(static_cast<long>(modp(a, m))), M(static_cast<long>(m));
    if (mpz_invert(r.get_mpz_t(), A.get_mpz_t(), M.get_mpz_t()) == 0) throw std::domain_error("not invertible");
    return static_cast<i64>(r.get_si());
}

IntPoly IntPoly::from(const MultiPoly& q, Rational& scale) {
    if (!q.has_rational_coefficients()) throw std::invalid_argument("rational coefficients expected");
    if (q.vars.size() != 4) throw std::invalid_argument("polynomial in (w,x,y,z) expected");
    mpz_class den = 1, num_gcd = 0;
    for (auto& [e, c] : q.terms) {
        Rational r = c.rational_value();
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
    }
    IntPoly out;
    for (auto& [e, c] : q.terms) {
        Rational r = c.rational_value() * den;
        mpz_class n = r.get_num();
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), n.get_mpz_t());
        out.terms.push_back({{e[0], e[1], e[2], e[3]}, n});
    }
    if (num_gcd == 0) throw std::invalid_argument("zero polynomial");
    for (auto& t : out.terms) t.second /= num_gcd;
    scale = Rational(num_gcd, den);
    for (auto& t : out.terms)
        for (int k = 0; k < 4; ++k) out.max_deg[k] = std::max(out.max_deg[k], t.first[k]);
    return out;
}

i64 IntPoly::eval(const std::array<i64, 4>& pt, i64 M) const {
    std::array<std::vector<i64>, 4> pw;
    for (int k = 0; k < 4; ++k) {
        pw[k].assign(static_cast<std::size_t>(max_deg[k]) + 1, 1 % M);
        for (int e = 1; e <= max_deg[k]; ++e)
            pw[k][static_cast<std::size_t>(e)] = mulmod(pw[k][static_cast<std::size_t>(e) - 1], modp(pt[k], M), M);
    }
    i64 acc = 0;
    mpz_class tmp;
    for (auto& [e, c] : terms) {
        i64 cm = static_cast<i64>(mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(M)));
        i64 t = cm;
        for (int k = 0; k < 4; ++k) t = mulmod(t, pw[k][static_cast<std::size_t>(e[k])], M);
        acc += t;
        if (acc >= M) acc -= M;
    }
    return acc;
}

double IntPoly::eval_real(const std::array<double, 4>& pt) const {
    double acc = 0;
    for (auto& [e, c] : terms) {
        double t = c.get_d();
        for (int k = 0; k < 4; ++k) t *= std::pow(pt[k], e[k]);
        acc += t;
    }
    return acc;
}

PreparedFunction prepare(const RationalFunction& f) {
    PreparedFunction out;
    bool square_den = f.den.terms.size() == 1;
    if (square_den) {
        auto& [e, c] = *f.den.terms.begin();
        for (int x : e)
            if (x % 2) square_den = false;
        if (!c.is_rational()) square_den = false;
    }
    Rational extra = 1;
    MultiPoly H = f.num;
    if (square_den)
        extra = f.den.terms.begin()->second.rational_value();  // 1/(c m^2) = c (1/(c m))^2
    else
        H = f.num * f.den;
    Rational s;
    out.h = IntPoly::from(H, s);
    out.scale = s * extra;
    return out;
}

bool padic_square(const Rational& q, long p) {
    mpz_class n = q.get_num(), d = q.get_den();
    int v = 0;
    mpz_class P(p);
    while (mpz_divisible_p(n.get_mpz_t(), P.get_mpz_t())) {
        n /= P;
        ++v;
    }
    while (mpz_divisible_p(d.get_mpz_t(), P.get_mpz_t())) {
        d /= P;
        --v;
    }
    if (v % 2) return false;
    mpz_class u = n * d;  // same square class as n/d
    if (p == 2) return mpz_fdiv_ui(u.get_mpz_t(), 8) == 1;
    long r = static_cast<long>(mpz_fdiv_ui(u.get_mpz_t(), static_cast<unsigned long>(p)));
    return powmod(r, (p - 1) / 2, p) == 1;
}

}  // namespace detail

using namespace detail;

std::string place_name(long place) { return place == kRealPlace ? "R" : "Q_" + std::to_string(place); }

namespace {

// split q = p^v * u with u a p-adic unit; returns (v, u as rational)
std::pair<long, Rational> split(const Rational& q, long p) {
    mpz_class n = q.get_num(), d = q.get_den(), P(p);
    long v = 0;
    while (mpz_divisible_p(n.get_mpz_t(), P.get_mpz_t())) {
        n /= P;
        ++v;
    }
    while (mpz_divisible_p(d.get_mpz_t(), P.get_mpz_t())) {
        d /= P;
        --v;
    }
    return {v, Rational(n, d)};
}

// residue of a rational p-adic unit modulo m (m a power of p)
i64 unit_residue(const Rational& u, i64 m) {
    mpz_class n = u.get_num(), d = u.get_den();
    i64 nr = static_cast<i64>(mpz_fdiv_ui(n.get_mpz_t(), static_cast<unsigned long>(m)));
    i64 dr = static_cast<i64>(mpz_fdiv_ui(d.get_mpz_t(), static_cast<unsigned long>(m)));
    return mulmod(nr, inverse_mod(dr, m), m);
}

int legendre(i64 a, long p) {
    a = modp(a, p);
    if (a == 0) return 0;
    return powmod(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

int symbol_units(long p, long alpha, i64 u, long beta, i64 v) {
    // u, v residues of units: mod p for odd p, mod 8 for p = 2
    if (p == 2) {
        auto eps = [](i64 x) { return ((x - 1) / 2) % 2; };
        auto omega = [](i64 x) { return ((x * x - 1) / 8) % 2; };
        long e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
        return (e % 2 == 0) ? 1 : -1;
    }
    int s = 1;
    if ((alpha * beta) % 2 != 0 && ((p - 1) / 2) % 2 != 0) s = -s;
    if (beta % 2 != 0) s *= legendre(u, p);
    if (alpha % 2 != 0) s *= legendre(v, p);
    return s;
}

}  // namespace

int hilbert_symbol(const Rational& a, const Rational& b, long place) {
    if (sgn(a) == 0 || sgn(b) == 0) throw std::invalid_argument("Hilbert symbol of zero");
    if (place == kRealPlace) return (sgn(a) < 0 && sgn(b) < 0) ? -1 : 1;
    long p = place;
    auto [alpha, u] = split(a, p);
    auto [beta, v] = split(b, p);
    i64 m = p == 2 ? 8 : p;
    return symbol_units(p, alpha, unit_residue(u, m), beta, unit_residue(v, m));
}

int hilbert_symbol_unit(const Rational& a, long p, long v, i64 u_residue) {
    auto [alpha, u] = split(a, p);
    i64 m = p == 2 ? 8 : p;
    return symbol_units(p, alpha, unit_residue(u, m), v, modp(u_residue, m));
}

std::vector<long> bad_primes(const Surface& S) {
    std::set<long> ps{2};
    for (i64 c : {S.A, S.B, S.C})
        for (auto& [q, e] : factorize(c < 0 ? -c : c)) ps.insert(static_cast<long>(q));
    return {ps.begin(), ps.end()};
}

std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::liftable: return "liftable";
        case PointStatus::refutable: return "refutable";
        default: return "undetermined";
    }
}

std::string invariant_string(int q) {
    switch (((q % 4) + 4) % 4) {
        case 0: return "0";
        case 1: return "1/4";
        case 2: return "1/2";
        default: return "3/4";
    }
}

std::string invariant_vector_string(const InvariantVector& v) {
    if (v.size() == 1) return invariant_string(v[0]);
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + invariant_string(v[i]);
    return s + ")";
}

int default_max_level(long p) { return p == 2 ? 12 : 6; }

namespace {

struct Node {
    std::array<i64, 4> pt;
    std::array<bool, 4> free;
};

struct Engine {
    const Surface& S;
    long p;

    i64 G(const std::array<i64, 4>& v, i64 M) const {
        auto f4 = [&](i64 x) {
            i64 s = mulmod(x, x, M);
            return mulmod(s, s, M);
        };
        i64 r = mulmod(v[0], v[0], M);
        r = modp(r - mulmod(modp(S.A, M), f4(v[1]), M), M);
        r = modp(r - mulmod(modp(S.B, M), f4(v[2]), M), M);
        r = modp(r - mulmod(modp(S.C, M), f4(v[3]), M), M);
        return r;
    }

    std::array<i64, 4> partials(const Node& n, i64 M) const {
        std::array<i64, 4> d{};
        d[0] = mulmod(2, n.pt[0], M);
        i64 coef[4] = {0, S.A, S.B, S.C};
        for (std::size_t k = 1; k < 4; ++k) {
            i64 x3 = mulmod(mulmod(n.pt[k], n.pt[k], M), n.pt[k], M);
            d[k] = mulmod(modp(-4 * (coef[k] % M), M), x3, M);
        }
        return d;
    }

    // least valuation of a free partial derivative, capped at level
    int hensel_m(const Node& n, int level) const {
        auto d = partials(n, prime_power(p, level));
        int m = level;
        for (std::size_t k = 0; k < 4; ++k)
            if (n.free[k] && d[k] != 0) m = std::min(m, valuation(d[k], p));
        return m;
    }

    std::vector<Node> roots(Normalization norm) const {
        std::vector<std::pair<int, int>> patterns;  // (unit coordinate, number of leading zero coords)
        if (norm == Normalization::first_unit)
            patterns = {{1, 0}, {2, 1}, {3, 2}};
        else if (norm == Normalization::x_one)
            patterns = {{1, 0}};
        else
            patterns = {{3, -1}};
        std::vector<Node> out;
        for (auto [unit, zeros] : patterns) {
            std::array<bool, 4> fr{true, true, true, true};
            fr[static_cast<std::size_t>(unit)] = false;
            std::array<bool, 4> is_zero{false, false, false, false};
            for (int k = 1; k <= zeros; ++k) is_zero[static_cast<std::size_t>(k)] = true;
            std::vector<int> vary;
            for (int k = 0; k < 4; ++k)
                if (fr[static_cast<std::size_t>(k)] && !is_zero[static_cast<std::size_t>(k)]) vary.push_back(k);
            std::size_t total = 1;
            for (std::size_t i = 0; i < vary.size(); ++i) total *= static_cast<std::size_t>(p);
            for (std::size_t idx = 0; idx < total; ++idx) {
                Node n{{0, 0, 0, 0}, fr};
                n.pt[static_cast<std::size_t>(unit)] = 1;
                std::size_t r = idx;
                for (int k : vary) {
                    n.pt[static_cast<std::size_t>(k)] = static_cast<i64>(r % static_cast<std::size_t>(p));
                    r /= static_cast<std::size_t>(p);
                }
                if (G(n.pt, p) == 0) out.push_back(n);
            }
        }
        return out;
    }

    // Lifts modulo p^(level+1).  Since 2 level >= level + 1, G(pt + p^level t) = G(pt) + p^level grad(G).t
    // modulo p^(level+1), so the lifts are the solutions t of a linear congruence modulo p.
    std::vector<Node> children(const Node& n, int level) const {
        i64 step = prime_power(p, level), M = step * p;
        i64 c0 = G(n.pt, M) / step;
        auto d = partials(n, p);
        std::vector<Node> out;
        std::array<std::size_t, 3> fk{};
        std::size_t c = 0;
        for (std::size_t k = 0; k < 4; ++k)
            if (n.free[k]) fk[c++] = k;
        std::size_t total = static_cast<std::size_t>(p) * static_cast<std::size_t>(p) * static_cast<std::size_t>(p);
        for (std::size_t idx = 0; idx < total; ++idx) {
            std::size_t r = idx;
            std::array<i64, 3> t{};
            i64 lin = c0;
            for (std::size_t j = 0; j < 3; ++j) {
                t[j] = static_cast<i64>(r % static_cast<std::size_t>(p));
                r /= static_cast<std::size_t>(p);
                lin += t[j] * d[fk[j]];
            }
            if (lin % p != 0) continue;
            Node ch = n;
            for (std::size_t j = 0; j < 3; ++j) ch.pt[fk[j]] += t[j] * step;
            out.push_back(ch);
        }
        return out;
    }
};

// A cell fixes each free coordinate modulo its own power p^e[k].  Refining only the coordinate that
// limits the precision of G keeps the search small near singular reductions, where the uniform tree
// would branch over digits that G cannot see.
struct Cell {
    std::array<i64, 4> pt;
    std::array<bool, 4> free;
    std::array<int, 4> e;
};

struct Explorer {
    const Engine& E;
    const CellEvaluator& eval;
    int start, max_level;
    Exploration res;
    int cap = 0;  // valuations are computed modulo p^cap
    i64 Mcap = 1;

    Explorer(const Engine& E_, const CellEvaluator& eval_, int start_, int max_level_)
        : E(E_), eval(eval_), start(start_), max_level(max_level_) {
        __int128 r = 1;
        while (r * E.p < (static_cast<__int128>(1) << 61)) {
            r *= E.p;
            ++cap;
        }
        Mcap = static_cast<i64>(r);
    }

    int val(i64 x) const { return x == 0 ? cap : std::min(cap, valuation(x, E.p)); }

    // lower bound for the valuation of the change in G when coordinate k moves inside the cell
    int sensitivity(const Cell& c, std::size_t k) const {
        i64 coef = k == 0 ? 1 : (k == 1 ? E.S.A : (k == 2 ? E.S.B : E.S.C));
        int d = k == 0 ? 2 : 4, e = c.e[k];
        int vx = c.pt[k] % prime_power(E.p, e) == 0 ? e : std::min(e, valuation(c.pt[k], E.p));
        int vc = valuation(coef, E.p), best = cap;
        long binom = 1;
        for (int i = 1; i <= d; ++i) {
            binom = binom * (d - i + 1) / i;
            best = std::min(best, vc + valuation(binom, E.p) + (d - i) * vx + e * i);
        }
        return best;
    }

    void visit(const Cell& c) {
        int emin = cap;
        std::size_t kmin_e = 0, kmin_s = 0;
        int smin = cap;
        for (std::size_t k = 0; k < 4; ++k) {
            if (!c.free[k]) continue;
            res.deepest = std::max(res.deepest, c.e[k]);
            if (c.e[k] < emin) emin = c.e[k], kmin_e = k;
            int sk = sensitivity(c, k);
            if (sk < smin || (sk == smin && c.e[k] < c.e[kmin_s])) smin = sk, kmin_s = k;
        }
        int L = val(E.G(c.pt, Mcap));
        if (L < smin) {
            ++res.refuted;
            return;
        }
        Node n{c.pt, c.free};
        auto d = E.partials(n, Mcap);
        int m = cap;
        for (std::size_t k = 0; k < 4; ++k)
            if (c.free[k]) m = std::min(m, val(d[k]));
        std::size_t refine = kmin_s;
        if (2 * m < L) {
            // a genuine point agrees with pt modulo p^(L-m), and the whole cell agrees with pt modulo p^emin
            int a = std::min(L - m, emin);
            if (emin >= start) {
                i64 Ma = prime_power(E.p, a);
                std::array<i64, 4> pa{};
                for (std::size_t k = 0; k < 4; ++k) pa[k] = c.pt[k] % Ma;
                if (auto v = eval(pa, a)) {
                    res.attained.insert(*v);
                    ++res.certified;
                    return;
                }
            }
            if (emin < start || a == emin) refine = kmin_e;
        }
        if (c.e[refine] >= max_level) {
            ++res.undetermined;
            return;
        }
        i64 step = prime_power(E.p, c.e[refine]);
        for (long t = 0; t < E.p; ++t) {
            Cell ch = c;
            ch.pt[refine] += t * step;
            ++ch.e[refine];
            visit(ch);
        }
    }
};

}  // namespace

Exploration explore_padic(const Surface& S, long p, const CellEvaluator& eval, int start_level, int max_level,
                          Normalization norm, unsigned threads) {
    if (!is_prime_u64(static_cast<std::uint64_t>(p))) throw std::invalid_argument("p must be prime");
    if (start_level < 1 || max_level < start_level) throw std::invalid_argument("bad levels");
    prime_power(p, max_level + 1);
    Engine E{S, p};
    auto roots = E.roots(norm);
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(roots.size())));
    std::vector<Exploration> parts(threads);
    auto work = [&](unsigned t) {
        Explorer ex(E, eval, start_level, max_level);
        for (std::size_t i = t; i < roots.size(); i += threads) ex.visit(Cell{roots[i].pt, roots[i].free, {1, 1, 1, 1}});
        parts[t] = std::move(ex.res);
    };
    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    Exploration out;
    for (auto& r : parts) {
        out.attained.insert(r.attained.begin(), r.attained.end());
        out.certified += r.certified;
        out.refuted += r.refuted;
        out.undetermined += r.undetermined;
        out.deepest = std::max(out.deepest, r.deepest);
    }
    return out;
}

std::vector<PointClass> padic_point_classes(const Surface& S, long p, int k, const PadicOptions& opt) {
    if (k < 1) throw std::invalid_argument("k must be positive");
    if (!is_prime_u64(static_cast<std::uint64_t>(p))) throw std::invalid_argument("p must be prime");
    if (std::pow(static_cast<double>(p), 3.0 * k) > opt.budget) throw CapacityError("residue enumeration above budget");
    Engine E{S, p};
    std::vector<Node> layer = E.roots(opt.norm);
    for (int level = 1; level < k; ++level) {
        std::vector<Node> next;
        for (auto& n : layer) {
            auto ch = E.children(n, level);
            next.insert(next.end(), ch.begin(), ch.end());
        }
        layer.swap(next);
    }
    std::vector<PointClass> out;
    for (auto& n : layer) {
        PointClass pc{n.pt, PointStatus::undetermined};
        if (2 * E.hensel_m(n, k) < k)
            pc.status = PointStatus::liftable;
        else if (E.children(n, k).empty())
            pc.status = PointStatus::refutable;
        out.push_back(pc);
    }
    return out;
}

RationalFunction make_function(const std::string& num, const std::string& den, const FieldPtr& K,
                               const std::map<std::string, NFElem>& constants) {
    return RationalFunction{parse_poly(num, K, surface_vars(), constants), parse_poly(den, K, surface_vars(), constants)};
}

std::string LocalProfile::modulus() const {
    if (place == kRealPlace) return "R";
    return std::to_string(place) + "^" + std::to_string(level);
}

LocalProfile real_profile(const Surface& S, const RealEvaluator& eval, std::size_t samples) {
    LocalProfile prof;
    prof.place = kRealPlace;
    prof.method = "sampling";
    std::size_t n = std::max<std::size_t>(samples / 2, 1);
    const double golden = M_PI * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < n; ++i) {
        double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double phi = golden * static_cast<double>(i);
        double x = r * std::cos(phi), y = r * std::sin(phi);
        double F = static_cast<double>(S.A) * std::pow(x, 4) + static_cast<double>(S.B) * std::pow(y, 4) +
                   static_cast<double>(S.C) * std::pow(z, 4);
        if (F < 0) continue;
        double w = std::sqrt(F);
        for (double sw : {1.0, -1.0}) {
            ++prof.samples;
            if (auto v = eval({sw * w, x, y, z}))
                prof.attained.insert(*v);
            else
                ++prof.skipped;
        }
    }
    return prof;
}

namespace {

struct PreparedClass {
    Rational d;
    std::vector<PreparedFunction> fs;
};

std::vector<PreparedClass> prepare_classes(const std::vector<QuaternionClass>& classes) {
    std::vector<PreparedClass> out;
    for (auto& q : classes) {
        PreparedClass pc{q.d, {prepare(q.g)}};
        for (auto& f : q.equivalent) pc.fs.push_back(prepare(f));
        out.push_back(std::move(pc));
    }
    return out;
}

}  // namespace

LocalProfile quaternion_profile(const std::vector<QuaternionClass>& classes, const Surface& S, long place,
                                const ProfileOptions& opt) {
    auto prepared = prepare_classes(classes);
    if (place == kRealPlace) {
        RealEvaluator ev = [&](const std::array<double, 4>& pt) -> std::optional<InvariantVector> {
            InvariantVector out;
            for (auto& pc : prepared) {
                if (sgn(pc.d) > 0) {
                    out.push_back(0);
                    continue;
                }
                std::optional<int> inv;
                for (auto& f : pc.fs) {
                    double v = f.h.eval_real(pt) * f.scale.get_d();
                    if (std::fabs(v) < 1e-9) continue;
                    inv = v < 0 ? 2 : 0;
                    break;
                }
                if (!inv) return std::nullopt;
                out.push_back(*inv);
            }
            return out;
        };
        return real_profile(S, ev, opt.real_samples);
    }
    long p = place;
    int emin = p == 2 ? 3 : 1;
    std::vector<bool> split_here;
    std::vector<int> scale_sign;
    for (auto& pc : prepared) split_here.push_back(padic_square(pc.d, p));
    CellEvaluator ev = [&](const std::array<i64, 4>& pt, int a) -> std::optional<InvariantVector> {
        i64 M = prime_power(p, a);
        InvariantVector out;
        for (std::size_t c = 0; c < prepared.size(); ++c) {
            if (split_here[c]) {
                out.push_back(0);
                continue;
            }
            std::optional<int> inv;
            for (auto& f : prepared[c].fs) {
                i64 V = f.h.eval(pt, M);
                if (V == 0) continue;
                int v = valuation(V, p);
                if (a - v < emin) continue;
                i64 u = V;
                for (int t = 0; t < v; ++t) u /= p;
                int s = hilbert_symbol_unit(prepared[c].d, p, v, u) * hilbert_symbol(prepared[c].d, f.scale, p);
                inv = s < 0 ? 2 : 0;
                break;
            }
            if (!inv) return std::nullopt;
            out.push_back(*inv);
        }
        return out;
    };
    int maxl = opt.max_level ? opt.max_level : default_max_level(p);
    auto ex = explore_padic(S, p, ev, opt.start_level, std::max(maxl, opt.start_level), Normalization::first_unit,
                            opt.threads);
    LocalProfile prof;
    prof.place = p;
    prof.level = ex.deepest;
    prof.attained = ex.attained;
    prof.undetermined = ex.undetermined;
    prof.method = "exact-enumeration";
    return prof;
}

LocalProfile quaternion_profile(const QuaternionClass& q, const Surface& S, long place, const ProfileOptions& opt) {
    return quaternion_profile(std::vector<QuaternionClass>{q}, S, place, opt);
}

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::obstructed: return "obstructed";
        case Conclusion::not_obstructed_by_class: return "not_obstructed_by_class";
        default: return "inconclusive";
    }
}

Verdict verdict(std::vector<LocalProfile> profiles) {
    Verdict v;
    v.profiles = std::move(profiles);
    if (v.profiles.empty()) {
        v.note = "no places supplied";
        return v;
    }
    std::size_t dim = 0;
    for (auto& p : v.profiles)
        for (auto& a : p.attained) dim = a.size();
    bool inconclusive = false;
    std::set<InvariantVector> sums{InvariantVector(dim, 0)};
    for (auto& p : v.profiles) {
        if (p.method == "sampling") v.relies_on_sampling = true;
        if (p.inconclusive()) inconclusive = true;
        if (p.attained.empty()) {
            v.conclusion = Conclusion::inconclusive;
            v.note = "no local points found at " + place_name(p.place);
            return v;
        }
        std::set<InvariantVector> next;
        for (auto& s : sums)
            for (auto& a : p.attained) {
                if (a.size() != dim) throw std::invalid_argument("profiles of different widths");
                InvariantVector t(dim);
                for (std::size_t i = 0; i < dim; ++i) t[i] = (s[i] + a[i]) % 4;
                next.insert(t);
            }
        sums.swap(next);
    }
    if (sums.count(InvariantVector(dim, 0))) {
        v.conclusion = Conclusion::not_obstructed_by_class;
        v.note = "some choice of local points has total invariant zero";
    } else if (inconclusive) {
        v.conclusion = Conclusion::inconclusive;
        v.note = "undetermined residue classes remain";
    } else {
        v.conclusion = Conclusion::obstructed;
        v.note = "no choice of local points has total invariant zero";
    }
    return v;
}

SolvabilityCertificate good_reduction_solvable(const Surface& S, long p) {
    SolvabilityCertificate c;
    c.p = p;
    for (i64 x : {S.A, S.B, S.C})
        if (x % p == 0) throw std::invalid_argument("p divides a coefficient");
    if (p == 2) throw std::invalid_argument("p = 2 is a bad prime");
    if (p > 37) {
        // Frobenius has trace at least -6 on the Picard lattice, so #S(F_p) >= p^2 - 6p + 1 > 0.
        c.solvable = true;
        c.method = "Weil bound";
        return c;
    }
    // odd p prime to ABC: every point modulo p is smooth and lifts
    Engine E{S, p};
    c.solvable = !E.roots(Normalization::first_unit).empty();
    c.method = c.solvable ? "smooth point mod p" : "no point mod p";
    return c;
}

U2V2 represent_u2_plus_2v2(i64 p) {
    if (p <= 0 || p % 16 != 3 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("p must be a prime congruent to 3 mod 16");
    for (i64 v = 1; 2 * v * v < p; ++v) {
        i64 r = p - 2 * v * v;
        i64 u = static_cast<i64>(std::llround(std::sqrt(static_cast<double>(r))));
        while (u * u > r) --u;
        while ((u + 1) * (u + 1) <= r) ++u;
        if (u * u == r && u > 0) {
            i64 h = (u - v) / 2;
            return U2V2{u, v, (h % 2 == 0) ? 1 : -1};
        }
    }
    throw InvariantError("no representation p = u^2 + 2v^2 found");
}

bool lemma_check(i64 p) {
    U2V2 r = represent_u2_plus_2v2(p);
    bool any = false;
    for (i64 y = 1; y < p; ++y) {
        i64 y2 = mulmod(y, y, p);
        if (mulmod(y2, y2, p) != modp(-2, p)) continue;
        any = true;
        if (mulmod(modp(r.v, p), y2, p) != modp(r.s * r.u, p)) return false;
    }
    return any;
}

}  // namespace dp2

#include "dp2/cubic.hpp"

#include "dp2/intlin.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace dp2 {

namespace {

const std::vector<std::string> kVars7{"x", "y", "z", "t", "l", "m", "n"};
const std::vector<std::string> kVars4{"x", "y", "z", "t"};

bool is_rational_cube(const Rational& q) {
    mpz_class n = abs(q.get_num()), d = q.get_den(), r;
    return mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3) != 0 && mpz_root(r.get_mpz_t(), d.get_mpz_t(), 3) != 0;
}

std::string ratio_text(const Rational& q) { return q.get_str(); }

MultiPoly cubic_form(const CubicCoefficients& c, const FieldPtr& K, const std::vector<std::string>& vars) {
    return parse_poly(std::to_string(c.A) + "*x^3 + " + std::to_string(c.B) + "*y^3 + " + std::to_string(c.C) +
                          "*z^3 + " + std::to_string(c.D) + "*t^3",
                      K, vars);
}

std::map<std::string, NFElem> constants(const CubicCoefficients& c, const CubicField& F) {
    return {{"theta", F.theta}, {"ga", F.gamma}, {"ba", nf(F.K, Rational(c.B, c.A))}};
}

// Z[theta] with theta^2 = -1 - theta
struct Eis {
    __int128 p = 0, q = 0;
};
Eis operator*(Eis a, Eis b) { return {a.p * b.p - a.q * b.q, a.p * b.q + a.q * b.p - a.q * b.q}; }
Eis operator+(Eis a, Eis b) { return {a.p + b.p, a.q + b.q}; }
Eis scale(Eis a, __int128 k) { return {a.p * k, a.q * k}; }

bool in_base_field(const NFElem& e) {
    // coordinates r^a gamma^b sit at a + 2b; the base field Q(sqrt(-3)) is b = 0
    for (std::size_t i = 2; i < e.c.size(); ++i)
        if (e.c[i] != 0) return false;
    return true;
}

bool proportional(const MultiPoly& h, const MultiPoly& f) {
    if (h.is_zero()) return true;
    auto lead = f.terms.begin();
    auto it = h.terms.find(lead->first);
    if (it == h.terms.end()) return false;
    return h == f * (it->second / lead->second);
}

}  // namespace

std::optional<std::string> cubic_degenerate_ratio(const CubicCoefficients& c) {
    if (c.A <= 0 || c.B <= 0 || c.C <= 0 || c.D <= 0) throw std::invalid_argument("A, B, C, D must be positive");
    const long v[4] = {c.A, c.B, c.C, c.D};
    const char* name[4] = {"A", "B", "C", "D"};
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (is_rational_cube(Rational(v[i], v[j])))
                return std::string(name[i]) + "/" + name[j] + " = " + ratio_text(Rational(v[i], v[j])) + " is a cube";
    const int pairs[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (auto& pr : pairs) {
        Rational q(mpz_class(v[pr[0]]) * v[pr[1]], mpz_class(v[pr[2]]) * v[pr[3]]);
        q.canonicalize();
        if (is_rational_cube(q))
            return std::string(name[pr[0]]) + name[pr[1]] + "/" + name[pr[2]] + name[pr[3]] + " = " + ratio_text(q) +
                   " is a cube";
    }
    return std::nullopt;
}

CubicField cubic_field(const CubicCoefficients& c) {
    auto Q = NumberField::rationals();
    auto k = adjoin_root(Q, 2, nf(Q, -3), "r");
    Rational g3(mpz_class(c.A) * c.D, mpz_class(c.B) * c.C);
    g3.canonicalize();
    auto K = adjoin_root(k, 3, nf(k, g3), "gamma");
    CubicField F;
    F.K = K;
    F.theta = (nf_gen(K, "r") - nf(K, 1)) * Rational(1, 2);
    F.gamma = nf_gen(K, "gamma");
    return F;
}

std::array<MultiPoly, 3> cubic_g_symbolic(const CubicCoefficients& c, const CubicField& F) {
    auto cs = constants(c, F);
    auto P = [&](const std::string& s) { return parse_poly(s, F.K, kVars7, cs); };
    return {P("x^2 + l*x*z + ba*n*x*t*ga + theta^2*ba*m*y*t*ga + theta^2*ba*n*y*z + (l^2 - ba*m*n)*z^2"
              " + ba*(l*n - m^2)*z*t*ga + ba*(ba*n^2 - l*m)*t^2*ga^2"),
            P("-x*y + theta^2*m*x*z + theta^2*l*x*t*ga + theta*l*y*z + theta*ba*n*y*t*ga + (ba*n^2 - l*m)*z^2"
              " + (ba*m*n - l^2)*z*t*ga + ba*(m^2 - l*n)*t^2*ga^2"),
            P("theta*n*x*z + theta*m*x*t*ga + y^2 + m*y*z + l*y*t*ga + (m^2 - l*n)*z^2 + (l*m - ba*n^2)*z*t*ga"
              " + (l^2 - ba*m*n)*t^2*ga^2")};
}

namespace {

std::array<MultiPoly, 3> column_multipliers(const CubicCoefficients& c, const CubicField& F,
                                            const std::vector<std::string>& vars) {
    auto cs = constants(c, F);
    std::string A = std::to_string(c.A), B = std::to_string(c.B);
    auto P = [&](const std::string& s) { return parse_poly(s, F.K, vars, cs); };
    return {P(A + "*x - " + A + "*l*z - " + B + "*n*ga*t"), P("-" + B + "*n*z - " + B + "*m*ga*t"),
            P(B + "*y - " + B + "*m*z - " + B + "*l*ga*t")};
}

}  // namespace

MultiPoly cubic_column_residual(const CubicCoefficients& c, const CubicField& F) {
    auto g = cubic_g_symbolic(c, F);
    auto mult = column_multipliers(c, F, kVars7);
    MultiPoly lhs = g[0] * mult[0] + g[1] * mult[1] + g[2] * mult[2] - cubic_form(c, F.K, kVars7);
    auto norm = parse_poly("l^3 + ba*m^3 + ba^2*n^3 - 3*ba*l*m*n + cq", F.K, kVars7,
                           {{"ba", nf(F.K, Rational(c.B, c.A))}, {"cq", nf(F.K, Rational(c.C, c.A))}});
    return divide_by(lhs, norm, "l").remainder;
}

NFElem cubic_norm_form(const CubicCoefficients& c, const NFElem& l, const NFElem& m, const NFElem& n) {
    Rational ba(c.B, c.A);
    ba.canonicalize();
    return pow(l, 3) + pow(m, 3) * ba + pow(n, 3) * Rational(ba * ba) - l * m * n * Rational(3 * ba);
}

std::optional<std::array<NFElem, 3>> cubic_norm_search(const CubicCoefficients& c, const CubicField& F, int bound) {
    // A^2 a^3 + A B b^3 + B^2 c^3 - 3 A B a b c + A C d^3 = 0 with (lambda, mu, nu) = (a, b, c)/d
    const __int128 A = c.A, B = c.B, C = c.C;
    for (int H = 1; H <= bound; ++H)
        for (int d = 1; d <= H; ++d)
            for (int a = -H; a <= H; ++a)
                for (int b = -H; b <= H; ++b)
                    for (int e = -H; e <= H; ++e) {
                        if (std::max({d, std::abs(a), std::abs(b), std::abs(e)}) != H) continue;
                        __int128 v = A * A * a * a * a + A * B * b * b * b + B * B * e * e * e - 3 * A * B * a * b * e +
                                     A * C * d * d * d;
                        if (v == 0)
                            return std::array<NFElem, 3>{nf(F.K, Rational(a, d)), nf(F.K, Rational(b, d)),
                                                         nf(F.K, Rational(e, d))};
                    }
    int tb = std::min(bound, 3);
    auto elem = [&](int p, int q) { return nf(F.K, p) + F.theta * Rational(q); };
    for (int a0 = -tb; a0 <= tb; ++a0)
        for (int a1 = -tb; a1 <= tb; ++a1)
            for (int b0 = -tb; b0 <= tb; ++b0)
                for (int b1 = -tb; b1 <= tb; ++b1)
                    for (int c0 = -tb; c0 <= tb; ++c0)
                        for (int c1 = -tb; c1 <= tb; ++c1) {
                            Eis l{a0, a1}, m{b0, b1}, n{c0, c1};
                            Eis v = scale(l * l * l, A * A) + scale(m * m * m, A * B) + scale(n * n * n, B * B) +
                                    scale(l * m * n, -3 * A * B);
                            v.p += A * C;
                            if (v.p == 0 && v.q == 0) return std::array<NFElem, 3>{elem(a0, a1), elem(b0, b1), elem(c0, c1)};
                        }
    return std::nullopt;
}

CubicReport cubic_pipeline(const CubicCoefficients& c, int search_bound) {
    CubicReport rep;
    rep.coeffs = c;
    rep.degenerate = cubic_degenerate_ratio(c);
    if (rep.degenerate) return rep;
    auto F = cubic_field(c);
    rep.column_identity = cubic_column_residual(c, F).is_zero();
    rep.transcript.push_back({"g0 (A x - A l z - B n gamma t) + g1 (-B n z - B m gamma t) + g2 (B y - B m z - B l gamma t)"
                              " = A x^3 + B y^3 + C z^3 + D t^3 modulo the norm relation",
                              rep.column_identity, "exact division by the norm relation in l"});
    auto sol = cubic_norm_search(c, F, search_bound);
    if (!sol) {
        rep.transcript.push_back({"norm equation", false, "no solution within bound"});
        return rep;
    }
    rep.norm_found = true;
    auto& [l, m, n] = *sol;
    rep.lambda_mu_nu = {l.to_string(), m.to_string(), n.to_string()};
    rep.norm_verified = cubic_norm_form(c, l, m, n) == nf(F.K, Rational(-c.C, c.A));
    rep.transcript.push_back({"lambda^3 + (B/A) mu^3 + (B/A)^2 nu^3 - 3 (B/A) lambda mu nu = -C/A", rep.norm_verified,
                              "lambda, mu, nu = " + rep.lambda_mu_nu[0] + ", " + rep.lambda_mu_nu[1] + ", " +
                                  rep.lambda_mu_nu[2]});

    // specialize g0, g1, g2 at the solution
    std::vector<MultiPoly> images;
    for (auto& v : kVars4) images.push_back(MultiPoly::variable(F.K, kVars4, v));
    for (auto* e : {&l, &m, &n}) images.push_back(MultiPoly::constant(F.K, kVars4, *e));
    auto gs = cubic_g_symbolic(c, F);
    std::array<MultiPoly, 3> g{compose(gs[0], images), compose(gs[1], images), compose(gs[2], images)};
    auto mult = column_multipliers(c, F, kVars7);
    MultiPoly col = MultiPoly::zero(F.K, kVars4);
    for (int i = 0; i < 3; ++i) col = col + g[i] * compose(mult[i], images);
    MultiPoly form = cubic_form(c, F.K, kVars4);
    bool col_ok = col == form;
    rep.transcript.push_back({"column identity at the solution", col_ok, "exact"});

    // h = g0 l0 + g1 l1 + g2 l2 with linear l_i over k(gamma); unknowns are the rational coordinates
    std::vector<MultiPoly> contrib;
    for (int i = 0; i < 3; ++i)
        for (auto& v : kVars4)
            for (std::size_t b = 0; b < F.K->degree(); ++b) {
                NFElem e = F.K->zero(F.K);
                e.c[b] = 1;
                contrib.push_back(g[static_cast<std::size_t>(i)] * MultiPoly::variable(F.K, kVars4, v) * e);
            }
    std::map<std::vector<int>, std::size_t> monomials;
    for (auto& p : contrib)
        for (auto& [e, co] : p.terms) monomials.emplace(e, monomials.size());
    std::vector<std::vector<Rational>> rows;
    for (auto& [mono, idx] : monomials) {
        (void)idx;
        for (std::size_t coord = 2; coord < F.K->degree(); ++coord) {
            std::vector<Rational> row(contrib.size());
            for (std::size_t j = 0; j < contrib.size(); ++j) {
                auto it = contrib[j].terms.find(mono);
                if (it != contrib[j].terms.end()) row[j] = it->second.c[coord];
            }
            rows.push_back(std::move(row));
        }
    }
    IntMatrix M(rows.size(), contrib.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        mpz_class den = 1;
        for (auto& q : rows[r]) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
        for (std::size_t j = 0; j < contrib.size(); ++j) M(r, j) = mpz_class(rows[r][j] * den);
    }
    for (auto& v : kernel_basis(M)) {
        MultiPoly h = MultiPoly::zero(F.K, kVars4);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] != 0) h = h + contrib[j] * Rational(v[j]);
        if (proportional(h, form)) continue;
        bool rational = true;
        for (auto& [e, co] : h.terms) rational = rational && in_base_field(co);
        rep.transcript.push_back({"h = g0 l0 + g1 l1 + g2 l2 lies in k[x,y,z,t]", rational, h.to_string()});
        rep.transcript.push_back({"h is not proportional to the cubic form", true, ""});
        if (!rational) break;
        rep.h = h;
        Rational g3(mpz_class(c.A) * c.D, mpz_class(c.B) * c.C);
        g3.canonicalize();
        rep.presentation = "r^3 = " + g3.get_str() + ", s^3 = h/x^3, s r = theta r s";
        break;
    }
    if (!rep.h) rep.transcript.push_back({"h = g0 l0 + g1 l1 + g2 l2", false, "no solution of the linear system"});
    return rep;
}

}  // namespace dp2

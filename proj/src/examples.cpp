#include "dp2/local.hpp"
#include "dp2/local_internal.hpp"

#include "dp2/errors.hpp"
#include "dp2/galois0.hpp"
#include "dp2/picard.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace dp2 {

using namespace detail;

bool ExampleClass::verified() const {
    if (transcript.empty()) return false;
    return std::all_of(transcript.begin(), transcript.end(), [](const TranscriptEntry& e) { return e.ok; });
}

namespace {

void record(ExampleClass& ex, std::string claim, bool ok, std::string detail = {}) {
    ex.transcript.push_back({std::move(claim), ok, std::move(detail)});
}

FieldPtr gaussian_field() {
    static const FieldPtr K = adjoin_root(NumberField::rationals(), 2, nf(NumberField::rationals(), -1), "i");
    return K;
}

MultiPoly poly(const std::string& text, const FieldPtr& K, const std::map<std::string, NFElem>& constants = {}) {
    return parse_poly(text, K, surface_vars(), constants);
}

std::string sq(i64 v) { return std::to_string(v); }

MultiPoly quartic_form(const Surface& S, const FieldPtr& K) {
    return poly(sq(S.A) + "*x^4 + (" + sq(S.B) + ")*y^4 + (" + sq(S.C) + ")*z^4", K);
}

// p vanishes identically on w^2 = F
bool vanishes_on_surface(const MultiPoly& p, const Surface& S) {
    MultiPoly rel = poly("w^2", p.field) - quartic_form(S, p.field);
    return divide_by(p, rel, "w").remainder.is_zero();
}

RationalFunction over_x(const MultiPoly& num, int power) {
    return RationalFunction{num, poly("x^" + std::to_string(power), num.field)};
}

RationalFunction over_z2(const MultiPoly& num) { return RationalFunction{num, poly("z^2", num.field)}; }

// Quaternion class (-1, g1/z^2) from a tangent conic: F + t^2 = factor * g1 * g2.
void conic_class(ExampleClass& ex, const std::string& t, const std::string& g1, const std::string& g2, i64 factor) {
    auto Ki = gaussian_field();
    auto T = poly(t, Ki), G1 = poly(g1, Ki), G2 = poly(g2, Ki);
    auto i = nf_gen(Ki, "i");
    auto wt = T * i;  // w = i t along the conic
    bool ok = quartic_form(ex.S, Ki) - wt * wt == (G1 * G2) * Rational(static_cast<long>(factor));
    record(ex, "F - (i(" + t + "))^2 = " + std::to_string(factor) + " (" + g1 + ")(" + g2 + ")", ok,
           "the conic " + g1 + " = 0 meets the branch quartic only in tangencies");
    auto Q = NumberField::rationals();
    QuaternionClass q;
    q.d = -1;
    q.g = over_z2(poly(g1, Q));
    q.equivalent.push_back(over_z2(poly(g2, Q)));
    q.label = "(-1, (" + g1 + ")/z^2)";
    ex.classes.push_back(q);
}

}  // namespace

ExampleClass build_ex71() {
    ExampleClass ex;
    ex.name = "ex71";
    ex.S = {-25, -5, 45};
    conic_class(ex, "3*y^2 - 6*z^2", "-5*x^2 - 2*y^2 + 9*z^2", "5*x^2 - 2*y^2 + 9*z^2", 1);
    return ex;
}

ExampleClass build_ex72(i64 p) {
    U2V2 r = represent_u2_plus_2v2(p);  // validates p
    ExampleClass ex;
    ex.name = "ex72(" + std::to_string(p) + ")";
    ex.S = {-2 * p, -p, 2};
    record(ex, "p = u^2 + 2v^2", r.u * r.u + 2 * r.v * r.v == p,
           "u = " + sq(r.u) + ", v = " + sq(r.v) + ", s = " + std::to_string(r.s));
    record(ex, "v y^2 = s u mod p whenever y^4 = -2 mod p", lemma_check(p));
    i64 su = r.s * r.u;
    std::string t = sq(-2 * r.v) + "*x^2 + (" + sq(su) + ")*y^2";
    std::string g1 = sq(-su) + "*x^2 - " + sq(r.v) + "*y^2 + z^2";
    std::string g2 = sq(su) + "*x^2 + " + sq(r.v) + "*y^2 + z^2";
    conic_class(ex, t, g1, g2, 2);
    return ex;
}

bool generic_triple(const Surface& S) {
    const mpz_class base[5] = {mpz_class(static_cast<long>(S.A)), mpz_class(static_cast<long>(S.B)),
                               mpz_class(static_cast<long>(S.C)), mpz_class(-1), mpz_class(2)};
    for (int mask = 1; mask < 32; ++mask) {
        mpz_class prod = 1;
        for (int k = 0; k < 5; ++k)
            if (mask & (1 << k)) prod *= base[k];
        if (prod > 0 && mpz_perfect_square_p(prod.get_mpz_t())) return false;
    }
    return true;
}

namespace {

std::optional<Rational> rational_sqrt_q(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

}  // namespace

std::optional<ConicPoint> find_conic_point(const Surface& S, long bound) {
    Rational A(static_cast<long>(S.A)), B(static_cast<long>(S.B)), C(static_cast<long>(S.C));
    // points with r0, s0 rational, by increasing height
    for (long h = 1; h <= bound; ++h)
        for (long r1 = -h; r1 <= h; ++r1)
            for (long s1 = -h; s1 <= h; ++s1) {
                if (std::max(std::labs(r1), std::labs(s1)) != h) continue;
                auto t = rational_sqrt_q(-(A * r1 * r1 + B * s1 * s1) / C);
                if (t && sgn(*t) != 0) return ConicPoint{r1, 0, s1, 0, *t};
            }
    // A r1 r2 + B s1 s2 = 0 kills the theta part
    Rational abc = A * B * C;
    for (long h = 1; h <= bound; ++h)
        for (long r1 = -h; r1 <= h; ++r1)
            for (long s1 = -h; s1 <= h; ++s1)
                for (long r2 = -h; r2 <= h; ++r2) {
                    if (std::max({std::labs(r1), std::labs(s1), std::labs(r2)}) != h || s1 == 0 || r2 == 0) continue;
                    Rational s2 = -(A * r1 * r2) / (B * s1);
                    auto t = rational_sqrt_q(-(A * r1 * r1 + B * s1 * s1 - abc * (A * r2 * r2 + B * s2 * s2)) / C);
                    if (t && sgn(*t) != 0) return ConicPoint{r1, r2, s1, s2, *t};
                }
    return std::nullopt;
}

ExampleClass build_ex73(const Surface& S, std::optional<ConicPoint> point, long bound) {
    if (!generic_triple(S))
        throw std::invalid_argument("the triple fails the genericity test (some product of A, B, C, -1, 2 is a square)");
    if (!point) point = find_conic_point(S, bound);
    if (!point) throw std::runtime_error("no point on A r^2 + B s^2 + C t^2 = 0 within the search bound; supply a point");
    const ConicPoint& P = *point;
    if (sgn(P.t0) == 0) throw std::invalid_argument("the conic point needs t0 != 0");
    ExampleClass ex;
    ex.name = "ex73(" + sq(S.A) + "," + sq(S.B) + "," + sq(S.C) + ")";
    ex.S = S;
    Rational A(static_cast<long>(S.A)), B(static_cast<long>(S.B)), C(static_cast<long>(S.C));
    Rational d = -(A * B * C);

    // the three-term identity with r, s, t symbolic, modulo A r^2 + B s^2 + C t^2
    auto Q = NumberField::rationals();
    std::vector<std::string> vars{"x", "y", "z", "r", "s", "t"};
    std::string a = "(" + A.get_str() + ")", b = "(" + B.get_str() + ")", c = "(" + C.get_str() + ")";
    std::string F = a + "*x^4 + " + b + "*y^4 + " + c + "*z^4";
    std::string L = a + "*r*x^2 + " + b + "*s*y^2 + " + c + "*t*z^2";
    std::string Lp = a + "*r*x^2 + " + b + "*s*y^2 - " + c + "*t*z^2";
    std::string identity = c + "^2*t^2*(" + F + ") + " + a + "*" + b + "*" + c + "*(s*x^2 - r*y^2)^2 + " + c + "*(" +
                           L + ")*(" + Lp + ")";
    auto id = parse_poly(identity, Q, vars);
    auto conic = parse_poly(a + "*r^2 + " + b + "*s^2 + " + c + "*t^2", Q, vars);
    record(ex, "C^2 t^2 F + ABC (s x^2 - r y^2)^2 + C L L' = 0 modulo A r^2 + B s^2 + C t^2",
           divide_by(id, conic, "r").remainder.is_zero());

    // the same identity at the chosen point over Q(theta)
    auto Kt = adjoin_root(Q, 2, nf(Q, d), "theta");
    auto theta = nf_gen(Kt, "theta");
    NFElem r0 = nf(Kt, P.r1) + theta * P.r2, s0 = nf(Kt, P.s1) + theta * P.s2, t0 = nf(Kt, P.t0);
    bool on_conic = (r0 * r0 * A + s0 * s0 * B + t0 * t0 * C).is_zero();
    record(ex, "(r0 : s0 : t0) lies on A r^2 + B s^2 + C t^2 = 0", on_conic,
           "r0 = " + r0.to_string() + ", s0 = " + s0.to_string() + ", t0 = " + P.t0.get_str());
    std::map<std::string, NFElem> cs{{"r0", r0}, {"s0", s0}, {"t0", t0}};
    auto Lpt = parse_poly(a + "*r0*x^2 + " + b + "*s0*y^2 + " + c + "*t0*z^2", Kt, surface_vars(), cs);
    auto Lppt = parse_poly(a + "*r0*x^2 + " + b + "*s0*y^2 - " + c + "*t0*z^2", Kt, surface_vars(), cs);
    auto qpt = parse_poly("s0*x^2 - r0*y^2", Kt, surface_vars(), cs);
    auto idpt = quartic_form(S, Kt) * (t0 * t0 * C * C) + qpt * qpt * (A * B * C) + Lpt * Lppt * C;
    record(ex, "the identity holds at (r0 : s0 : t0)", idpt.is_zero());

    // g = (A r1 s1 + A^2BC r2 s2) x^2 + (B s1^2 - A^2BC r2^2) y^2 + C s1 t0 z^2 + A C r2 t0 w, over x^2
    Rational a2bc = A * A * B * C;
    Rational cx = A * P.r1 * P.s1 + a2bc * P.r2 * P.s2, cy = B * P.s1 * P.s1 - a2bc * P.r2 * P.r2,
             cz = C * P.s1 * P.t0, cw = A * C * P.r2 * P.t0;
    auto gnum = poly("(" + cx.get_str() + ")*x^2 + (" + cy.get_str() + ")*y^2 + (" + cz.get_str() + ")*z^2 + (" +
                         cw.get_str() + ")*w",
                     Q);
    if (gnum.is_zero()) throw std::invalid_argument("the conic point gives g = 0");
    // g vanishes on the curve D: L = 0, w = theta q / (C t0)
    auto wD = qpt * (theta / (t0 * C));
    auto gK = extend_field(gnum, Kt);
    auto gD = compose(gK, {wD, poly("x", Kt), poly("y", Kt), poly("z", Kt)});
    record(ex, "g vanishes on D: L = 0, w = theta (s0 x^2 - r0 y^2)/(C t0)", divide_by(gD, Lpt, "z").remainder.is_zero());

    // primitive integer numerator, positive leading coefficient
    Rational scale;
    IntPoly ip = IntPoly::from(gnum, scale);
    Rational k = 1 / scale;
    auto lead = gnum.terms.rbegin()->second.rational_value();
    auto x2 = gnum.terms.find(std::vector<int>{0, 2, 0, 0});
    if (x2 != gnum.terms.end()) lead = x2->second.rational_value();
    if (sgn(lead) < 0) k = -k;
    QuaternionClass q;
    q.d = d;
    q.g = over_x(gnum * k, 2);
    q.label = "(" + d.get_str() + ", (" + q.g.num.to_string() + ")/x^2)";
    if (sgn(P.r2) == 0 && sgn(P.s2) == 0) {
        // rational point: g = k s1 L and (d, L) = (d, -C L') because -C L L' is a norm from Q(theta) on S
        auto Lq = poly(a + "*" + P.r1.get_str() + "*x^2 + " + b + "*" + P.s1.get_str() + "*y^2 + " + c + "*" +
                           P.t0.get_str() + "*z^2",
                       Q);
        auto Lpq = poly(a + "*" + P.r1.get_str() + "*x^2 + " + b + "*" + P.s1.get_str() + "*y^2 - " + c + "*" +
                            P.t0.get_str() + "*z^2",
                        Q);
        auto alt = Lpq * (-C * k * P.s1);
        auto qq = poly(P.s1.get_str() + "*x^2 - (" + P.r1.get_str() + ")*y^2", Q);
        auto normform = (poly("w^2", Q) * (C * C * P.t0 * P.t0) + qq * qq * (A * B * C)) * (k * k * P.s1 * P.s1);
        record(ex, "g g' is a norm from Q(theta) on S", vanishes_on_surface(q.g.num * alt - normform, S));
        q.equivalent.push_back(over_x(alt, 2));
    }
    ex.classes.push_back(q);
    return ex;
}

namespace {

struct Ex74Field {
    FieldPtr K;
    NFElem s, i, zeta;
};

const Ex74Field& ex74_field() {
    static const Ex74Field F = [] {
        auto Q = NumberField::rationals();
        auto K1 = adjoin_root(Q, 2, nf(Q, -17), "s");
        auto K2 = adjoin_root(K1, 2, nf(K1, -1), "i");
        auto K = adjoin_root(K2, 2, nf_gen(K2, "i"), "zeta");
        return Ex74Field{K, nf_gen(K, "s"), nf_gen(K, "i"), nf_gen(K, "zeta")};
    }();
    return F;
}

// coefficient of zeta^k over Q(sqrt(-17)); the basis i^a zeta^b sits at index a + 2b
MultiPoly zeta_component(const MultiPoly& g, int k) {
    static const int index_of[4] = {0, 2, 1, 3};
    MultiPoly out = MultiPoly::zero(g.field, g.vars);
    for (auto& [e, c] : g.terms) out.add_term(e, coordinates_over(c, 1)[static_cast<std::size_t>(index_of[k])]);
    return out;
}

std::vector<MultiPoly> cyclic_images(const MultiPoly& h) {
    auto K = h.field;
    auto w = poly("w", K), x = poly("x", K), y = poly("y", K), z = poly("z", K);
    return {h, compose(h, {w, y, z, x}), compose(h, {w, z, x, y})};
}

}  // namespace

ExampleClass build_ex74() {
    ExampleClass ex;
    ex.name = "ex74";
    ex.S = {34, 34, 34};
    const auto& F = ex74_field();
    auto K = F.K;
    auto one = nf(K, 1);
    FieldAutomorphism rho(K, {F.s, -F.i, -(F.i * F.zeta)});
    FieldAutomorphism tau(K, {F.s, -F.i, F.i * F.zeta});
    NFElem z3 = F.zeta * F.zeta * F.zeta;
    NFElem delta = F.s * F.zeta - z3 * Rational(4), eps = F.zeta * Rational(4) + F.s * z3;
    record(ex, "delta rho(delta) = -1", delta * rho(delta) == -one);
    record(ex, "epsilon tau(epsilon) = 1", eps * tau(eps) == one);
    record(ex, "delta rho(epsilon) = tau(delta) epsilon", delta * rho(eps) == tau(delta) * eps);
    record(ex, "(-delta, epsilon) is also a solution",
           (-delta) * rho(-delta) == -one && (-delta) * rho(eps) == tau(-delta) * eps);

    NFElem sqrt2 = F.zeta - z3;
    NFElem sqrt17 = -(F.i * F.s);
    NFElem inv_sqrt34 = sqrt2 * sqrt17 * Rational(1, 34);
    record(ex, "sqrt2^2 = 2 and (1/sqrt34)^2 = 1/34",
           sqrt2 * sqrt2 == nf(K, 2) && inv_sqrt34 * inv_sqrt34 == nf(K, Rational(1, 34)));
    std::map<std::string, NFElem> cs{{"r2", sqrt2}, {"k", inv_sqrt34}};
    auto g = poly("(x^2 + i*y^2 + z^2 + k*w)*(y^2 + i*z^2 + (4*zeta - s*zeta^3)*(y^2 + r2*y*z + z^2))"
                  " + (x^2 + i*y^2 - z^2 - k*w)*(y^2 + r2*y*z + z^2 + (4*zeta - s*zeta^3)*(-y^2 + i*z^2))",
                  K, cs);
    std::vector<MultiPoly> p;
    for (int k = 0; k < 4; ++k) p.push_back(zeta_component(g, k));
    auto half = nf(K, Rational(1, 2));
    auto h1_derived = p[0] * half + p[1] * ((nf(K, 4) - F.s) * half) + p[2] * half - p[3] * ((nf(K, 4) + F.s) * half);
    auto Q = NumberField::rationals();
    auto h1 = poly("w*y^2 + w*z^2 + x^2*y^2 + 8*x^2*y*z + x^2*z^2 + y^4 - z^4", Q);
    auto h4 = poly("w*y^2 + w*z^2 + x^2*y^2 + 8*x^2*y*z + x^2*z^2 - y^4 + z^4", Q);
    record(ex, "h1 from the zeta-components of g equals w y^2 + w z^2 + x^2 y^2 + 8 x^2 y z + x^2 z^2 + y^4 - z^4",
           h1_derived == extend_field(h1, K));

    auto P = poly("(1/2)*w*y^2 + 4*w*y*z + (1/2)*w*z^2 + 17*x^2*y^2 + 17*x^2*z^2 - 4*y^4 + y^3*z + y*z^3 - 4*z^4", Q);
    auto Qp = poly("(1/34)*w*y^2 + (4/17)*w*y*z + (1/34)*w*z^2 + x^2*y^2 + x^2*z^2 + 4*y^4 - y^3*z - y*z^3 + 4*z^4", Q);
    auto R = poly("-33*y^4 + 16*y^3*z - 2*y^2*z^2 + 16*y*z^3 - 33*z^4", Q);
    auto rel = poly("x^4 + y^4 + z^4 - (1/34)*w^2", Q);
    auto H1 = cyclic_images(h1), H4 = cyclic_images(h4), PP = cyclic_images(P), QQ = cyclic_images(Qp),
         RR = cyclic_images(R), REL = cyclic_images(rel);
    for (std::size_t c = 0; c < 3; ++c) {
        auto rhs = (PP[c] * PP[c] + QQ[c] * QQ[c] * Rational(17)) * Rational(1, 9) + RR[c] * REL[c];
        record(ex, "h" + std::to_string(c + 1) + " h" + std::to_string(c + 4) + " = (1/9)(P^2 + 17 Q^2) + R (x^4 + y^4 + z^4 - w^2/34)",
               H1[c] * H4[c] == rhs, "exact polynomial identity");
    }
    for (std::size_t c = 0; c < 3; ++c) {
        QuaternionClass q;
        q.d = -17;
        q.g = over_x(H1[c], 4);
        q.equivalent.push_back(over_x(H4[c], 4));
        q.label = "q" + std::to_string(c + 1);
        ex.classes.push_back(q);
    }
    return ex;
}

ExampleClass build_ex75() {
    ExampleClass ex;
    ex.name = "ex75";
    ex.S = {-9826, -2, 136};
    ex.kind = ClassKind::cyclic_order4;
    auto Ki = gaussian_field();
    auto f1 = RationalFunction{poly("17*(1+i)*x*z + i*y^2 - (1/2)*w", Ki), poly("17*(-1+i)*x*z + i*y^2 + (1/2)*w", Ki)};
    auto f2 = RationalFunction{poly("17*(1-i)*x*z + i*y^2 + (1/2)*w", Ki), poly("17*(1+i)*x*z - i*y^2 + (1/2)*w", Ki)};
    FieldAutomorphism conj(Ki, {-nf_gen(Ki, "i")});
    int n = 1;
    for (auto& f : {f1, f2}) {
        auto lhs = f.num * apply_to_coefficients(f.num, conj) - f.den * apply_to_coefficients(f.den, conj);
        record(ex, "f" + std::to_string(n) + " h(f" + std::to_string(n) + ") = 1 on S", vanishes_on_surface(lhs, ex.S));
        ++n;
    }
    ex.cyclic_functions = {f1, f2};

    auto u = parse_word("iota_a iota_b iota_c sigma tau");
    auto g = parse_word("iota_a^3 iota_c");
    auto h = parse_word("iota_b iota_c^3 sigma");
    auto in_u = [&](const GroupElement& x) { return x == gen::identity() || x == u; };
    record(ex, "g^4, h^2 and ghgh lie in <u>", in_u(power(g, 4)) && in_u(power(h, 2)) && in_u(g * h * g * h));
    const auto& lat = lattice();
    auto cls = [&](int al, int be, int ga) { return lat.cls(CurveLabel::triple(al, be, ga)); };
    auto sub = [](const PicClass& a, const PicClass& b) {
        PicClass r;
        for (std::size_t k = 0; k < 8; ++k) r[k] = a[k] - b[k];
        return r;
    };
    auto add = [](const PicClass& a, const PicClass& b) {
        PicClass r;
        for (std::size_t k = 0; k < 8; ++k) r[k] = a[k] + b[k];
        return r;
    };
    PicClass v1{-1, 0, 1, 0, 0, 0, 0, 0}, v2{-1, 0, -1, 0, -1, -1, -2, 2}, zero{};
    record(ex, "v1 = [L_{1,i,1}] - [L_{i,-1,-1}]", sub(cls(0, 1, 0), cls(1, 2, 2)) == v1);
    record(ex, "v2 = [L_{1,-1,i}] - [L_{i,i,i}]", sub(cls(0, 2, 1), cls(1, 1, 1)) == v2);
    auto Mg = matrix_of(g), Mgh = matrix_of(g * h), Mu = matrix_of(u);
    auto norm = [&](const Mat8& m, int ord, const PicClass& v) {
        PicClass acc{}, cur = v;
        for (int k = 0; k < ord; ++k) {
            acc = add(acc, cur);
            cur = mat_apply(m, cur);
        }
        return acc;
    };
    for (auto [name, v] : {std::pair{"v1", v1}, std::pair{"v2", v2}}) {
        record(ex, std::string(name) + " is fixed by u", mat_apply(Mu, v) == v);
        record(ex, std::string("N_g ") + name + " = 0 and N_gh " + name + " = 0 = N_gh 0",
               norm(Mg, 4, v) == zero && norm(Mgh, 2, v) == zero);
    }
    auto base = add(cls(0, 0, 0), cls(0, 1, 3));
    auto delta = sub(mat_apply(Mg, base), base);
    record(ex, "v2 - v1 = Delta_g([L_{1,1,1}] + [L_{1,i,-i}])", sub(v2, v1) == delta || sub(v2, v1) == sub(base, mat_apply(Mg, base)));

    QuaternionClass two;
    two.d = -2;
    two.g = over_x(poly("136*x^2 + y^2 + 18*z^2", NumberField::rationals()), 2);
    two.label = "(-2, 136 + (y/x)^2 + 18 (z/x)^2)";
    ex.classes.push_back(two);
    return ex;
}

namespace {

// f = num/den over Q(i), cleared to Gaussian-integer coefficients
struct GaussPoly {
    std::vector<std::pair<std::array<int, 4>, std::pair<mpz_class, mpz_class>>> terms;

    std::pair<i64, i64> eval(const std::array<i64, 4>& pt, i64 M) const {
        i64 re = 0, im = 0;
        for (auto& [e, c] : terms) {
            i64 m = 1 % M;
            for (int k = 0; k < 4; ++k)
                for (int t = 0; t < e[static_cast<std::size_t>(k)]; ++t) m = mulmod(m, modp(pt[static_cast<std::size_t>(k)], M), M);
            re = (re + mulmod(static_cast<i64>(mpz_fdiv_ui(c.first.get_mpz_t(), static_cast<unsigned long>(M))), m, M)) % M;
            im = (im + mulmod(static_cast<i64>(mpz_fdiv_ui(c.second.get_mpz_t(), static_cast<unsigned long>(M))), m, M)) % M;
        }
        return {re, im};
    }
    std::complex<double> eval(const std::array<double, 4>& pt) const {
        std::complex<double> acc = 0;
        for (auto& [e, c] : terms) {
            double m = 1;
            for (int k = 0; k < 4; ++k) m *= std::pow(pt[static_cast<std::size_t>(k)], e[static_cast<std::size_t>(k)]);
            acc += std::complex<double>(c.first.get_d(), c.second.get_d()) * m;
        }
        return acc;
    }
};

std::pair<GaussPoly, GaussPoly> gaussian_parts(const RationalFunction& f) {
    if (f.num.field->degree() > 2 || f.den.field->degree() > 2) throw std::invalid_argument("function over Q(i) expected");
    mpz_class L = 1;
    for (auto* P : {&f.num, &f.den})
        for (auto& [e, c] : P->terms)
            for (auto& q : c.c) mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), q.get_den().get_mpz_t());
    auto conv = [&](const MultiPoly& P) {
        GaussPoly G;
        for (auto& [e, c] : P.terms) {
            Rational re = c.c[0] * L, im = c.c.size() > 1 ? Rational(c.c[1] * L) : Rational(0);
            G.terms.push_back({{e[0], e[1], e[2], e[3]}, {re.get_num(), im.get_num()}});
        }
        return G;
    };
    return {conv(f.num), conv(f.den)};
}

i64 sqrt_minus_one_mod(long p, i64 M) {
    i64 j = 0;
    for (i64 t = 2; t < p; ++t)
        if (mulmod(t, t, p) == p - 1) {
            j = t;
            break;
        }
    if (j == 0) throw std::invalid_argument("-1 is not a square modulo p");
    // Newton iteration j <- j - (j^2 + 1)/(2j)
    for (int it = 0; it < 8; ++it) {
        i64 num = modp(mulmod(j, j, M) + 1, M);
        j = modp(j - mulmod(num, inverse_mod(modp(2 * j, M), M), M), M);
    }
    return j;
}

}  // namespace

QuarticResidueReport quartic_residue_profile(const RationalFunction& f, const Surface& S, long p, int k,
                                             unsigned threads) {
    if (p % 4 != 1) throw std::invalid_argument("p must be 1 mod 4");
    auto [N, D] = gaussian_parts(f);
    QuarticResidueReport rep;
    rep.p = p;
    rep.sqrt_minus_one = sqrt_minus_one_mod(p, p);
    std::vector<i64> roots(static_cast<std::size_t>(k) + 2, 0);
    for (int a = 1; a <= k + 1; ++a) roots[static_cast<std::size_t>(a)] = sqrt_minus_one_mod(p, prime_power(p, a));
    auto value = [&](const GaussPoly& G, const std::array<i64, 4>& pt, int a) {
        i64 M = prime_power(p, a);
        auto [re, im] = G.eval(pt, M);
        return modp(re + mulmod(im, roots[static_cast<std::size_t>(a)], M), M);
    };
    CellEvaluator ev = [&](const std::array<i64, 4>& pt, int a) -> std::optional<InvariantVector> {
        i64 n = value(N, pt, a), d = value(D, pt, a);
        if (n == 0 || d == 0) return std::nullopt;
        int vn = valuation(n, p), vd = valuation(d, p);
        if (a - vn < 1 || a - vd < 1) return std::nullopt;
        for (int t = 0; t < vn; ++t) n /= p;
        for (int t = 0; t < vd; ++t) d /= p;
        i64 u = mulmod(n % p, inverse_mod(d % p, p), p);
        return InvariantVector{static_cast<int>(u)};
    };
    auto ex = explore_padic(S, p, ev, 1, k, Normalization::first_unit, threads);
    rep.undetermined = ex.undetermined;
    rep.level = ex.deepest;
    for (auto& v : ex.attained) {
        i64 u = v[0];
        rep.values.insert(u);
        i64 c = powmod(u, (p - 1) / 4, p);
        rep.quartic_residue[u] = c == 1;
        for (int q = 0; q < 4; ++q)
            if (powmod(rep.sqrt_minus_one, q, p) == c) rep.quarters.insert(q);
    }
    return rep;
}

const std::vector<GaussianResidue>& ex75_mod32_table() {
    static const std::vector<GaussianResidue> t{
        {1, 0},  {1, 8},   {1, 16},  {1, 24},  {25, 4},  {25, 12}, {25, 20}, {25, 28},
        {0, 31}, {8, 31},  {16, 31}, {24, 31}, {4, 7},   {12, 7},  {20, 7},  {28, 7},
        {31, 0}, {31, 24}, {31, 16}, {31, 8},  {7, 28},  {7, 20},  {7, 12},  {7, 4},
        {0, 1},  {24, 1},  {16, 1},  {8, 1},   {28, 25}, {20, 25}, {12, 25}, {4, 25}};
    return t;
}

Mod32Report mod32_membership(const Surface& S, const std::vector<RationalFunction>& fs,
                             const std::vector<GaussianResidue>& table, unsigned threads) {
    std::vector<std::pair<GaussPoly, GaussPoly>> parts;
    for (auto& f : fs) parts.push_back(gaussian_parts(f));
    std::set<GaussianResidue> tab(table.begin(), table.end());
    CellEvaluator ev = [&](const std::array<i64, 4>& pt, int a) -> std::optional<InvariantVector> {
        if (a < 5) return std::nullopt;
        i64 M = prime_power(2, a);
        std::optional<InvariantVector> outside;
        std::size_t determined = 0;
        for (auto& [N, D] : parts) {
            auto [nr, ni] = N.eval(pt, M);
            auto [dr, di] = D.eval(pt, M);
            i64 n = modp(mulmod(dr, dr, M) + mulmod(di, di, M), M);
            if (n == 0) continue;
            int e = valuation(n, 2);
            if (a - e < 5) continue;
            ++determined;
            // f = N conj(D) / |D|^2
            i64 xr = modp(mulmod(nr, dr, M) + mulmod(ni, di, M), M);
            i64 xi = modp(mulmod(ni, dr, M) - mulmod(nr, di, M), M);
            i64 pe = prime_power(2, e);
            if (xr % pe || xi % pe) {
                if (!outside) outside = InvariantVector{0, -1, -1};
                continue;
            }
            i64 inv = inverse_mod((n / pe) % 32, 32);
            int re = static_cast<int>(mulmod((xr / pe) % 32, inv, 32)), im = static_cast<int>(mulmod((xi / pe) % 32, inv, 32));
            if (tab.count({re, im})) return InvariantVector{1, re, im};
            if (!outside) outside = InvariantVector{0, re, im};
        }
        if (determined == parts.size()) return outside;
        return std::nullopt;
    };
    auto ex = explore_padic(S, 2, ev, 1, default_max_level(2), Normalization::first_unit, threads);
    Mod32Report rep;
    rep.classes = ex.certified;
    rep.undetermined = ex.undetermined;
    rep.level = ex.deepest;
    rep.all_members = ex.undetermined == 0 && !ex.attained.empty();
    for (auto& v : ex.attained) {
        if (v[0] != 1) rep.all_members = false;
        rep.values.insert({v[1], v[2]});
    }
    return rep;
}

namespace {

// Z[i][r]/(r^4 - 17) modulo M, basis i^a r^b at a + 2b
using ElemR = std::array<i64, 8>;

ElemR mul_r(const ElemR& x, const ElemR& y, i64 M) {
    ElemR out{};
    for (int a1 = 0; a1 < 2; ++a1)
        for (int b1 = 0; b1 < 4; ++b1) {
            i64 cx = x[static_cast<std::size_t>(a1 + 2 * b1)];
            if (!cx) continue;
            for (int a2 = 0; a2 < 2; ++a2)
                for (int b2 = 0; b2 < 4; ++b2) {
                    i64 c = mulmod(cx, y[static_cast<std::size_t>(a2 + 2 * b2)], M);
                    int a = a1 + a2, b = b1 + b2;
                    if (a == 2) {
                        a = 0;
                        c = modp(-c, M);
                    }
                    if (b >= 4) {
                        b -= 4;
                        c = mulmod(c, 17, M);
                    }
                    auto& slot = out[static_cast<std::size_t>(a + 2 * b)];
                    slot = modp(slot + c, M);
                }
        }
    return out;
}

// g: i -> i, r -> i r
ElemR apply_g(const ElemR& x, i64 M) {
    ElemR out{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 4; ++b) {
            i64 c = x[static_cast<std::size_t>(a + 2 * b)];
            // i^a (i r)^b = i^(a+b) r^b
            int e = (a + b) % 4;
            auto& slot = out[static_cast<std::size_t>(e % 2 + 2 * b)];
            slot = modp(slot + (e >= 2 ? -c : c), M);
        }
    return out;
}

// gh: i^a r^b -> (-1)^(a+b) i^a r^b
ElemR apply_gh(const ElemR& x, i64 M) {
    ElemR out{};
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 4; ++b) {
            i64 c = x[static_cast<std::size_t>(a + 2 * b)];
            out[static_cast<std::size_t>(a + 2 * b)] = (a + b) % 2 ? modp(-c, M) : c;
        }
    return out;
}

// Gaussian integers modulo 2^20
constexpr i64 kW = i64{1} << 20;
using Gauss = std::pair<i64, i64>;

Gauss gmul(Gauss x, Gauss y) {
    return {modp(mulmod(x.first, y.first, kW) - mulmod(x.second, y.second, kW), kW),
            modp(mulmod(x.first, y.second, kW) + mulmod(x.second, y.first, kW), kW)};
}
Gauss gconj(Gauss x) { return {x.first, modp(-x.second, kW)}; }
Gauss ginv(Gauss x) {
    i64 n = modp(mulmod(x.first, x.first, kW) + mulmod(x.second, x.second, kW), kW);
    i64 v = inverse_mod(n, kW);
    return {mulmod(x.first, v, kW), mulmod(modp(-x.second, kW), v, kW)};
}
int gval(Gauss x) {
    int v = 20;
    if (x.first) v = std::min(v, valuation(x.first, 2));
    if (x.second) v = std::min(v, valuation(x.second, 2));
    return v;
}

// the fourth root of 17 in Z_2 that is 1 mod 4, modulo 2^20
i64 fourth_root_17() {
    i64 x = 1;
    for (int t = 2; t < 20; ++t) {
        i64 M = i64{1} << (t + 3);
        i64 x2 = mulmod(x, x, M);
        if (mulmod(x2, x2, M) != 17 % M) x += i64{1} << t;
    }
    return x;
}

}  // namespace

// Over Q_2 the polynomial r^4 - 17 splits, so Z_2[i][r]/(r^4 - 17) embeds in four copies of Z_2[i] by
// r -> i^j rho.  In these coordinates g shifts (c_j) to (c_{j+1}) and gh sends it to (conj c_{2-j}), so
// N_gh(c) = 1 means c_2 = 1/conj(c_0) with c_1, c_3 of norm 1, and N_g(c) = c_0 c_1 c_2 c_3.
std::vector<NormWitness> norm_image_witnesses(const std::vector<GaussianResidue>& targets, int box) {
    std::vector<NormWitness> out;
    for (auto& t : targets) out.push_back(NormWitness{t, false, 0, {}});
    i64 rho = fourth_root_17(), rho_inv = inverse_mod(rho, kW);
    const Gauss ipow[4] = {{1, 0}, {0, 1}, {kW - 1, 0}, {0, kW - 1}};
    std::vector<Gauss> odd;
    for (i64 a = -box; a <= box; ++a)
        for (i64 b = -box; b <= box; ++b)
            if ((a * a + b * b) % 2) odd.push_back({modp(a, kW), modp(b, kW)});
    auto verify = [&](NormWitness& w, const std::array<Gauss, 4>& c, int s) {
        std::array<Gauss, 4> y;
        for (std::size_t j = 0; j < 4; ++j) y[j] = gmul(c[j], {i64{1} << s, 0});
        ElemR e{};
        i64 rk = 1;
        for (std::size_t k = 0; k < 4; ++k) {
            Gauss dft{0, 0};
            for (std::size_t j = 0; j < 4; ++j) {
                auto t = gmul(y[j], ipow[(4 - (j * k) % 4) % 4]);
                dft = {modp(dft.first + t.first, kW), modp(dft.second + t.second, kW)};
            }
            if (dft.first % 4 || dft.second % 4) return false;
            auto a = gmul({dft.first / 4, dft.second / 4}, {rk, 0});
            e[2 * k] = a.first;
            e[2 * k + 1] = a.second;
            rk = mulmod(rk, rho_inv, kW);
        }
        i64 M = i64{1} << (5 + 4 * s), Mh = i64{1} << (5 + 2 * s);
        for (auto& v : e) v = modp(v, M);
        auto ngh = mul_r(e, apply_gh(e, M), M);
        for (std::size_t k = 0; k < 8; ++k)
            if (modp(ngh[k], Mh) != (k == 0 ? (i64{1} << (2 * s)) % Mh : 0)) return false;
        auto ng = e, cur = e;
        for (int k = 1; k < 4; ++k) {
            cur = apply_g(cur, M);
            ng = mul_r(ng, cur, M);
        }
        i64 f = i64{1} << (4 * s);
        for (std::size_t k = 0; k < 8; ++k) {
            i64 want = k == 0 ? mulmod(f, w.target.first, M) : (k == 1 ? mulmod(f, w.target.second, M) : 0);
            if (ng[k] != want) return false;
        }
        w.found = true;
        w.scale = s;
        w.y = e;
        return true;
    };
    for (auto& c0 : odd)
        for (auto& w1 : odd)
            for (auto& w3 : odd)
                for (auto& u1 : ipow)
                    for (auto& u3 : ipow) {
                        std::array<Gauss, 4> c{c0, gmul(gmul(w1, ginv(gconj(w1))), u1), ginv(gconj(c0)),
                                               gmul(gmul(w3, ginv(gconj(w3))), u3)};
                        auto f = gmul(gmul(gmul(c[0], c[1]), c[2]), c[3]);
                        GaussianResidue key{static_cast<int>(f.first % 32), static_cast<int>(f.second % 32)};
                        int s = 0;
                        for (std::size_t k = 0; k < 4; ++k) {
                            Gauss dft{0, 0};
                            for (std::size_t j = 0; j < 4; ++j) {
                                auto t = gmul(c[j], ipow[(4 - (j * k) % 4) % 4]);
                                dft = {modp(dft.first + t.first, kW), modp(dft.second + t.second, kW)};
                            }
                            s = std::max(s, 2 - gval(dft));
                        }
                        for (auto& w : out)
                            if (w.target == key && (!w.found || s < w.scale)) verify(w, c, s);
                    }
    return out;
}

Verdict quaternion_verdict(const Surface& S, const std::vector<QuaternionClass>& classes, const ProfileOptions& opt) {
    std::vector<LocalProfile> profiles;
    profiles.push_back(quaternion_profile(classes, S, kRealPlace, opt));
    for (long p : bad_primes(S)) profiles.push_back(quaternion_profile(classes, S, p, opt));
    return verdict(std::move(profiles));
}

namespace {

LocalProfile cyclic_real_profile(const ExampleClass& ex, std::size_t samples) {
    std::vector<std::pair<GaussPoly, GaussPoly>> parts;
    for (auto& f : ex.cyclic_functions) parts.push_back(gaussian_parts(f));
    RealEvaluator ev = [&](const std::array<double, 4>& pt) -> std::optional<InvariantVector> {
        for (auto& [N, D] : parts) {
            auto n = N.eval(pt), d = D.eval(pt);
            if (std::abs(d) < 1e-9) continue;
            // the cocycle (f,1,1) lies in the connected group S^1 x 1 x 1 exactly when |f| = 1
            if (std::fabs(std::abs(n / d) - 1.0) < 1e-6) return InvariantVector{0};
            return std::nullopt;
        }
        return std::nullopt;
    };
    return real_profile(ex.S, ev, samples);
}

}  // namespace

Verdict example_verdict(const ExampleClass& ex, const ProfileOptions& opt) {
    if (ex.kind == ClassKind::quaternion) return quaternion_verdict(ex.S, ex.classes, opt);
    std::vector<LocalProfile> profiles;
    profiles.push_back(cyclic_real_profile(ex, opt.real_samples));
    for (long p : bad_primes(ex.S)) {
        LocalProfile prof;
        prof.place = p;
        prof.method = "exact-enumeration";
        if (p == 2) {
            auto rep = mod32_membership(ex.S, ex.cyclic_functions, ex75_mod32_table(), opt.threads);
            auto wit = norm_image_witnesses({{1, 0}, {1, 8}, {1, 16}, {1, 24}, {25, 4}, {25, 12}, {25, 20}, {25, 28}, {0, 1}});
            // the first-row values need integral witnesses, the value i any witness
            bool all_found = std::all_of(wit.begin(), wit.end(), [](const NormWitness& w) {
                return w.found && (w.scale == 0 || w.target == GaussianResidue{0, 1});
            });
            prof.level = rep.level;
            prof.undetermined = rep.undetermined;
            if (rep.all_members && all_found)
                prof.attained.insert({0});
            else
                prof.undetermined = std::max<std::size_t>(prof.undetermined, 1);
        } else if (p % 4 == 1) {
            int k = opt.max_level ? opt.max_level : default_max_level(p);
            auto rep = quartic_residue_profile(ex.cyclic_functions.front(), ex.S, p, k, opt.threads);
            prof.level = rep.level;
            prof.undetermined = rep.undetermined;
            for (int q : rep.quarters) prof.attained.insert({q});
        } else {
            throw std::invalid_argument("no local recipe for the order-4 class at " + place_name(p));
        }
        profiles.push_back(prof);
    }
    return verdict(std::move(profiles));
}

}  // namespace dp2

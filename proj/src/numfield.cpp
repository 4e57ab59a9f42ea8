#include "dp2/numfield.hpp"

#include "dp2/errors.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace dp2 {

namespace {

using RVec = std::vector<Rational>;

bool zero_span(const Rational* a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        if (sgn(a[i]) != 0) return false;
    return true;
}

bool zero_vec(const RVec& a) { return zero_span(a.data(), a.size()); }

RVec mul_level(const NumberField& K, std::size_t L, const Rational* a, const Rational* b) {
    if (L == 0) return {a[0] * b[0]};
    const Floor& f = K.floors()[L - 1];
    std::size_t n = static_cast<std::size_t>(f.degree), d = K.degree_below(L - 1);
    RVec out(n * d);
    for (std::size_t i = 0; i < n; ++i) {
        if (zero_span(a + i * d, d)) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (zero_span(b + j * d, d)) continue;
            RVec p = mul_level(K, L - 1, a + i * d, b + j * d);
            if (i + j >= n) p = mul_level(K, L - 1, p.data(), f.radicand.data());
            std::size_t k = (i + j) % n;
            for (std::size_t t = 0; t < d; ++t) out[k * d + t] += p[t];
        }
    }
    return out;
}

// solve M x = rhs over Q for square invertible M (column-major build below)
RVec solve_rational(std::vector<RVec> m, RVec rhs) {
    std::size_t n = rhs.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        while (piv < n && sgn(m[piv][col]) == 0) ++piv;
        if (piv == n) throw InvariantError("singular system in number field arithmetic");
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        Rational inv = 1 / m[col][col];
        for (std::size_t j = col; j < n; ++j) m[col][j] *= inv;
        rhs[col] *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || sgn(m[r][col]) == 0) continue;
            Rational f = m[r][col];
            for (std::size_t j = col; j < n; ++j) m[r][j] -= f * m[col][j];
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

RVec inv_level(const NumberField& K, std::size_t L, const RVec& a) {
    std::size_t d = K.degree_below(L);
    if (zero_vec(a)) throw std::domain_error("division by zero in number field");
    std::vector<RVec> m(d, RVec(d));
    for (std::size_t k = 0; k < d; ++k) {
        RVec e(d);
        e[k] = 1;
        RVec col = mul_level(K, L, a.data(), e.data());
        for (std::size_t r = 0; r < d; ++r) m[r][k] = col[r];
    }
    RVec rhs(d);
    rhs[0] = 1;
    return solve_rational(std::move(m), std::move(rhs));
}

std::optional<Rational> rational_sqrt(const Rational& q) {
    if (sgn(q) < 0) return std::nullopt;
    mpz_class n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(rn, rd);
}

bool rational_cube(const Rational& q) {
    mpz_class n = abs(q.get_num()), d = q.get_den();
    return mpz_root(mpz_class().get_mpz_t(), n.get_mpz_t(), 3) != 0 && mpz_root(mpz_class().get_mpz_t(), d.get_mpz_t(), 3) != 0;
}

bool all_quadratic(const NumberField& K, std::size_t L) {
    for (std::size_t i = 0; i < L; ++i)
        if (K.floors()[i].degree != 2) return false;
    return true;
}

std::optional<RVec> sqrt_level(const NumberField& K, std::size_t L, const RVec& c) {
    if (L == 0) {
        auto r = rational_sqrt(c[0]);
        if (!r) return std::nullopt;
        return RVec{*r};
    }
    std::size_t d = K.degree_below(L - 1);
    const RVec& rad = K.floors()[L - 1].radicand;
    RVec c0(c.begin(), c.begin() + static_cast<long>(d)), c1(c.begin() + static_cast<long>(d), c.end());
    auto join = [&](const RVec& a, const RVec& b) {
        RVec out = a;
        out.insert(out.end(), b.begin(), b.end());
        return out;
    };
    RVec zero(d);
    if (zero_vec(c1)) {
        if (auto s = sqrt_level(K, L - 1, c0)) return join(*s, zero);
        RVec q = mul_level(K, L - 1, c0.data(), inv_level(K, L - 1, rad).data());
        if (auto s = sqrt_level(K, L - 1, q)) return join(zero, *s);
        return std::nullopt;
    }
    RVec c0sq = mul_level(K, L - 1, c0.data(), c0.data());
    RVec c1sq = mul_level(K, L - 1, c1.data(), c1.data());
    RVec c1sqd = mul_level(K, L - 1, c1sq.data(), rad.data());
    RVec disc(d);
    for (std::size_t i = 0; i < d; ++i) disc[i] = c0sq[i] - c1sqd[i];
    auto s = sqrt_level(K, L - 1, disc);
    if (!s) return std::nullopt;
    for (int sign : {1, -1}) {
        RVec a2(d);
        for (std::size_t i = 0; i < d; ++i) a2[i] = (c0[i] + sign * (*s)[i]) / 2;
        auto a = sqrt_level(K, L - 1, a2);
        if (!a || zero_vec(*a)) continue;
        RVec two_a = *a;
        for (auto& x : two_a) x *= 2;
        RVec b = mul_level(K, L - 1, c1.data(), inv_level(K, L - 1, two_a).data());
        RVec cand = join(*a, b);
        if (mul_level(K, L, cand.data(), cand.data()) == c) return cand;
    }
    return std::nullopt;
}

void check_same(const NFElem& a, const NFElem& b) {
    if (a.field != b.field) throw std::invalid_argument("number field elements from different fields");
}

NFElem make(const FieldPtr& K, RVec c) { return NFElem{K, std::move(c)}; }

std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace

std::size_t NumberField::degree_below(std::size_t n) const {
    std::size_t d = 1;
    for (std::size_t i = 0; i < n; ++i) d *= static_cast<std::size_t>(floors_[i].degree);
    return d;
}

FieldPtr NumberField::rationals() {
    static FieldPtr q = std::make_shared<const NumberField>();
    return q;
}

std::string NumberField::describe() const {
    if (floors_.empty()) return "Q";
    std::ostringstream os;
    for (std::size_t i = 0; i < floors_.size(); ++i) {
        if (i) os << ", ";
        NumberField below;
        below.floors_.assign(floors_.begin(), floors_.begin() + static_cast<long>(i));
        below.degree_ = degree_below(i);
        auto sp = std::make_shared<const NumberField>(below);
        os << floors_[i].name << "^" << floors_[i].degree << " = " << NFElem{sp, floors_[i].radicand}.to_string();
    }
    return os.str();
}

NFElem NumberField::zero(const FieldPtr& self) const { return make(self, RVec(degree_)); }

NFElem NumberField::from_rational(const FieldPtr& self, const Rational& q) const {
    RVec c(degree_);
    c[0] = q;
    return make(self, std::move(c));
}

NFElem NumberField::generator(const FieldPtr& self, std::size_t floor) const {
    RVec c(degree_);
    c[degree_below(floor)] = 1;
    return make(self, std::move(c));
}

std::optional<NFElem> NumberField::named(const FieldPtr& self, const std::string& name) const {
    for (std::size_t i = 0; i < floors_.size(); ++i)
        if (floors_[i].name == name) return generator(self, i);
    return std::nullopt;
}

FieldPtr adjoin_root(const FieldPtr& base, int n, const NFElem& c, const std::string& name) {
    if (c.field != base) throw std::invalid_argument("radicand must lie in the base field");
    if (c.is_zero()) throw std::invalid_argument("radicand must be nonzero");
    if (base->degree() * static_cast<std::size_t>(n) > kMaxTowerDegree) throw CapacityError("tower degree above 16");
    std::size_t L = base->floor_count();
    if (n == 2) {
        if (!all_quadratic(*base, L)) throw std::invalid_argument("square roots are supported over quadratic towers only");
        if (sqrt_level(*base, L, c.c)) throw std::invalid_argument("x^2 - " + c.to_string() + " is reducible");
    } else if (n == 3) {
        if (base->degree() % 3 == 0) throw std::invalid_argument("cube roots need a base of degree prime to 3");
        if (!c.is_rational()) throw std::invalid_argument("cube roots are supported for rational radicands only");
        // a cube root in a base of degree prime to 3 forces a rational cube root
        if (rational_cube(c.rational_value())) throw std::invalid_argument("x^3 - " + c.to_string() + " is reducible");
    } else {
        throw std::invalid_argument("only degree 2 and 3 floors are supported");
    }
    for (auto& f : base->floors())
        if (f.name == name) throw std::invalid_argument("duplicate generator name " + name);
    auto K = std::make_shared<NumberField>(*base);
    K->floors_.push_back(Floor{n, c.c, name});
    K->degree_ = base->degree() * static_cast<std::size_t>(n);
    return K;
}

NFElem nf(const FieldPtr& K, const Rational& q) { return K->from_rational(K, q); }

NFElem nf_gen(const FieldPtr& K, const std::string& name) {
    auto g = K->named(K, name);
    if (!g) throw std::invalid_argument("no generator named " + name);
    return *g;
}

bool NFElem::is_zero() const { return zero_vec(c); }

bool NFElem::is_rational() const { return zero_span(c.data() + 1, c.size() - 1); }

Rational NFElem::rational_value() const {
    if (!is_rational()) throw std::domain_error("element is not rational");
    return c[0];
}

std::string NFElem::to_string() const {
    std::ostringstream os;
    bool first = true;
    const auto& fl = field->floors();
    for (std::size_t idx = 0; idx < c.size(); ++idx) {
        if (sgn(c[idx]) == 0) continue;
        std::string mono;
        std::size_t rest = idx;
        for (auto& f : fl) {
            std::size_t e = rest % static_cast<std::size_t>(f.degree);
            rest /= static_cast<std::size_t>(f.degree);
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += f.name;
            if (e > 1) mono += "^" + std::to_string(e);
        }
        Rational q = c[idx];
        bool neg = sgn(q) < 0;
        if (neg) q = -q;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        if (mono.empty())
            os << rat_str(q);
        else if (q == 1)
            os << mono;
        else
            os << rat_str(q) << "*" << mono;
    }
    if (first) os << "0";
    return os.str();
}

NFElem operator+(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    RVec c = a.c;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b.c[i];
    return make(a.field, std::move(c));
}

NFElem operator-(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    RVec c = a.c;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b.c[i];
    return make(a.field, std::move(c));
}

NFElem operator-(const NFElem& a) {
    RVec c = a.c;
    for (auto& x : c) x = -x;
    return make(a.field, std::move(c));
}

NFElem operator*(const NFElem& a, const NFElem& b) {
    check_same(a, b);
    return make(a.field, mul_level(*a.field, a.field->floor_count(), a.c.data(), b.c.data()));
}

NFElem operator*(const NFElem& a, const Rational& q) {
    RVec c = a.c;
    for (auto& x : c) x *= q;
    return make(a.field, std::move(c));
}

NFElem inverse(const NFElem& a) { return make(a.field, inv_level(*a.field, a.field->floor_count(), a.c)); }

NFElem operator/(const NFElem& a, const NFElem& b) { return a * inverse(b); }

bool operator==(const NFElem& a, const NFElem& b) { return a.field == b.field && a.c == b.c; }

NFElem pow(const NFElem& a, long e) {
    if (e < 0) return pow(inverse(a), -e);
    NFElem r = nf(a.field, 1), base = a;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

std::optional<NFElem> sqrt_in_field(const NFElem& a) {
    const auto& K = *a.field;
    if (!all_quadratic(K, K.floor_count())) throw std::invalid_argument("square roots need a quadratic tower");
    auto r = sqrt_level(K, K.floor_count(), a.c);
    if (!r) return std::nullopt;
    return make(a.field, std::move(*r));
}

std::vector<NFElem> coordinates_over(const NFElem& x, std::size_t base_floors) {
    std::size_t d = x.field->degree_below(base_floors);
    std::vector<NFElem> out;
    for (std::size_t j = 0; j * d < x.c.size(); ++j) {
        RVec c(x.c.size());
        for (std::size_t t = 0; t < d; ++t) c[t] = x.c[j * d + t];
        out.push_back(make(x.field, std::move(c)));
    }
    return out;
}

namespace {

NFElem apply_level(const FieldPtr& K, const std::vector<std::vector<NFElem>>& powers, std::size_t L, const Rational* x) {
    if (L == 0) return nf(K, x[0]);
    std::size_t n = static_cast<std::size_t>(K->floors()[L - 1].degree), d = K->degree_below(L - 1);
    NFElem acc = K->zero(K);
    for (std::size_t j = 0; j < n; ++j) {
        if (zero_span(x + j * d, d)) continue;
        acc = acc + apply_level(K, powers, L - 1, x + j * d) * powers[L - 1][j];
    }
    return acc;
}

}  // namespace

FieldAutomorphism::FieldAutomorphism(FieldPtr K, std::vector<NFElem> images) : K_(std::move(K)), images_(std::move(images)) {
    if (images_.size() != K_->floor_count()) throw std::invalid_argument("one image per floor is required");
    std::vector<std::vector<NFElem>> powers;
    for (std::size_t L = 0; L < images_.size(); ++L) {
        const Floor& f = K_->floors()[L];
        std::vector<NFElem> p{nf(K_, 1)};
        for (int e = 1; e <= f.degree; ++e) p.push_back(p.back() * images_[L]);
        powers.push_back(p);
        RVec rad(K_->degree());
        for (std::size_t t = 0; t < f.radicand.size(); ++t) rad[t] = f.radicand[t];
        NFElem lhs = powers[L][static_cast<std::size_t>(f.degree)];
        NFElem rhs = apply_level(K_, powers, L, rad.data());
        if (!(lhs == rhs)) throw std::invalid_argument("images do not satisfy the defining relation of " + f.name);
    }
}

NFElem FieldAutomorphism::operator()(const NFElem& x) const {
    check_same(x, nf(K_, 0));
    std::vector<std::vector<NFElem>> powers;
    for (std::size_t L = 0; L < images_.size(); ++L) {
        std::vector<NFElem> p{nf(K_, 1)};
        for (int e = 1; e < K_->floors()[L].degree; ++e) p.push_back(p.back() * images_[L]);
        powers.push_back(p);
    }
    return apply_level(K_, powers, K_->floor_count(), x.c.data());
}

MultiPoly MultiPoly::zero(FieldPtr K, std::vector<std::string> vars) { return MultiPoly{std::move(K), std::move(vars), {}}; }

MultiPoly MultiPoly::constant(FieldPtr K, std::vector<std::string> vars, const NFElem& c) {
    MultiPoly p = zero(std::move(K), std::move(vars));
    p.add_term(std::vector<int>(p.vars.size(), 0), c);
    return p;
}

MultiPoly MultiPoly::variable(FieldPtr K, std::vector<std::string> vars, const std::string& v) {
    MultiPoly p = zero(K, std::move(vars));
    std::vector<int> e(p.vars.size(), 0);
    e[p.var_index(v)] = 1;
    p.add_term(e, nf(K, 1));
    return p;
}

std::size_t MultiPoly::var_index(const std::string& v) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == v) return i;
    throw std::invalid_argument("unknown variable " + v);
}

int MultiPoly::degree_in(std::size_t var) const {
    int d = 0;
    for (auto& [e, c] : terms) d = std::max(d, e[var]);
    return d;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (auto& [e, c] : terms) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

bool MultiPoly::has_rational_coefficients() const {
    for (auto& [e, c] : terms)
        if (!c.is_rational()) return false;
    return true;
}

void MultiPoly::add_term(const std::vector<int>& e, const NFElem& c) {
    if (c.is_zero()) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
        terms.emplace(e, c);
        return;
    }
    it->second = it->second + c;
    if (it->second.is_zero()) terms.erase(it);
}

std::string MultiPoly::to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += vars[i];
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        std::string coef;
        bool neg = false;
        if (c.is_rational()) {
            Rational q = c.rational_value();
            neg = sgn(q) < 0;
            if (neg) q = -q;
            coef = (q == 1 && !mono.empty()) ? "" : rat_str(q);
        } else {
            coef = "(" + c.to_string() + ")";
        }
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        os << coef;
        if (!coef.empty() && !mono.empty()) os << "*";
        os << mono;
    }
    return os.str();
}

namespace {

void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (a.field != b.field || a.vars != b.vars) throw std::invalid_argument("polynomials over different rings");
}

}  // namespace

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r = a;
    for (auto& [e, c] : b.terms) r.add_term(e, c);
    return r;
}

MultiPoly operator-(const MultiPoly& a) {
    MultiPoly r = a;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    check_same(a, b);
    MultiPoly r = MultiPoly::zero(a.field, a.vars);
    std::vector<int> e(a.vars.size());
    for (auto& [ea, ca] : a.terms)
        for (auto& [eb, cb] : b.terms) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

MultiPoly operator*(const MultiPoly& a, const NFElem& c) {
    MultiPoly r = MultiPoly::zero(a.field, a.vars);
    for (auto& [e, x] : a.terms) r.add_term(e, x * c);
    return r;
}

MultiPoly operator*(const MultiPoly& a, const Rational& q) { return a * nf(a.field, q); }

bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.field != b.field || a.vars != b.vars || a.terms.size() != b.terms.size()) return false;
    auto it = b.terms.begin();
    for (auto& [e, c] : a.terms) {
        if (e != it->first || !(c == it->second)) return false;
        ++it;
    }
    return true;
}

MultiPoly pow(const MultiPoly& a, int e) {
    MultiPoly r = MultiPoly::constant(a.field, a.vars, nf(a.field, 1)), base = a;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& images) {
    if (images.size() != p.vars.size()) throw std::invalid_argument("compose: one image per variable");
    const MultiPoly& ref = images.at(0);
    std::vector<std::vector<MultiPoly>> powers(images.size());
    for (std::size_t v = 0; v < images.size(); ++v) {
        powers[v].push_back(MultiPoly::constant(ref.field, ref.vars, nf(ref.field, 1)));
        for (int k = 1; k <= p.degree_in(v); ++k) powers[v].push_back(powers[v].back() * images[v]);
    }
    MultiPoly r = MultiPoly::zero(ref.field, ref.vars);
    for (auto& [e, c] : p.terms) {
        MultiPoly t = MultiPoly::constant(ref.field, ref.vars, c);
        for (std::size_t v = 0; v < e.size(); ++v)
            if (e[v]) t = t * powers[v][static_cast<std::size_t>(e[v])];
        r = r + t;
    }
    return r;
}

MultiPoly permute_variables(const MultiPoly& p, const std::vector<std::size_t>& perm) {
    MultiPoly r = MultiPoly::zero(p.field, p.vars);
    for (auto& [e, c] : p.terms) {
        std::vector<int> f(e.size());
        for (std::size_t j = 0; j < e.size(); ++j) f[j] = e[perm[j]];
        r.add_term(f, c);
    }
    return r;
}

MultiPoly apply_to_coefficients(const MultiPoly& p, const FieldAutomorphism& phi) {
    MultiPoly r = MultiPoly::zero(p.field, p.vars);
    for (auto& [e, c] : p.terms) r.add_term(e, phi(c));
    return r;
}

MultiPoly extend_field(const MultiPoly& p, const FieldPtr& target) {
    const auto& src = p.field->floors();
    const auto& dst = target->floors();
    if (dst.size() < src.size()) throw std::invalid_argument("target field is smaller");
    for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i].degree != dst[i].degree || src[i].radicand != dst[i].radicand || src[i].name != dst[i].name)
            throw std::invalid_argument("target field does not extend the source tower");
    MultiPoly r = MultiPoly::zero(target, p.vars);
    for (auto& [e, c] : p.terms) {
        RVec v(target->degree());
        for (std::size_t i = 0; i < c.c.size(); ++i) v[i] = c.c[i];
        r.add_term(e, make(target, std::move(v)));
    }
    return r;
}

DivisionResult divide_by(const MultiPoly& p, const MultiPoly& d, const std::string& var) {
    check_same(p, d);
    std::size_t v = d.var_index(var);
    int k = d.degree_in(v);
    const NFElem* lead = nullptr;
    MultiPoly rest = MultiPoly::zero(d.field, d.vars);
    for (auto& [e, c] : d.terms) {
        if (e[v] == k) {
            for (std::size_t i = 0; i < e.size(); ++i)
                if (i != v && e[i] != 0) throw std::invalid_argument("divisor must have a constant leading coefficient");
            lead = &c;
        } else {
            rest.add_term(e, c);
        }
    }
    if (!lead || k == 0) throw std::invalid_argument("divisor must involve the variable");
    NFElem lead_inv = inverse(*lead);
    DivisionResult out{MultiPoly::zero(p.field, p.vars), p};
    while (true) {
        const std::vector<int>* top = nullptr;
        for (auto& [e, c] : out.remainder.terms)
            if (e[v] >= k && (!top || e[v] > (*top)[v])) top = &e;
        if (!top) break;
        std::vector<int> qe = *top;
        qe[v] -= k;
        NFElem qc = out.remainder.terms.at(*top) * lead_inv;
        MultiPoly qt = MultiPoly::zero(p.field, p.vars);
        qt.add_term(qe, qc);
        out.quotient = out.quotient + qt;
        // remainder -= qt * d, with the leading product cancelling exactly
        out.remainder.terms.erase(*top);
        out.remainder = out.remainder - qt * rest;
    }
    return out;
}

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;
    const FieldPtr& K;
    const std::vector<std::string>& vars;
    const std::map<std::string, NFElem>& constants;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("parse error at " + std::to_string(pos) + ": " + msg + " in \"" + s + "\"");
    }
    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char ch) {
        skip();
        if (pos < s.size() && s[pos] == ch) {
            ++pos;
            return true;
        }
        return false;
    }
    MultiPoly constant(const NFElem& c) const { return MultiPoly::constant(K, vars, c); }

    MultiPoly expr() {
        MultiPoly r = term();
        while (true) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }
    MultiPoly term() {
        MultiPoly r = unary();
        while (true) {
            if (eat('*')) {
                r = r * unary();
            } else if (eat('/')) {
                MultiPoly d = unary();
                if (d.terms.size() != 1 || d.terms.begin()->first != std::vector<int>(vars.size(), 0))
                    fail("division by a non-constant");
                r = r * inverse(d.terms.begin()->second);
            } else {
                return r;
            }
        }
    }
    MultiPoly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }
    MultiPoly power() {
        MultiPoly a = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            if (start == pos) fail("exponent expected");
            a = pow(a, std::stoi(s.substr(start, pos - start)));
        }
        return a;
    }
    MultiPoly atom() {
        skip();
        if (pos >= s.size()) fail("unexpected end");
        if (eat('(')) {
            MultiPoly r = expr();
            if (!eat(')')) fail("')' expected");
            return r;
        }
        char ch = s[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            std::size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            return constant(nf(K, Rational(mpz_class(s.substr(start, pos - start)))));
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::size_t start = pos;
            while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
            std::string id = s.substr(start, pos - start);
            for (auto& v : vars)
                if (v == id) return MultiPoly::variable(K, vars, id);
            if (auto it = constants.find(id); it != constants.end()) return constant(it->second);
            if (auto g = K->named(K, id)) return constant(*g);
            fail("unknown identifier " + id);
        }
        fail(std::string("unexpected character '") + ch + "'");
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const FieldPtr& K, const std::vector<std::string>& vars,
                     const std::map<std::string, NFElem>& constants) {
    Parser p{text, 0, K, vars, constants};
    MultiPoly r = p.expr();
    p.skip();
    if (p.pos != text.size()) p.fail("trailing input");
    return r;
}

}  // namespace dp2

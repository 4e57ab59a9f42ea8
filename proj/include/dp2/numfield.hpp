#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dp2 {

using Rational = mpq_class;

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// Element of a radical tower in its power basis.  Coordinate index is mixed radix over the
// floors, the first floor least significant.
struct NFElem {
    FieldPtr field;
    std::vector<Rational> c;

    bool is_zero() const;
    bool is_rational() const;
    Rational rational_value() const;  // throws unless is_rational()
    std::string to_string() const;
};

struct Floor {
    int degree = 2;                  // t^degree = radicand
    std::vector<Rational> radicand;  // coordinates in the field below
    std::string name;
};

class NumberField {
public:
    static FieldPtr rationals();

    std::size_t degree() const { return degree_; }
    const std::vector<Floor>& floors() const { return floors_; }
    std::size_t floor_count() const { return floors_.size(); }
    // degree of the subfield generated by the first n floors
    std::size_t degree_below(std::size_t n) const;
    std::string describe() const;  // "i^2 = -1, zeta^2 = i"

    NFElem zero(const FieldPtr& self) const;
    NFElem from_rational(const FieldPtr& self, const Rational& q) const;
    NFElem generator(const FieldPtr& self, std::size_t floor) const;
    std::optional<NFElem> named(const FieldPtr& self, const std::string& name) const;

private:
    friend FieldPtr adjoin_root(const FieldPtr&, int, const NFElem&, const std::string&);
    std::vector<Floor> floors_;
    std::size_t degree_ = 1;
};

inline constexpr std::size_t kMaxTowerDegree = 16;

// base(t) with t^n = c.  Supported: n = 2 with x^2 - c irreducible over an all-quadratic tower
// (decided exactly by recursive square roots), n = 3 with c rational over a base whose degree
// is prime to 3 (decided by a rational cube test).  Throws on reducible or unsupported input.
FieldPtr adjoin_root(const FieldPtr& base, int n, const NFElem& c, const std::string& name);

NFElem nf(const FieldPtr& K, const Rational& q);
NFElem nf_gen(const FieldPtr& K, const std::string& name);

NFElem operator+(const NFElem& a, const NFElem& b);
NFElem operator-(const NFElem& a, const NFElem& b);
NFElem operator-(const NFElem& a);
NFElem operator*(const NFElem& a, const NFElem& b);
NFElem operator*(const NFElem& a, const Rational& q);
NFElem operator/(const NFElem& a, const NFElem& b);
bool operator==(const NFElem& a, const NFElem& b);
NFElem inverse(const NFElem& a);
NFElem pow(const NFElem& a, long e);

// exact square root in the field, if one exists (all-quadratic towers only)
std::optional<NFElem> sqrt_in_field(const NFElem& a);

// Coefficients of x with respect to the power basis of the upper floors over the subfield
// generated by the first `base_floors` floors; each coefficient is returned inside the full field.
std::vector<NFElem> coordinates_over(const NFElem& x, std::size_t base_floors);

// Field automorphism given by the images of the floor generators.
class FieldAutomorphism {
public:
    FieldAutomorphism(FieldPtr K, std::vector<NFElem> images);  // validates the relations
    NFElem operator()(const NFElem& x) const;
    const FieldPtr& field() const { return K_; }

private:
    FieldPtr K_;
    std::vector<NFElem> images_;
};

// Polynomial in named variables with number field coefficients, canonical sparse form.
struct MultiPoly {
    FieldPtr field;
    std::vector<std::string> vars;
    std::map<std::vector<int>, NFElem> terms;  // exponent vector -> nonzero coefficient

    static MultiPoly zero(FieldPtr K, std::vector<std::string> vars);
    static MultiPoly constant(FieldPtr K, std::vector<std::string> vars, const NFElem& c);
    static MultiPoly variable(FieldPtr K, std::vector<std::string> vars, const std::string& v);

    bool is_zero() const { return terms.empty(); }
    std::size_t var_index(const std::string& v) const;
    int degree_in(std::size_t var) const;
    int total_degree() const;
    bool has_rational_coefficients() const;
    std::string to_string() const;
    void add_term(const std::vector<int>& e, const NFElem& c);
};

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator-(const MultiPoly& a);
MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
MultiPoly operator*(const MultiPoly& a, const NFElem& c);
MultiPoly operator*(const MultiPoly& a, const Rational& q);
bool operator==(const MultiPoly& a, const MultiPoly& b);
MultiPoly pow(const MultiPoly& a, int e);

// Substitute polynomials (over the same field, in variables `target_vars`) for every variable.
MultiPoly compose(const MultiPoly& p, const std::vector<MultiPoly>& images);
// Rename / permute variables: new exponent j comes from old variable perm[j].
MultiPoly permute_variables(const MultiPoly& p, const std::vector<std::size_t>& perm);
MultiPoly apply_to_coefficients(const MultiPoly& p, const FieldAutomorphism& phi);
// Same polynomial viewed in another field that contains the coefficients (re-embedding by
// power-basis prefix: `target` must extend `p.field` by additional floors on top).
MultiPoly extend_field(const MultiPoly& p, const FieldPtr& target);

struct DivisionResult {
    MultiPoly quotient, remainder;
};
// Division by d whose leading part in `var` is c*var^k with c a nonzero constant; the remainder
// has degree < k in var.  The remainder is zero exactly when d divides p.
DivisionResult divide_by(const MultiPoly& p, const MultiPoly& d, const std::string& var);

// Parse "w*y^2 + 8*x^2*y*z - (1/2)*w" style expressions.  Identifiers are variables, floor
// generator names, or entries of `constants`.  Division is allowed by constants only.
MultiPoly parse_poly(const std::string& text, const FieldPtr& K, const std::vector<std::string>& vars,
                     const std::map<std::string, NFElem>& constants = {});

}  // namespace dp2

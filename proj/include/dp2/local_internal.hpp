#pragma once

#include "dp2/local.hpp"

#include <array>
#include <utility>
#include <vector>

// Helpers shared by the local analysis sources.
namespace dp2::detail {

i64 modp(i64 a, i64 m);
i64 mulmod(i64 a, i64 b, i64 m);
i64 powmod(i64 b, i64 e, i64 m);
i64 prime_power(long p, int k);  // throws CapacityError at 2^62
int valuation(i64 x, long p);
i64 inverse_mod(i64 a, i64 m);
bool padic_square(const Rational& q, long p);

// integer polynomial in (w,x,y,z)
struct IntPoly {
    std::vector<std::pair<std::array<int, 4>, mpz_class>> terms;
    std::array<int, 4> max_deg{0, 0, 0, 0};

    // q = scale * result, with primitive integer coefficients
    static IntPoly from(const MultiPoly& q, Rational& scale);
    i64 eval(const std::array<i64, 4>& pt, i64 M) const;
    double eval_real(const std::array<double, 4>& pt) const;
};

// the function g reduced to the polynomial H with (d, g) = (d, scale * H) wherever defined
struct PreparedFunction {
    IntPoly h;
    Rational scale;
};
PreparedFunction prepare(const RationalFunction& f);

}  // namespace dp2::detail

#pragma once

#include "dp2/errors.hpp"
#include "dp2/galois0.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dp2 {

using i64 = long long;

constexpr i64 kMaxCoefficient = 1000000000000000000LL;  // 1e18

bool is_prime_u64(std::uint64_t n);
// prime factorization of |n| (n != 0), primes ascending
std::vector<std::pair<i64, int>> factorize(i64 n);

// n^(1/deg) under the principal branch: prime exponents in quarters and phase mod 8
struct ExponentVector {
    std::map<i64, long> quarters;  // prime -> 4 * exponent
    int phase = 0;                 // argument in units of pi/4
};

ExponentVector exponent_vector(i64 n, int root_degree);

// a monomial (a^2)^s (b/a)^k (c/a)^m equal to q * sqrt2^eps * zeta^phi, q positive rational
struct KummerConstraint {
    int s = 0, k = 0, m = 0;
    int eps = 0;
    int phi = 0;
};

std::vector<KummerConstraint> constraints(i64 A, i64 B, i64 C);
bool satisfies(const GroupElement& g, const KummerConstraint& c);
Subgroup galois_group(i64 A, i64 B, i64 C);

void validate_coefficients(i64 A, i64 B, i64 C);

}  // namespace dp2

#include "dp2/kummer.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace dp2 {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    std::mt19937_64 rng(n);
    for (;;) {
        u64 c = rng() % (n - 1) + 1, x = rng() % n, y = x, d = 1;
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_rec(u64 n, std::map<i64, int>& out) {
    if (n == 1) return;
    if (is_prime_u64(n)) {
        ++out[static_cast<i64>(n)];
        return;
    }
    u64 d = pollard_rho(n);
    factor_rec(d, out);
    factor_rec(n / d, out);
}

int md(int a, int m) { return ((a % m) + m) % m; }

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while (d % 2 == 0) d /= 2, ++r;
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < r; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<std::pair<i64, int>> factorize(i64 n) {
    if (n == 0) throw std::invalid_argument("cannot factor 0");
    if (n > kMaxCoefficient || n < -kMaxCoefficient) throw CapacityError("coefficient exceeds 1e18");
    u64 v = static_cast<u64>(n < 0 ? -n : n);
    std::map<i64, int> f;
    // wheel-free trial division for the small primes, rho for the rest
    for (u64 p = 2; p < 1000 && p * p <= v; p += (p == 2 ? 1 : 2))
        while (v % p == 0) ++f[static_cast<i64>(p)], v /= p;
    factor_rec(v, f);
    return {f.begin(), f.end()};
}

ExponentVector exponent_vector(i64 n, int deg) {
    if (n == 0) throw std::invalid_argument("exponent_vector of 0");
    if (deg != 1 && deg != 2 && deg != 4) throw std::invalid_argument("root degree must be 1, 2 or 4");
    ExponentVector e;
    for (auto [p, k] : factorize(n)) e.quarters[p] = 4L * k / deg;
    e.phase = n < 0 ? 4 / deg : 0;
    return e;
}

void validate_coefficients(i64 A, i64 B, i64 C) {
    for (i64 x : {A, B, C}) {
        if (x == 0) throw std::invalid_argument("coefficients must be nonzero");
        if (x > kMaxCoefficient || x < -kMaxCoefficient) throw CapacityError("coefficient exceeds 1e18");
    }
}

std::vector<KummerConstraint> constraints(i64 A, i64 B, i64 C) {
    validate_coefficients(A, B, C);
    ExponentVector ea = exponent_vector(A, 4), eb = exponent_vector(B, 4), ec = exponent_vector(C, 4);
    std::vector<i64> primes;
    for (auto* e : {&ea, &eb, &ec})
        for (auto& [p, q] : e->quarters) primes.push_back(p);
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    auto q = [](const ExponentVector& e, i64 p) {
        auto it = e.quarters.find(p);
        return it == e.quarters.end() ? 0L : it->second;
    };
    std::vector<KummerConstraint> out;
    for (int s = 0; s < 2; ++s)
        for (int k = 0; k < 4; ++k)
            for (int m = 0; m < 4; ++m) {
                // (a^2)^s = a^(2s): quarters 2s * qa ... written as 4 * exponent
                bool ok = true;
                int eps = 0;
                for (i64 p : primes) {
                    long qa = q(ea, p), qb = q(eb, p), qc = q(ec, p);
                    long x4 = 2L * s * qa + k * (qb - qa) + m * (qc - qa);  // 4 * x_p
                    if (p == 2) {
                        if (x4 % 2 != 0) ok = false;
                        eps = static_cast<int>(((x4 / 2) % 2 + 2) % 2);
                    } else if (x4 % 4 != 0) {
                        ok = false;
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
                int phi = md(2 * s * ea.phase + k * (eb.phase - ea.phase) + m * (ec.phase - ea.phase), 8);
                out.push_back({s, k, m, eps, phi});
            }
    return out;
}

bool satisfies(const GroupElement& g, const KummerConstraint& c) {
    // g multiplies the monomial by (-1)^{s e_s} i^{k e_k + m e_m}; it must equal
    // the effect on q sqrt2^eps zeta^phi, namely sgn2(chi)^eps zeta^{(chi-1) phi}
    int lhs = md(4 * c.s * g.s + 2 * (c.k * g.k + c.m * g.m), 8);
    int rhs = md((c.eps && sqrt2_sign(g.chi) < 0 ? 4 : 0) + (g.chi - 1) * c.phi, 8);
    return lhs == rhs;
}

Subgroup galois_group(i64 A, i64 B, i64 C) {
    auto cs = constraints(A, B, C);
    ElementMask mask;
    for (int x = 0; x < 128; ++x) {
        GroupElement g = GroupElement::from_code(static_cast<std::uint8_t>(x));
        bool ok = std::all_of(cs.begin(), cs.end(), [&](const KummerConstraint& c) { return satisfies(g, c); });
        if (ok) mask.set(x);
    }
    Subgroup s = subgroup_from_mask(mask);
    // closure check: the solution set of the constraints must be a group
    for (auto& x : s.elements)
        for (auto& y : s.elements)
            if (!s.contains(x * y)) throw std::logic_error("Kummer constraint set is not closed under composition");
    return s;
}

}  // namespace dp2

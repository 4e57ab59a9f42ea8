#pragma once

#include "dp2/local.hpp"
#include "dp2/numfield.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

// Cyclic algebras of order 3 on diagonal cubic surfaces A x^3 + B y^3 + C z^3 + D t^3 = 0 over
// k = Q(theta), theta a primitive cube root of unity, with gamma^3 = AD/BC.
namespace dp2 {

struct CubicCoefficients {
    long A = 1, B = 1, C = 1, D = 1;
};

// Empty when none of A/B, ..., C/D, AB/CD, AC/BD, AD/BC is a rational cube; otherwise the first
// offending ratio.
std::optional<std::string> cubic_degenerate_ratio(const CubicCoefficients& c);

// k(gamma) as the tower sqrt(-3) ("r"), gamma ("gamma"), and theta = (-1 + r)/2 inside it.
struct CubicField {
    FieldPtr K;
    NFElem theta, gamma;
};
CubicField cubic_field(const CubicCoefficients& c);

// g0, g1, g2 with lambda, mu, nu kept as variables l, m, n (variables x, y, z, t, l, m, n).
std::array<MultiPoly, 3> cubic_g_symbolic(const CubicCoefficients& c, const CubicField& F);

// g0 (A x - A l z - B n gamma t) + g1 (-B n z - B m gamma t) + g2 (B y - B m z - B l gamma t)
// minus the cubic form, reduced modulo l^3 + (B/A) m^3 + (B/A)^2 n^3 - 3 (B/A) l m n + C/A.
MultiPoly cubic_column_residual(const CubicCoefficients& c, const CubicField& F);

// lambda^3 + (B/A) mu^3 + (B/A)^2 nu^3 - 3 (B/A) lambda mu nu
NFElem cubic_norm_form(const CubicCoefficients& c, const NFElem& l, const NFElem& m, const NFElem& n);

// Bounded search for lambda, mu, nu with norm form -C/A: first rational points (a : b : c : d) by
// increasing height up to bound, then lambda, mu, nu in Z[theta] with coordinates in [-3, 3].
std::optional<std::array<NFElem, 3>> cubic_norm_search(const CubicCoefficients& c, const CubicField& F, int bound);

struct CubicReport {
    CubicCoefficients coeffs;
    std::optional<std::string> degenerate;  // set when the genericity gate rejects the input
    bool column_identity = false;
    bool norm_found = false;
    std::array<std::string, 3> lambda_mu_nu;
    bool norm_verified = false;
    std::optional<MultiPoly> h;  // in k[x,y,z,t], not proportional to the cubic form
    std::string presentation;    // "r^3 = AD/BC, s^3 = h/x^3, s r = theta r s"
    std::vector<TranscriptEntry> transcript;
};

CubicReport cubic_pipeline(const CubicCoefficients& c, int search_bound);

}  // namespace dp2

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace dp2 {

using PicClass = std::array<long, 8>;

// Exceptional curve label.  Roots of unity are stored as exponents:
// delta = zeta^d with d odd mod 8 (zeta = exp(pi i/4)); alpha = i^al etc.
struct CurveLabel {
    enum Kind { Axis, Triple } kind = Axis;
    int axis = 0;  // 0 = x, 1 = y, 2 = z
    int d = 1;     // odd residue mod 8
    int s = 1;     // +1 / -1
    int al = 0, be = 0, ga = 0;  // exponents mod 4, canonical: al in {0,1}

    static CurveLabel axis_curve(int axis, int d, int s);
    static CurveLabel triple(int al, int be, int ga);  // canonicalizes mod mu_2

    std::size_t index() const;  // 0..55, axis curves first
    static CurveLabel from_index(std::size_t i);
    CurveLabel partner() const;
    std::string name() const;
    bool operator==(const CurveLabel& o) const { return index() == o.index(); }
};

constexpr std::size_t kCurveCount = 56;

const std::vector<CurveLabel>& all_curves();

struct PicLattice {
    std::array<long, 8> gram{-1, -1, -1, -1, -1, -1, -1, 1};  // diagonal
    PicClass anticanonical{-1, -1, -1, -1, -1, -1, -1, 3};
    std::array<PicClass, kCurveCount> class_table{};

    const PicClass& cls(const CurveLabel& l) const { return class_table[l.index()]; }
    long intersection(const PicClass& a, const PicClass& b) const;
    // index of the curve with the given class, or -1
    int find(const PicClass& c) const;
};

PicLattice build_lattice();
const PicLattice& lattice();  // shared immutable instance

long intersection(const PicClass& a, const PicClass& b);

struct LatticeReport {
    bool ok = true;
    std::size_t table_valid = 0;       // classes with D^2 = -1, D.(-K) = 1
    std::size_t brute_force_roots = 0;  // enumerated exceptional classes
    std::size_t matched = 0;            // table classes found among them
    std::vector<std::string> problems;
};

LatticeReport verify_lattice(const PicLattice& l);

// All D with D^2 = -1 and D.(-K) = 1.  Coordinates |n_i| <= 4 suffice: writing
// D = (-K)/2 + r with r orthogonal to K, r^2 = -3/2 and the form is negative
// definite on K-perp, which bounds every coordinate.
std::vector<PicClass> enumerate_exceptional_classes();

std::string class_to_string(const PicClass& c);

}  // namespace dp2

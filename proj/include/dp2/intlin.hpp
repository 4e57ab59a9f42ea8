#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dp2 {

using Int = mpz_class;
using IntVec = std::vector<Int>;

struct IntMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Int> a;  // row-major

    IntMatrix() = default;
    IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<IntVec>& rows, std::size_t cols);

    Int& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    IntMatrix transpose() const;
    bool is_zero() const;
    bool operator==(const IntMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
IntVec operator*(const IntMatrix& x, const IntVec& v);
Int determinant(const IntMatrix& m);  // Bareiss, square only

struct SmithDecomposition {
    IntMatrix S, U, V;        // U * M * V = S
    IntMatrix U_inv, V_inv;
    std::vector<Int> divisors;  // nonzero diagonal entries d1 | d2 | ...
    std::size_t rank = 0;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

// Sparse row with small coefficients, used for the large coboundary matrices.
using SparseRow = std::vector<std::pair<std::size_t, long>>;

// Lattice basis of {x in Z^cols : row . x = 0 for every row}.
std::vector<IntVec> kernel_basis(std::size_t cols, const std::vector<SparseRow>& rows);
std::vector<IntVec> kernel_basis(const IntMatrix& m);

struct KernelSolve {
    std::vector<IntVec> kernel;
    std::optional<IntVec> solution;
    bool rational_solvable = false;
};

KernelSolve kernel_and_solve(const IntMatrix& m, const std::optional<IntVec>& b = std::nullopt);
KernelSolve kernel_and_solve(std::size_t cols, const std::vector<SparseRow>& rows,
                             const std::optional<IntVec>& b);

struct AbelianGroupType {
    std::vector<long> divisors;  // each >= 2, d_i | d_{i+1}
    std::size_t rank = 0;

    static AbelianGroupType from_invariants(const std::vector<Int>& diag, std::size_t free_rank);
    bool trivial() const { return divisors.empty() && rank == 0; }
    long order() const;  // torsion order, only meaningful when rank == 0
    std::string to_string() const;  // "Z/4 + Z/2", "(1)", "Z^2"
    bool operator==(const AbelianGroupType& o) const = default;
    auto operator<=>(const AbelianGroupType& o) const = default;
};

struct Subquotient {
    AbelianGroupType type;
    // one representative in the ambient space for each cyclic factor,
    // torsion factors first (in divisor order), then free ones
    std::vector<IntVec> generators;
    std::vector<long> orders;  // 0 for free generators
};

// Structure of span(Z) / span(B).  Throws if B is not inside span(Z).
Subquotient subquotient_structure(const std::vector<IntVec>& Z, const std::vector<IntVec>& B,
                                  std::size_t dim);

// Echelon basis of the lattice spanned by vecs and reduction of a vector modulo it.
std::vector<IntVec> echelon_basis(const std::vector<IntVec>& vecs, std::size_t dim);
IntVec reduce_mod(const IntVec& v, const std::vector<IntVec>& echelon);
bool in_lattice(const IntVec& v, const std::vector<IntVec>& echelon);

IntVec to_intvec(const std::vector<long>& v);
std::string vec_to_string(const IntVec& v);

}  // namespace dp2

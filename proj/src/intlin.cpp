#include "dp2/intlin.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace dp2 {

namespace {
inline int cmpabs(const Int& a, const Int& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }
}  // namespace

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows = init.size();
    cols = rows ? init.begin()->size() : 0;
    a.reserve(rows * cols);
    for (auto& r : init) {
        if (r.size() != cols) throw std::invalid_argument("ragged matrix literal");
        for (long x : r) a.emplace_back(x);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVec>& rs, std::size_t c) {
    IntMatrix m(rs.size(), c);
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (rs[i].size() != c) throw std::invalid_argument("row length mismatch");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = rs[i][j];
    }
    return m;
}

IntVec IntMatrix::row(std::size_t i) const { return IntVec(a.begin() + i * cols, a.begin() + (i + 1) * cols); }

IntVec IntMatrix::col(std::size_t j) const {
    IntVec v(rows);
    for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
    return v;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols, rows);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a.begin(), a.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix product dimension mismatch");
    IntMatrix r(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) {
            const Int& xv = x(i, k);
            if (sgn(xv) == 0) continue;
            for (std::size_t j = 0; j < y.cols; ++j) r(i, j) += xv * y(k, j);
        }
    return r;
}

IntVec operator*(const IntMatrix& x, const IntVec& v) {
    if (x.cols != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
    IntVec r(x.rows);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k) r[i] += x(i, k) * v[k];
    return r;
}

Int determinant(const IntMatrix& m0) {
    if (m0.rows != m0.cols) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = m0.rows;
    if (n == 0) return 1;
    IntMatrix m = m0;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (sgn(m(k, k)) == 0) {
            std::size_t p = k + 1;
            while (p < n && sgn(m(p, k)) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = t;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

namespace {

struct SnfWork {
    IntMatrix S, U, Ui, V, Vi;

    void row_addmul(std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t c = 0; c < S.cols; ++c) S(i, c) += q * S(j, c);
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) += q * U(j, c);
        for (std::size_t r = 0; r < Ui.rows; ++r) Ui(r, j) -= q * Ui(r, i);
    }
    void row_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < S.cols; ++c) std::swap(S(i, c), S(j, c));
        for (std::size_t c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
        for (std::size_t r = 0; r < Ui.rows; ++r) std::swap(Ui(r, i), Ui(r, j));
    }
    void row_neg(std::size_t i) {
        for (std::size_t c = 0; c < S.cols; ++c) S(i, c) = -S(i, c);
        for (std::size_t c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
        for (std::size_t r = 0; r < Ui.rows; ++r) Ui(r, i) = -Ui(r, i);
    }
    void col_addmul(std::size_t i, std::size_t j, const Int& q) {
        for (std::size_t r = 0; r < S.rows; ++r) S(r, i) += q * S(r, j);
        for (std::size_t r = 0; r < V.rows; ++r) V(r, i) += q * V(r, j);
        for (std::size_t c = 0; c < Vi.cols; ++c) Vi(j, c) -= q * Vi(i, c);
    }
    void col_swap(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < S.rows; ++r) std::swap(S(r, i), S(r, j));
        for (std::size_t r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
        for (std::size_t c = 0; c < Vi.cols; ++c) std::swap(Vi(i, c), Vi(j, c));
    }
};

bool smaller_nonzero(const Int& x, const Int& best, bool have) {
    if (sgn(x) == 0) return false;
    return !have || cmpabs(x, best) < 0;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    SnfWork w{m, IntMatrix::identity(m.rows), IntMatrix::identity(m.rows), IntMatrix::identity(m.cols),
              IntMatrix::identity(m.cols)};
    IntMatrix& S = w.S;
    std::size_t lim = std::min(m.rows, m.cols), t = 0;
    for (; t < lim; ++t) {
        bool have = false;
        std::size_t pi = 0, pj = 0;
        for (std::size_t i = t; i < S.rows; ++i)
            for (std::size_t j = t; j < S.cols; ++j)
                if (smaller_nonzero(S(i, j), have ? S(pi, pj) : S(i, j), have)) {
                    pi = i, pj = j, have = true;
                }
        if (!have) break;
        w.row_swap(t, pi);
        w.col_swap(t, pj);
        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < S.rows; ++i) {
                if (sgn(S(i, t)) == 0) continue;
                Int q = S(i, t) / S(t, t);
                if (sgn(q) != 0) w.row_addmul(i, t, -q);
                if (sgn(S(i, t)) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < S.cols; ++j) {
                if (sgn(S(t, j)) == 0) continue;
                Int q = S(t, j) / S(t, t);
                if (sgn(q) != 0) w.col_addmul(j, t, -q);
                if (sgn(S(t, j)) != 0) clean = false;
            }
            if (!clean) {
                // move the smallest remainder into the pivot position
                std::size_t bi = t, bj = t;
                for (std::size_t i = t + 1; i < S.rows; ++i)
                    if (sgn(S(i, t)) != 0 && cmpabs(S(i, t), S(bi, bj)) < 0) bi = i, bj = t;
                for (std::size_t j = t + 1; j < S.cols; ++j)
                    if (sgn(S(t, j)) != 0 && cmpabs(S(t, j), S(bi, bj)) < 0) bi = t, bj = j;
                w.row_swap(t, bi);
                w.col_swap(t, bj);
                continue;
            }
            bool fixed = false;
            for (std::size_t i = t + 1; i < S.rows && !fixed; ++i)
                for (std::size_t j = t + 1; j < S.cols; ++j) {
                    Int r = S(i, j) % S(t, t);
                    if (sgn(r) != 0) {
                        w.row_addmul(t, i, 1);
                        fixed = true;
                        break;
                    }
                }
            if (!fixed) break;
        }
        if (sgn(S(t, t)) < 0) w.row_neg(t);
    }
    SmithDecomposition d;
    d.rank = t;
    for (std::size_t i = 0; i < t; ++i) d.divisors.push_back(S(i, i));
    d.S = std::move(w.S);
    d.U = std::move(w.U);
    d.U_inv = std::move(w.Ui);
    d.V = std::move(w.V);
    d.V_inv = std::move(w.Vi);
    return d;
}

namespace {

inline void addmul_long(Int& acc, const Int& x, long c) {
    if (c >= 0)
        mpz_addmul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(c));
    else
        mpz_submul_ui(acc.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(-c));
}

// Column-basis elimination: K holds a lattice basis (as columns) of the solution
// space of the rows processed so far.  Each new row is a functional; unimodular
// column operations bring its values to (g,0,...,0) and the g-column is dropped.
// extra[i] is an optional coefficient on an additional trailing coordinate.
std::vector<IntVec> incremental_kernel(std::size_t n, const std::vector<SparseRow>& rows,
                                       const std::vector<Int>* extra) {
    std::size_t dim = n + (extra ? 1 : 0);
    std::vector<IntVec> K;
    K.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        IntVec e(dim);
        e[j] = 1;
        K.push_back(std::move(e));
    }
    std::vector<Int> t;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const SparseRow& row = rows[r];
        t.assign(K.size(), Int(0));
        std::vector<std::size_t> nz;
        for (std::size_t j = 0; j < K.size(); ++j) {
            Int& acc = t[j];
            for (auto& [c, v] : row) addmul_long(acc, K[j][c], v);
            if (extra && sgn((*extra)[r]) != 0) acc += (*extra)[r] * K[j][n];
            if (sgn(acc) != 0) nz.push_back(j);
        }
        if (nz.empty()) continue;
        while (nz.size() > 1) {
            std::size_t p = nz[0];
            for (std::size_t j : nz)
                if (cmpabs(t[j], t[p]) < 0) p = j;
            std::vector<std::size_t> still;
            for (std::size_t j : nz) {
                if (j == p) continue;
                Int q = t[j] / t[p];
                if (sgn(q) != 0) {
                    t[j] -= q * t[p];
                    IntVec& kj = K[j];
                    const IntVec& kp = K[p];
                    for (std::size_t c = 0; c < dim; ++c)
                        if (sgn(kp[c]) != 0) kj[c] -= q * kp[c];
                }
                if (sgn(t[j]) != 0) still.push_back(j);
            }
            still.push_back(p);
            std::sort(still.begin(), still.end());
            nz = std::move(still);
        }
        K.erase(K.begin() + static_cast<std::ptrdiff_t>(nz[0]));
    }
    return K;
}

}  // namespace

std::vector<IntVec> kernel_basis(std::size_t cols, const std::vector<SparseRow>& rows) {
    return incremental_kernel(cols, rows, nullptr);
}

std::vector<IntVec> kernel_basis(const IntMatrix& m) {
    SmithDecomposition d = smith_normal_form(m);
    std::vector<IntVec> k;
    for (std::size_t j = d.rank; j < m.cols; ++j) k.push_back(d.V.col(j));
    return k;
}

KernelSolve kernel_and_solve(const IntMatrix& m, const std::optional<IntVec>& b) {
    SmithDecomposition d = smith_normal_form(m);
    KernelSolve out;
    for (std::size_t j = d.rank; j < m.cols; ++j) out.kernel.push_back(d.V.col(j));
    if (!b) return out;
    if (b->size() != m.rows) throw std::invalid_argument("right-hand side length mismatch");
    IntVec y = d.U * *b;
    out.rational_solvable = true;
    for (std::size_t i = d.rank; i < m.rows; ++i)
        if (sgn(y[i]) != 0) out.rational_solvable = false;
    if (!out.rational_solvable) return out;
    IntVec z(m.cols);
    for (std::size_t i = 0; i < d.rank; ++i) {
        if (!mpz_divisible_p(y[i].get_mpz_t(), d.divisors[i].get_mpz_t())) return out;
        z[i] = y[i] / d.divisors[i];
    }
    out.solution = d.V * z;
    return out;
}

KernelSolve kernel_and_solve(std::size_t cols, const std::vector<SparseRow>& rows, const std::optional<IntVec>& b) {
    KernelSolve out;
    if (!b) {
        out.kernel = incremental_kernel(cols, rows, nullptr);
        return out;
    }
    if (b->size() != rows.size()) throw std::invalid_argument("right-hand side length mismatch");
    std::vector<Int> negb(b->size());
    for (std::size_t i = 0; i < b->size(); ++i) negb[i] = -(*b)[i];
    std::vector<IntVec> K = incremental_kernel(cols, rows, &negb);
    // eliminate the trailing coordinate
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < K.size(); ++j)
        if (sgn(K[j][cols]) != 0) nz.push_back(j);
    std::size_t piv = K.size();
    if (!nz.empty()) {
        out.rational_solvable = true;
        while (nz.size() > 1) {
            std::size_t p = nz[0];
            for (std::size_t j : nz)
                if (cmpabs(K[j][cols], K[p][cols]) < 0) p = j;
            std::vector<std::size_t> still;
            for (std::size_t j : nz) {
                if (j == p) continue;
                Int q = K[j][cols] / K[p][cols];
                for (std::size_t c = 0; c <= cols; ++c) K[j][c] -= q * K[p][c];
                if (sgn(K[j][cols]) != 0) still.push_back(j);
            }
            still.push_back(p);
            nz = std::move(still);
        }
        piv = nz[0];
    }
    for (std::size_t j = 0; j < K.size(); ++j) {
        if (j == piv) continue;
        out.kernel.emplace_back(K[j].begin(), K[j].begin() + static_cast<std::ptrdiff_t>(cols));
    }
    if (piv < K.size() && abs(K[piv][cols]) == 1) {
        IntVec x(K[piv].begin(), K[piv].begin() + static_cast<std::ptrdiff_t>(cols));
        if (K[piv][cols] < 0)
            for (auto& e : x) e = -e;
        out.solution = std::move(x);
    }
    return out;
}

AbelianGroupType AbelianGroupType::from_invariants(const std::vector<Int>& diag, std::size_t free_rank) {
    AbelianGroupType t;
    t.rank = free_rank;
    for (const Int& d : diag) {
        Int ad = abs(d);
        if (ad == 0) {
            ++t.rank;
            continue;
        }
        if (ad == 1) continue;
        if (!ad.fits_slong_p()) throw std::overflow_error("torsion divisor too large");
        t.divisors.push_back(ad.get_si());
    }
    // SNF already gives a divisibility chain; re-derive it if the input was arbitrary
    bool chain = true;
    for (std::size_t i = 1; i < t.divisors.size(); ++i)
        if (t.divisors[i] % t.divisors[i - 1] != 0) chain = false;
    if (!chain) {
        IntMatrix m(t.divisors.size(), t.divisors.size());
        for (std::size_t i = 0; i < t.divisors.size(); ++i) m(i, i) = t.divisors[i];
        auto snf = smith_normal_form(m);
        std::size_t r = t.rank;
        return from_invariants(snf.divisors, r);
    }
    return t;
}

long AbelianGroupType::order() const {
    long o = 1;
    for (long d : divisors) o *= d;
    return o;
}

std::string AbelianGroupType::to_string() const {
    if (trivial()) return "(1)";
    std::vector<std::string> parts;
    // largest factor first, matching the way such groups are usually written
    for (auto it = divisors.rbegin(); it != divisors.rend(); ++it) parts.push_back("Z/" + std::to_string(*it));
    if (rank == 1) parts.insert(parts.begin(), "Z");
    if (rank > 1) parts.insert(parts.begin(), "Z^" + std::to_string(rank));
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " + " : "") + parts[i];
    return s;
}

Subquotient subquotient_structure(const std::vector<IntVec>& Z, const std::vector<IntVec>& B, std::size_t dim) {
    Subquotient out;
    // basis W of span(Z): rows d_i * (row i of V^{-1})
    std::vector<IntVec> W;
    SmithDecomposition zs;
    if (!Z.empty()) {
        zs = smith_normal_form(IntMatrix::from_rows(Z, dim));
        for (std::size_t i = 0; i < zs.rank; ++i) {
            IntVec r = zs.V_inv.row(i);
            for (auto& e : r) e *= zs.divisors[i];
            W.push_back(std::move(r));
        }
    }
    std::size_t r = W.size();
    // coordinates of B in W: b*V = c_i d_i e_i
    std::vector<IntVec> coords;
    for (const IntVec& b : B) {
        if (b.size() != dim) throw std::invalid_argument("subquotient: vector length mismatch");
        IntVec c(r);
        bool zero = std::all_of(b.begin(), b.end(), [](const Int& x) { return sgn(x) == 0; });
        if (!zero) {
            if (r == 0) throw std::invalid_argument("subquotient: B not contained in span(Z)");
            IntVec bv(dim);
            for (std::size_t j = 0; j < dim; ++j)
                for (std::size_t k = 0; k < dim; ++k) bv[j] += b[k] * zs.V(k, j);
            for (std::size_t j = r; j < dim; ++j)
                if (sgn(bv[j]) != 0) throw std::invalid_argument("subquotient: B not contained in span(Z)");
            for (std::size_t i = 0; i < r; ++i) {
                if (!mpz_divisible_p(bv[i].get_mpz_t(), zs.divisors[i].get_mpz_t()))
                    throw std::invalid_argument("subquotient: B not contained in span(Z)");
                c[i] = bv[i] / zs.divisors[i];
            }
        }
        coords.push_back(std::move(c));
    }
    std::vector<Int> diag;
    IntMatrix basis_change = IntMatrix::identity(r);
    std::size_t rel_rank = 0;
    if (!coords.empty() && r > 0) {
        SmithDecomposition rs = smith_normal_form(IntMatrix::from_rows(coords, r));
        diag = rs.divisors;
        rel_rank = rs.rank;
        basis_change = rs.V_inv;
    }
    auto ambient = [&](std::size_t i) {
        IntVec v(dim);
        for (std::size_t k = 0; k < r; ++k) {
            const Int& f = basis_change(i, k);
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < dim; ++j) v[j] += f * W[k][j];
        }
        return v;
    };
    for (std::size_t i = 0; i < rel_rank; ++i) {
        if (diag[i] == 1) continue;
        out.generators.push_back(ambient(i));
        out.orders.push_back(diag[i].get_si());
    }
    for (std::size_t i = rel_rank; i < r; ++i) {
        out.generators.push_back(ambient(i));
        out.orders.push_back(0);
    }
    out.type = AbelianGroupType::from_invariants(diag, r - rel_rank);
    return out;
}

std::vector<IntVec> echelon_basis(const std::vector<IntVec>& vecs, std::size_t dim) {
    std::vector<IntVec> rows;  // sorted by pivot column, pivots positive
    auto lead = [&](const IntVec& v) {
        for (std::size_t j = 0; j < dim; ++j)
            if (sgn(v[j]) != 0) return j;
        return dim;
    };
    for (IntVec v : vecs) {
        if (v.size() != dim) throw std::invalid_argument("echelon: vector length mismatch");
        for (;;) {
            std::size_t c = lead(v);
            if (c == dim) break;
            auto it = std::find_if(rows.begin(), rows.end(), [&](const IntVec& p) { return lead(p) >= c; });
            if (it == rows.end() || lead(*it) != c) {
                if (v[c] < 0)
                    for (auto& e : v) e = -e;
                rows.insert(it, v);
                break;
            }
            IntVec& p = *it;
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p[c].get_mpz_t(), v[c].get_mpz_t());
            Int pa = p[c] / g, va = v[c] / g;
            IntVec np(dim), nv(dim);
            for (std::size_t j = 0; j < dim; ++j) {
                np[j] = s * p[j] + t * v[j];
                nv[j] = pa * v[j] - va * p[j];
            }
            if (np[c] < 0)
                for (auto& e : np) e = -e;
            p = std::move(np);
            v = std::move(nv);
        }
    }
    // reduce entries above pivots
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::size_t c = lead(rows[i]);
        for (std::size_t k = 0; k < i; ++k) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), rows[k][c].get_mpz_t(), rows[i][c].get_mpz_t());
            if (sgn(q) != 0)
                for (std::size_t j = 0; j < dim; ++j) rows[k][j] -= q * rows[i][j];
        }
    }
    return rows;
}

IntVec reduce_mod(const IntVec& v0, const std::vector<IntVec>& ech) {
    IntVec v = v0;
    for (const IntVec& p : ech) {
        std::size_t c = 0;
        while (sgn(p[c]) == 0) ++c;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), v[c].get_mpz_t(), p[c].get_mpz_t());
        if (sgn(q) != 0)
            for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * p[j];
    }
    return v;
}

bool in_lattice(const IntVec& v, const std::vector<IntVec>& ech) {
    IntVec r = reduce_mod(v, ech);
    return std::all_of(r.begin(), r.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntVec to_intvec(const std::vector<long>& v) {
    IntVec r;
    r.reserve(v.size());
    for (long x : v) r.emplace_back(x);
    return r;
}

std::string vec_to_string(const IntVec& v) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i].get_str();
    os << ")";
    return os.str();
}

}  // namespace dp2

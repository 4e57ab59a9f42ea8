#include "dp2/cohomology.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <sstream>

namespace dp2 {

namespace {

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw CapacityError("coefficient does not fit in a machine word");
    return x.get_si();
}

IntMatrix from_mat8(const Mat8& m) {
    IntMatrix r(8, 8);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) r(i, j) = m[i][j];
    return r;
}

IntMatrix add_scaled(IntMatrix a, const IntMatrix& b, long s) {
    for (std::size_t i = 0; i < a.a.size(); ++i) a.a[i] += s * b.a[i];
    return a;
}

// append the rows of a dense block matrix row (dim rows) into sparse form
void append_sparse(std::vector<SparseRow>& rows, const IntMatrix& block_row) {
    for (std::size_t i = 0; i < block_row.rows; ++i) {
        SparseRow r;
        for (std::size_t j = 0; j < block_row.cols; ++j)
            if (sgn(block_row(i, j)) != 0) r.emplace_back(j, to_long(block_row(i, j)));
        rows.push_back(std::move(r));
    }
}

void add_block(IntMatrix& big, std::size_t r0, std::size_t c0, const IntMatrix& blk, long s = 1) {
    for (std::size_t i = 0; i < blk.rows; ++i)
        for (std::size_t j = 0; j < blk.cols; ++j) big(r0 + i, c0 + j) += s * blk(i, j);
}

std::vector<IntVec> split_blocks(const IntVec& v, std::size_t dim) {
    std::vector<IntVec> out;
    for (std::size_t i = 0; i + dim <= v.size(); i += dim)
        out.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i + dim));
    return out;
}

IntVec concat(const std::vector<IntVec>& vs) {
    IntVec out;
    for (auto& v : vs) out.insert(out.end(), v.begin(), v.end());
    return out;
}

IntVec vec_add(IntVec a, const IntVec& b, long s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

std::vector<long> small_primes_of(std::size_t n) {
    std::vector<long> ps;
    for (long p = 2; static_cast<std::size_t>(p * p) <= n; ++p)
        if (n % static_cast<std::size_t>(p) == 0) {
            ps.push_back(p);
            while (n % static_cast<std::size_t>(p) == 0) n /= static_cast<std::size_t>(p);
        }
    if (n > 1) ps.push_back(static_cast<long>(n));
    return ps;
}

std::vector<std::size_t> closure_of(const GModule& m, std::vector<std::size_t> seed) {
    std::vector<char> in(m.order(), 0);
    std::vector<std::size_t> out{0};
    in[0] = 1;
    for (std::size_t s : seed)
        if (!in[s]) in[s] = 1, out.push_back(s);
    for (std::size_t i = 0; i < out.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j)
            for (std::size_t p : {m.mul(out[i], out[j]), m.mul(out[j], out[i])})
                if (!in[p]) in[p] = 1, out.push_back(p);
    std::sort(out.begin(), out.end());
    return out;
}

// greedy generating set of the subgroup with the given elements
std::vector<std::size_t> generating_set(const GModule& m, const std::vector<std::size_t>& elems) {
    std::vector<std::size_t> gens, span{0};
    std::vector<char> in(m.order(), 0);
    in[0] = 1;
    // prefer elements of large order so the sets stay short
    std::vector<std::size_t> cand(elems);
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return m.element_order(a) > m.element_order(b); });
    for (std::size_t x : cand) {
        if (in[x]) continue;
        gens.push_back(x);
        span = closure_of(m, gens);
        std::fill(in.begin(), in.end(), 0);
        for (std::size_t s : span) in[s] = 1;
    }
    return gens;
}

}  // namespace

// ---------------------------------------------------------------------------------------------
// GModule

std::size_t GModule::power(std::size_t g, long e) const {
    std::size_t base = e < 0 ? inverse[g] : g;
    long k = e < 0 ? -e : e;
    std::size_t r = 0;
    while (k--) r = mul(r, base);
    return r;
}

std::size_t GModule::element_order(std::size_t g) const {
    std::size_t x = g, n = 1;
    while (x != 0) x = mul(x, g), ++n;
    return n;
}

IntVec GModule::act(std::size_t g, const IntVec& m) const { return mats[g] * m; }

std::optional<std::size_t> GModule::index_of(const GroupElement& g) const {
    for (std::size_t i = 0; i < g0_elements.size(); ++i)
        if (g0_elements[i] == g) return i;
    return std::nullopt;
}

std::string GModule::element_name(std::size_t g) const {
    if (g < g0_elements.size()) return g0_elements[g].to_string();
    return "g" + std::to_string(g);
}

GModule GModule::from_table(std::vector<std::vector<std::size_t>> table, std::vector<IntMatrix> mats,
                            std::vector<std::size_t> generators) {
    GModule m;
    std::size_t n = table.size();
    if (n == 0 || mats.size() != n) throw std::invalid_argument("group table and matrices disagree in size");
    m.dim = mats[0].rows;
    m.table = std::move(table);
    m.mats = std::move(mats);
    m.generators = std::move(generators);
    for (std::size_t x = 0; x < n; ++x)
        if (m.table[0][x] != x || m.table[x][0] != x) throw InvariantError("element 0 is not the identity");
    m.inverse.assign(n, n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y)
            if (m.table[x][y] == 0) m.inverse[x] = y;
    for (std::size_t x = 0; x < n; ++x)
        if (m.inverse[x] == n) throw InvariantError("element without inverse");
    if (!(m.mats[0] == IntMatrix::identity(m.dim))) throw InvariantError("identity does not act trivially");
    for (std::size_t g : m.generators)
        for (std::size_t x = 0; x < n; ++x)
            if (!(m.mats[g] * m.mats[x] == m.mats[m.table[g][x]]))
                throw InvariantError("matrices do not define a homomorphism");
    if (closure_of(m, m.generators).size() != n) throw InvariantError("generators do not generate the group");
    return m;
}

GModule GModule::from_subgroup(const Subgroup& s) {
    std::size_t n = s.order();
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    std::vector<int> pos(128, -1);
    for (std::size_t i = 0; i < n; ++i) pos[s.elements[i].code()] = static_cast<int>(i);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            table[i][j] = static_cast<std::size_t>(pos[(s.elements[i] * s.elements[j]).code()]);
    std::vector<IntMatrix> mats;
    for (auto& g : s.elements) mats.push_back(from_mat8(matrix_of(g)));
    std::vector<std::size_t> gens;
    for (auto& g : small_generating_set(s)) gens.push_back(static_cast<std::size_t>(pos[g.code()]));
    GModule m = from_table(std::move(table), std::move(mats), std::move(gens));
    m.g0_elements = s.elements;
    return m;
}

GModule GModule::abelian(const std::vector<std::size_t>& orders, const std::vector<IntMatrix>& gen_mats) {
    if (orders.size() != gen_mats.size() || orders.empty()) throw std::invalid_argument("orders and matrices differ");
    std::size_t n = 1;
    for (auto o : orders) n *= o;
    std::size_t k = orders.size(), dim = gen_mats[0].rows;
    auto digits = [&](std::size_t x) {
        std::vector<std::size_t> d(k);
        for (std::size_t i = 0; i < k; ++i) d[i] = x % orders[i], x /= orders[i];
        return d;
    };
    auto index = [&](const std::vector<std::size_t>& d) {
        std::size_t x = 0;
        for (std::size_t i = k; i-- > 0;) x = x * orders[i] + d[i] % orders[i];
        return x;
    };
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            auto a = digits(x), b = digits(y);
            for (std::size_t i = 0; i < k; ++i) a[i] += b[i];
            table[x][y] = index(a);
        }
    std::vector<IntMatrix> mats(n);
    for (std::size_t x = 0; x < n; ++x) {
        auto d = digits(x);
        IntMatrix r = IntMatrix::identity(dim);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t e = 0; e < d[i]; ++e) r = r * gen_mats[i];
        mats[x] = r;
    }
    std::vector<std::size_t> gens;
    std::size_t stride = 1;
    for (std::size_t i = 0; i < k; ++i) gens.push_back(stride), stride *= orders[i];
    // the homomorphism check also needs g^order = 1 and commutation, both implied by
    // mats[g] * mats[x] == mats[g x] over all x
    return from_table(std::move(table), std::move(mats), std::move(gens));
}

GModule GModule::dihedral(std::size_t n, const IntMatrix& g, const IntMatrix& h) {
    std::size_t N = 2 * n;
    std::vector<std::vector<std::size_t>> table(N, std::vector<std::size_t>(N));
    for (std::size_t x = 0; x < N; ++x)
        for (std::size_t y = 0; y < N; ++y) {
            std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
            std::size_t e = j ? (i + n - k) % n : (i + k) % n;
            table[x][y] = e + n * ((j + l) % 2);
        }
    std::vector<IntMatrix> mats(N);
    IntMatrix gi = IntMatrix::identity(g.rows);
    for (std::size_t i = 0; i < n; ++i) {
        mats[i] = gi;
        mats[i + n] = gi * h;
        gi = gi * g;
    }
    return from_table(std::move(table), std::move(mats), {1 % N, n});
}

GModule GModule::restrict_to(const std::vector<std::size_t>& elements, std::vector<std::size_t>* old_index) const {
    if (elements.empty() || elements[0] != 0) throw std::invalid_argument("subgroup list must start with the identity");
    std::vector<long> pos(order(), -1);
    for (std::size_t i = 0; i < elements.size(); ++i) pos[elements[i]] = static_cast<long>(i);
    std::size_t n = elements.size();
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            long p = pos[mul(elements[i], elements[j])];
            if (p < 0) throw std::invalid_argument("element set is not closed");
            t[i][j] = static_cast<std::size_t>(p);
        }
    std::vector<IntMatrix> ms;
    for (auto e : elements) ms.push_back(mats[e]);
    std::vector<std::size_t> gens;
    for (auto g : generating_set(*this, elements)) gens.push_back(static_cast<std::size_t>(pos[g]));
    GModule r = from_table(std::move(t), std::move(ms), std::move(gens));
    if (!g0_elements.empty())
        for (auto e : elements) r.g0_elements.push_back(g0_elements[e]);
    if (old_index) *old_index = elements;
    return r;
}

GModule GModule::on_sublattice(const std::vector<IntVec>& basis) const {
    std::size_t r = basis.size();
    IntMatrix B(dim, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < dim; ++i) B(i, j) = basis[j][i];
    SmithDecomposition sd = smith_normal_form(B);
    if (sd.rank != r) throw std::invalid_argument("sublattice basis is not independent");
    std::vector<IntMatrix> ms;
    for (std::size_t g = 0; g < order(); ++g) {
        IntMatrix X(r, r);
        for (std::size_t j = 0; j < r; ++j) {
            IntVec y = sd.U * act(g, basis[j]);
            IntVec z(r);
            for (std::size_t i = 0; i < r; ++i) {
                if (!mpz_divisible_p(y[i].get_mpz_t(), sd.divisors[i].get_mpz_t()))
                    throw InvariantError("sublattice is not stable");
                z[i] = y[i] / sd.divisors[i];
            }
            for (std::size_t i = r; i < dim; ++i)
                if (sgn(y[i]) != 0) throw InvariantError("sublattice is not stable");
            IntVec x = sd.V * z;
            for (std::size_t i = 0; i < r; ++i) X(i, j) = x[i];
        }
        ms.push_back(std::move(X));
    }
    GModule m2 = from_table(table, std::move(ms), generators);
    m2.g0_elements = g0_elements;
    return m2;
}

std::vector<std::size_t> generated_subgroup(const GModule& m, const std::vector<std::size_t>& gens) {
    return closure_of(m, gens);
}

// ---------------------------------------------------------------------------------------------
// H^0

H0Result invariants_of(const GModule& m, const std::vector<std::size_t>& elements) {
    auto gens = generating_set(m, elements);
    IntMatrix stacked(gens.size() * m.dim, m.dim);
    for (std::size_t t = 0; t < gens.size(); ++t)
        add_block(stacked, t * m.dim, 0, add_scaled(m.mats[gens[t]], IntMatrix::identity(m.dim), -1));
    H0Result r;
    r.basis = gens.empty() ? std::vector<IntVec>{} : kernel_basis(stacked);
    if (gens.empty())
        for (std::size_t j = 0; j < m.dim; ++j) {
            IntVec e(m.dim);
            e[j] = 1;
            r.basis.push_back(e);
        }
    r.rank = r.basis.size();
    return r;
}

H0Result invariants_H0(const GModule& m) {
    std::vector<std::size_t> all(m.order());
    std::iota(all.begin(), all.end(), 0);
    return invariants_of(m, all);
}

// ---------------------------------------------------------------------------------------------
// polycyclic presentation

std::size_t evaluate_word(const GModule& m, const PcPresentation& p, const std::vector<std::size_t>& word) {
    std::size_t x = 0;
    for (std::size_t t : word) x = m.mul(x, p.gens[t]);
    return x;
}

PcPresentation pc_presentation(const GModule& m) {
    std::size_t n = m.order();
    PcPresentation p;
    // composition series G = G_0 > G_1 > ... > 1 with prime indices
    std::vector<std::vector<std::size_t>> series;
    std::vector<std::size_t> cur(n);
    std::iota(cur.begin(), cur.end(), 0);
    series.push_back(cur);
    while (cur.size() > 1) {
        std::vector<std::size_t> comms;
        for (auto x : cur)
            for (auto y : cur) comms.push_back(m.mul(m.mul(x, y), m.mul(m.inverse[x], m.inverse[y])));
        auto derived = closure_of(m, comms);
        if (derived.size() == cur.size()) throw InvariantError("group is not solvable");
        std::vector<std::size_t> next;
        std::size_t chosen = 0;
        long prime = 0;
        for (long q : small_primes_of(cur.size() / derived.size())) {
            std::vector<std::size_t> seed = derived;
            for (auto x : cur) seed.push_back(m.power(x, q));
            auto P = closure_of(m, seed);
            if (P.size() == cur.size()) continue;
            // greedy basis of the elementary abelian quotient cur / P
            std::vector<std::size_t> span = P, basis;
            while (span.size() < cur.size()) {
                std::vector<char> in(n, 0);
                for (auto s : span) in[s] = 1;
                std::size_t b = *std::find_if(cur.begin(), cur.end(), [&](std::size_t x) { return !in[x]; });
                basis.push_back(b);
                if (span.size() * static_cast<std::size_t>(q) == cur.size()) {
                    next = span;
                    chosen = b;
                    break;
                }
                auto seed2 = span;
                seed2.push_back(b);
                span = closure_of(m, seed2);
            }
            prime = q;
            break;
        }
        if (prime == 0) throw InvariantError("no normal subgroup of prime index found");
        p.gens.push_back(chosen);
        p.relative_orders.push_back(prime);
        cur = next;
        series.push_back(cur);
    }
    std::size_t r = p.gens.size();
    std::size_t prod = 1;
    for (long q : p.relative_orders) prod *= static_cast<std::size_t>(q);
    if (prod != n) throw InvariantError("relative orders do not multiply to the group order");
    // normal forms, built from the bottom of the series
    p.exponents.assign(n, std::vector<long>(r, 0));
    std::vector<char> known(n, 0);
    known[0] = 1;
    std::vector<std::size_t> level{0};
    for (std::size_t i = r; i-- > 0;) {
        std::vector<std::size_t> bigger;
        std::size_t ai = 0;
        for (long e = 0; e < p.relative_orders[i]; ++e) {
            for (auto x : level) {
                std::size_t y = m.mul(ai, x);
                if (e > 0) {
                    if (known[y]) throw InvariantError("normal form collision");
                    known[y] = 1;
                    p.exponents[y] = p.exponents[x];
                    p.exponents[y][i] = e;
                }
                bigger.push_back(y);
            }
            ai = m.mul(ai, p.gens[i]);
        }
        level = bigger;
    }
    if (level.size() != n) throw InvariantError("normal forms do not cover the group");
    auto nf_word = [&](std::size_t x) {
        std::vector<std::size_t> w;
        for (std::size_t i = 0; i < r; ++i)
            for (long e = 0; e < p.exponents[x][i]; ++e) w.push_back(i);
        return w;
    };
    for (std::size_t i = 0; i < r; ++i) {
        PcPresentation::Relation rel;
        rel.lhs.assign(static_cast<std::size_t>(p.relative_orders[i]), i);
        rel.rhs = nf_word(m.power(p.gens[i], p.relative_orders[i]));
        p.relations.push_back(rel);
        for (std::size_t j = i + 1; j < r; ++j) {
            PcPresentation::Relation c;
            c.lhs = {j, i};
            std::size_t conj = m.mul(m.inverse[p.gens[i]], m.mul(p.gens[j], p.gens[i]));
            c.rhs = {i};
            for (auto t : nf_word(conj)) c.rhs.push_back(t);
            p.relations.push_back(c);
        }
    }
    for (auto& rel : p.relations)
        if (evaluate_word(m, p, rel.lhs) != evaluate_word(m, p, rel.rhs))
            throw InvariantError("presentation relation fails in the group");
    return p;
}

namespace {

// linear map (gen values) -> f(word) as a dim x (r*dim) block row
IntMatrix word_functional(const GModule& m, const PcPresentation& p, const std::vector<std::size_t>& word) {
    std::size_t r = p.gens.size(), d = m.dim;
    IntMatrix out(d, r * d);
    std::size_t prefix = 0;
    for (std::size_t t : word) {
        add_block(out, 0, t * d, m.mats[prefix]);
        prefix = m.mul(prefix, p.gens[t]);
    }
    return out;
}

CohomologyResult assemble(const std::vector<IntVec>& Z, const std::vector<IntVec>& B, std::size_t cols,
                          std::size_t dim, const std::string& backend, const std::vector<std::size_t>& positions) {
    Subquotient sq = subquotient_structure(Z, B, cols);
    CohomologyResult res;
    res.group = sq.type;
    res.orders = sq.orders;
    res.backend = backend;
    res.coboundaries = B;
    auto ech = echelon_basis(B, cols);
    for (auto& g : sq.generators) {
        Cocycle c;
        c.backend = backend;
        c.positions = positions;
        c.values = split_blocks(reduce_mod(g, ech), dim);
        res.representatives.push_back(std::move(c));
    }
    return res;
}

}  // namespace

CohomologyResult h1_presentation(const GModule& m) {
    PcPresentation p = pc_presentation(m);
    std::size_t r = p.gens.size(), d = m.dim, cols = r * d;
    std::vector<SparseRow> rows;
    for (auto& rel : p.relations) {
        IntMatrix f = add_scaled(word_functional(m, p, rel.lhs), word_functional(m, p, rel.rhs), -1);
        append_sparse(rows, f);
    }
    auto Z = kernel_basis(cols, rows);
    std::vector<IntVec> B;
    for (std::size_t j = 0; j < d; ++j) {
        IntVec b(cols);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < d; ++k) b[i * d + k] = m.mats[p.gens[i]](k, j) - (k == j ? 1 : 0);
        B.push_back(std::move(b));
    }
    return assemble(Z, B, cols, d, "presentation", p.gens);
}

std::vector<IntVec> expand_presentation_cocycle(const GModule& m, const PcPresentation& p,
                                                const std::vector<IntVec>& gen_values) {
    std::vector<IntVec> f(m.order(), IntVec(m.dim));
    for (std::size_t x = 0; x < m.order(); ++x) {
        std::size_t prefix = 0;
        IntVec acc(m.dim);
        for (std::size_t i = 0; i < p.gens.size(); ++i)
            for (long e = 0; e < p.exponents[x][i]; ++e) {
                acc = vec_add(acc, m.act(prefix, gen_values[i]));
                prefix = m.mul(prefix, p.gens[i]);
            }
        f[x] = acc;
    }
    return f;
}

// ---------------------------------------------------------------------------------------------
// standard complex

CohomologyResult h1_standard(const GModule& m, std::size_t max_order) {
    std::size_t n = m.order(), d = m.dim;
    if (n > max_order)
        throw CapacityError("standard resolution refused for |G| = " + std::to_string(n) + " (limit " +
                            std::to_string(max_order) + ")");
    std::size_t cols = n * d;
    std::vector<SparseRow> rows;
    std::vector<std::map<std::size_t, long>> acc(d);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t h = 0; h < n; ++h) {
            // g f(h) - f(gh) + f(g) = 0
            for (auto& a : acc) a.clear();
            std::size_t gh = m.mul(g, h);
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < d; ++j)
                    if (sgn(m.mats[g](i, j)) != 0) acc[i][h * d + j] += to_long(m.mats[g](i, j));
                acc[i][gh * d + i] -= 1;
                acc[i][g * d + i] += 1;
            }
            for (auto& a : acc) {
                SparseRow r;
                for (auto [c, v] : a)
                    if (v != 0) r.emplace_back(c, v);
                if (!r.empty()) rows.push_back(std::move(r));
            }
        }
    auto Z = kernel_basis(cols, rows);
    std::vector<IntVec> B;
    for (std::size_t j = 0; j < d; ++j) {
        IntVec b(cols);
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t k = 0; k < d; ++k) b[g * d + k] = m.mats[g](k, j) - (k == j ? 1 : 0);
        B.push_back(std::move(b));
    }
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    return assemble(Z, B, cols, d, "standard", all);
}

bool is_standard_cocycle(const GModule& m, const std::vector<IntVec>& f) {
    if (f.size() != m.order()) return false;
    for (std::size_t g = 0; g < m.order(); ++g)
        for (std::size_t h = 0; h < m.order(); ++h)
            if (vec_add(m.act(g, f[h]), f[g]) != f[m.mul(g, h)]) return false;
    return true;
}

bool is_standard_coboundary(const GModule& m, const std::vector<IntVec>& f) {
    if (f.size() != m.order()) return false;
    std::size_t n = m.order(), d = m.dim;
    IntMatrix A(n * d, d);
    for (std::size_t g = 0; g < n; ++g) add_block(A, g * d, 0, add_scaled(m.mats[g], IntMatrix::identity(d), -1));
    auto ks = kernel_and_solve(A, concat(f));
    return ks.solution.has_value();
}

std::vector<long> class_coordinates_standard(const GModule& m, const CohomologyResult& res,
                                             const std::vector<IntVec>& f) {
    std::size_t k = res.representatives.size();
    if (k == 0) return {};
    const auto& pos = res.representatives[0].positions;
    IntVec z;
    for (auto x : pos) z.insert(z.end(), f[x].begin(), f[x].end());
    std::size_t len = z.size();
    IntMatrix A(len, k + res.coboundaries.size());
    for (std::size_t i = 0; i < k; ++i) {
        IntVec g = concat(res.representatives[i].values);
        for (std::size_t r = 0; r < len; ++r) A(r, i) = g[r];
    }
    for (std::size_t j = 0; j < res.coboundaries.size(); ++j)
        for (std::size_t r = 0; r < len; ++r) A(r, k + j) = res.coboundaries[j][r];
    auto ks = kernel_and_solve(A, z);
    if (!ks.solution) throw InvariantError("cochain is not a cocycle of the expected shape");
    (void)m;
    std::vector<long> c(k);
    for (std::size_t i = 0; i < k; ++i) {
        Int v = (*ks.solution)[i];
        if (res.orders[i] > 0) {
            Int o = res.orders[i];
            v = ((v % o) + o) % o;
        }
        c[i] = to_long(v);
    }
    return c;
}

// ---------------------------------------------------------------------------------------------
// group ring and small resolutions

GroupRingElem ring_mul(const GModule& m, const GroupRingElem& x, const GroupRingElem& y) {
    GroupRingElem r;
    for (auto [a, ca] : x)
        for (auto [b, cb] : y) r[m.mul(a, b)] += ca * cb;
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

GroupRingElem ring_add(const GroupRingElem& x, const GroupRingElem& y, long sy) {
    GroupRingElem r = x;
    for (auto [b, cb] : y) r[b] += sy * cb;
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

GroupRingElem partial_norm(const GModule& m, std::size_t g, long i) {
    GroupRingElem r;
    std::size_t x = 0;
    for (long t = 0; t < i; ++t) {
        r[x] += 1;
        x = m.mul(x, g);
    }
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
    return r;
}

GroupRingElem norm_element(const GModule& m, std::size_t g) {
    return partial_norm(m, g, static_cast<long>(m.element_order(g)));
}

GroupRingElem delta_element(std::size_t g) { return ring_add(GroupRingElem{{0, 1}}, GroupRingElem{{g, 1}}, -1); }

IntMatrix ring_matrix(const GModule& m, const GroupRingElem& x) {
    IntMatrix r(m.dim, m.dim);
    for (auto [g, c] : x) r = add_scaled(r, m.mats[g], c);
    return r;
}

std::string to_string(ResolutionKind k) {
    switch (k) {
        case ResolutionKind::cyclic: return "cyclic";
        case ResolutionKind::bicyclic: return "bicyclic";
        case ResolutionKind::tricyclic: return "tricyclic";
        default: return "dihedral";
    }
}

namespace {

GroupRingElem neg(const GroupRingElem& x) { return ring_add({}, x, -1); }
GroupRingElem elem(std::size_t g) { return GroupRingElem{{g, 1}}; }

// element index -> exponents (i,j,k) for an abelian product decomposition
std::optional<std::vector<std::array<long, 3>>> abelian_coordinates(const GModule& m,
                                                                     const std::vector<std::size_t>& gens,
                                                                     const std::vector<long>& orders) {
    std::size_t n = m.order();
    std::size_t prod = 1;
    for (long o : orders) prod *= static_cast<std::size_t>(o);
    if (prod != n) return std::nullopt;
    for (auto a : gens)
        for (auto b : gens)
            if (m.mul(a, b) != m.mul(b, a)) return std::nullopt;
    std::vector<std::array<long, 3>> coords(n, {-1, -1, -1});
    std::array<long, 3> o{1, 1, 1};
    for (std::size_t t = 0; t < orders.size(); ++t) o[t] = orders[t];
    std::array<std::size_t, 3> g{0, 0, 0};
    for (std::size_t t = 0; t < gens.size(); ++t) g[t] = gens[t];
    for (long i = 0; i < o[0]; ++i)
        for (long j = 0; j < o[1]; ++j)
            for (long k = 0; k < o[2]; ++k) {
                std::size_t x = m.mul(m.power(g[0], i), m.mul(m.power(g[1], j), m.power(g[2], k)));
                if (coords[x][0] >= 0) return std::nullopt;
                coords[x] = {i, j, k};
            }
    return coords;
}

ResolutionComplex build(const GModule& m, ResolutionKind kind, const std::vector<std::size_t>& gens, bool full_norm) {
    ResolutionComplex r;
    r.kind = kind;
    r.gens = gens;
    std::size_t n = m.order();
    for (auto g : gens) r.orders.push_back(static_cast<long>(m.element_order(g)));
    auto D = [&](std::size_t i) { return delta_element(gens[i]); };
    auto N = [&](std::size_t i) { return norm_element(m, gens[i]); };
    auto PN = [&](std::size_t i, long e) { return partial_norm(m, gens[i], e); };
    r.sigma1.assign(n, {});
    if (kind == ResolutionKind::dihedral) {
        if (gens.size() != 2) throw std::invalid_argument("dihedral resolution needs two generators");
        std::size_t g = gens[0], h = gens[1];
        long nn = r.orders[0];
        if (static_cast<std::size_t>(2 * nn) != n || m.mul(h, h) != 0 || m.mul(m.mul(g, h), m.mul(g, h)) != 0)
            throw std::invalid_argument("generators do not satisfy the dihedral relations");
        std::size_t gh = m.mul(g, h);
        r.d1 = {{D(0)}, {D(1)}};
        GroupRingElem Ngh = norm_element(m, gh);
        r.d2 = {{N(0), {}}, {{}, N(1)}, {Ngh, neg(Ngh)}};
        std::vector<char> seen(n, 0);
        for (long i = 0; i < nn; ++i) {
            std::size_t gi = m.power(g, i);
            std::size_t gih = m.mul(gi, h);
            if (seen[gi] || seen[gih]) throw std::invalid_argument("generators do not give a dihedral group");
            seen[gi] = seen[gih] = 1;
            r.sigma1[gi] = {neg(PN(0, i)), {}};
            r.sigma1[gih] = {neg(PN(0, i)), neg(elem(gi))};
        }
        return r;
    }
    std::size_t k = kind == ResolutionKind::cyclic ? 1 : kind == ResolutionKind::bicyclic ? 2 : 3;
    if (gens.size() != k) throw std::invalid_argument(to_string(kind) + " resolution needs " + std::to_string(k) +
                                                      " generators");
    auto coords = abelian_coordinates(m, gens, r.orders);
    if (!coords) throw std::invalid_argument("generators do not give a direct product decomposition");
    if (k == 1) {
        r.d1 = {{D(0)}};
        r.d2 = {{N(0)}};
    } else if (k == 2) {
        r.d1 = {{D(0)}, {D(1)}};
        r.d2 = {{N(0), {}}, {D(1), neg(D(0))}, {{}, N(1)}};
    } else {
        r.d1 = {{D(0)}, {D(1)}, {D(2)}};
        r.d2 = {{N(0), {}, {}},        {D(1), neg(D(0)), {}}, {{}, N(1), {}},
                {D(2), {}, neg(D(0))}, {{}, D(2), neg(D(1))}, {{}, {}, N(2)}};
    }
    for (std::size_t x = 0; x < n; ++x) {
        auto [i, j, l] = (*coords)[x];
        std::vector<GroupRingElem> s;
        s.push_back(neg(PN(0, i)));
        if (k >= 2) s.push_back(neg(ring_mul(m, elem(m.power(gens[0], i)), PN(1, j))));
        if (k >= 3) {
            std::size_t gihj = m.mul(m.power(gens[0], i), m.power(gens[1], j));
            s.push_back(neg(ring_mul(m, elem(gihj), PN(2, full_norm ? l + 1 : l))));
        }
        r.sigma1[x] = s;
    }
    return r;
}

}  // namespace

ResolutionComplex build_resolution(const GModule& m, ResolutionKind kind, const std::vector<std::size_t>& gens) {
    return build(m, kind, gens, false);
}

ResolutionComplex build_resolution_variant_full_norm(const GModule& m, const std::vector<std::size_t>& gens) {
    return build(m, ResolutionKind::tricyclic, gens, true);
}

bool boundaries_compose_to_zero(const GModule& m, const ResolutionComplex& r) {
    for (auto& col : r.d2) {
        GroupRingElem s;
        for (std::size_t i = 0; i < col.size(); ++i) s = ring_add(s, ring_mul(m, col[i], r.d1[i][0]));
        if (!s.empty()) return false;
    }
    return true;
}

bool sigma1_is_chain_map(const GModule& m, const ResolutionComplex& r) {
    for (std::size_t x = 0; x < m.order(); ++x) {
        GroupRingElem s;
        for (std::size_t i = 0; i < r.sigma1[x].size(); ++i) s = ring_add(s, ring_mul(m, r.sigma1[x][i], r.d1[i][0]));
        GroupRingElem expect = x == 0 ? GroupRingElem{} : GroupRingElem{{x, 1}, {0, -1}};
        if (s != expect) return false;
    }
    return true;
}

IntMatrix dual_d0(const GModule& m, const ResolutionComplex& r) {
    std::size_t k1 = r.d1.size(), d = m.dim;
    IntMatrix out(k1 * d, d);
    for (std::size_t i = 0; i < k1; ++i) add_block(out, i * d, 0, ring_matrix(m, r.d1[i][0]));
    return out;
}

IntMatrix dual_d1(const GModule& m, const ResolutionComplex& r) {
    std::size_t k1 = r.d1.size(), k2 = r.d2.size(), d = m.dim;
    IntMatrix out(k2 * d, k1 * d);
    for (std::size_t j = 0; j < k2; ++j)
        for (std::size_t i = 0; i < k1; ++i) add_block(out, j * d, i * d, ring_matrix(m, r.d2[j][i]));
    return out;
}

CohomologyResult h1_via_resolution(const GModule& m, const ResolutionComplex& r) {
    IntMatrix D0 = dual_d0(m, r), D1 = dual_d1(m, r);
    std::size_t cols = D1.cols;
    auto Z = kernel_basis(D1);
    std::vector<IntVec> B;
    for (std::size_t j = 0; j < D0.cols; ++j) B.push_back(D0.col(j));
    return assemble(Z, B, cols, m.dim, to_string(r.kind), {});
}

bool is_resolution_cocycle(const GModule& m, const ResolutionComplex& r, const std::vector<IntVec>& v) {
    IntVec y = dual_d1(m, r) * concat(v);
    return std::all_of(y.begin(), y.end(), [](const Int& x) { return sgn(x) == 0; });
}

bool is_resolution_coboundary(const GModule& m, const ResolutionComplex& r, const std::vector<IntVec>& v) {
    return kernel_and_solve(dual_d0(m, r), concat(v)).solution.has_value();
}

std::vector<IntVec> resolution_to_standard(const GModule& m, const ResolutionComplex& r,
                                           const std::vector<IntVec>& v) {
    std::vector<IntVec> f(m.order(), IntVec(m.dim));
    for (std::size_t x = 0; x < m.order(); ++x)
        for (std::size_t i = 0; i < r.sigma1[x].size(); ++i) f[x] = vec_add(f[x], ring_matrix(m, r.sigma1[x][i]) * v[i]);
    return f;
}

std::optional<ResolutionComplex> detect_resolution(const GModule& m) {
    std::size_t n = m.order();
    if (n == 1) return std::nullopt;
    std::vector<std::size_t> byorder(n - 1);
    std::iota(byorder.begin(), byorder.end(), 1);
    std::stable_sort(byorder.begin(), byorder.end(),
                     [&](std::size_t a, std::size_t b) { return m.element_order(a) > m.element_order(b); });
    bool abelian = true;
    for (std::size_t a = 0; a < n && abelian; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (m.mul(a, b) != m.mul(b, a)) {
                abelian = false;
                break;
            }
    if (abelian) {
        if (m.element_order(byorder[0]) == n) return build(m, ResolutionKind::cyclic, {byorder[0]}, false);
        for (auto g : byorder)
            for (auto h : byorder) {
                auto og = static_cast<long>(m.element_order(g)), oh = static_cast<long>(m.element_order(h));
                if (static_cast<std::size_t>(og * oh) != n || oh > og) continue;
                if (abelian_coordinates(m, {g, h}, {og, oh})) return build(m, ResolutionKind::bicyclic, {g, h}, false);
            }
        for (auto g : byorder)
            for (auto h : byorder) {
                auto og = static_cast<long>(m.element_order(g)), oh = static_cast<long>(m.element_order(h));
                if (oh > og || n % static_cast<std::size_t>(og * oh) != 0) continue;
                for (auto u : byorder) {
                    auto ou = static_cast<long>(m.element_order(u));
                    if (ou > oh || static_cast<std::size_t>(og * oh * ou) != n) continue;
                    if (abelian_coordinates(m, {g, h, u}, {og, oh, ou}))
                        return build(m, ResolutionKind::tricyclic, {g, h, u}, false);
                }
            }
        return std::nullopt;
    }
    if (n % 2 != 0) return std::nullopt;
    for (auto g : byorder) {
        if (m.element_order(g) * 2 != n) continue;
        for (auto h : byorder) {
            if (m.element_order(h) != 2) continue;
            std::size_t gh = m.mul(g, h);
            if (m.mul(gh, gh) != 0) continue;
            bool outside = true;
            for (std::size_t x = 0, i = 0; i < n / 2; ++i, x = m.mul(x, g))
                if (x == h) outside = false;
            if (outside) return build(m, ResolutionKind::dihedral, {g, h}, false);
        }
    }
    return std::nullopt;
}

}  // namespace dp2

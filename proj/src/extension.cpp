#include "dp2/cohomology.hpp"

#include <algorithm>
#include <numeric>

namespace dp2 {

namespace {

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw CapacityError("coefficient does not fit in a machine word");
    return x.get_si();
}

IntVec vec_add(IntVec a, const IntVec& b, long s = 1) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
    return a;
}

bool is_zero_vec(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return sgn(x) == 0; });
}

IntVec concat(const std::vector<IntVec>& vs) {
    IntVec out;
    for (auto& v : vs) out.insert(out.end(), v.begin(), v.end());
    return out;
}

// independent cyclic generators (orders descending) with product of orders |X|
std::optional<std::vector<std::size_t>> cyclic_decomposition(const GModule& m, const std::vector<std::size_t>& X,
                                                             std::size_t max_factors) {
    std::size_t n = X.size();
    for (auto a : X)
        for (auto b : X)
            if (m.mul(a, b) != m.mul(b, a)) return std::nullopt;
    if (n == 1) return std::vector<std::size_t>{};
    std::vector<std::size_t> cand(X.begin() + 1, X.end());
    std::stable_sort(cand.begin(), cand.end(),
                     [&](std::size_t a, std::size_t b) { return m.element_order(a) > m.element_order(b); });
    std::vector<std::size_t> ords(m.order(), 0);
    for (auto x : cand) ords[x] = m.element_order(x);
    std::vector<char> in(m.order(), 0);
    for (auto x : X) in[x] = 1;
    auto injective = [&](const std::vector<std::size_t>& gens) {
        std::vector<char> seen(m.order(), 0);
        std::vector<std::size_t> cur{0};
        seen[0] = 1;
        for (auto g : gens) {
            std::vector<std::size_t> next;
            for (auto c : cur) {
                std::size_t x = c;
                for (std::size_t e = 0; e < ords[g]; ++e) {
                    if (e > 0) {
                        if (seen[x]) return false;
                        seen[x] = 1;
                    }
                    next.push_back(x);
                    x = m.mul(x, g);
                }
            }
            cur = std::move(next);
        }
        return true;
    };
    if (ords[cand[0]] == n) return std::vector<std::size_t>{cand[0]};
    if (max_factors < 2) return std::nullopt;
    for (auto g : cand)
        for (auto h : cand)
            if (ords[h] <= ords[g] && ords[g] * ords[h] == n && injective({g, h})) return std::vector<std::size_t>{g, h};
    if (max_factors < 3) return std::nullopt;
    for (auto g : cand)
        for (auto h : cand) {
            if (ords[h] > ords[g] || n % (ords[g] * ords[h]) != 0) continue;
            for (auto u : cand)
                if (ords[u] <= ords[h] && ords[g] * ords[h] * ords[u] == n && injective({g, h, u}))
                    return std::vector<std::size_t>{g, h, u};
        }
    return std::nullopt;
}

// index-2 subgroups, each as a sorted element list
std::vector<std::vector<std::size_t>> index2_subgroups(const GModule& m) {
    std::size_t n = m.order();
    std::vector<std::size_t> squares;
    for (std::size_t x = 0; x < n; ++x) squares.push_back(m.mul(x, x));
    auto P = generated_subgroup(m, squares);
    std::vector<std::size_t> basis, span = P;
    std::vector<long> coord(n, -1);  // bitmask coordinates in G / P
    for (auto p : P) coord[p] = 0;
    while (span.size() < n) {
        std::size_t b = 0;
        for (std::size_t x = 0; x < n; ++x)
            if (coord[x] < 0) {
                b = x;
                break;
            }
        long bit = 1L << basis.size();
        basis.push_back(b);
        std::vector<std::size_t> added;
        for (auto s : span) {
            std::size_t y = m.mul(s, b);
            coord[y] = coord[s] | bit;
            added.push_back(y);
        }
        span.insert(span.end(), added.begin(), added.end());
    }
    std::vector<std::vector<std::size_t>> out;
    std::size_t t = basis.size();
    for (long c = 1; c < (1L << t); ++c) {
        std::vector<std::size_t> K;
        for (std::size_t x = 0; x < n; ++x)
            if (__builtin_popcountl(static_cast<unsigned long>(coord[x] & c)) % 2 == 0) K.push_back(x);
        out.push_back(std::move(K));
    }
    return out;
}

}  // namespace

// ---------------------------------------------------------------------------------------------

std::optional<ExtensionData> find_split_extension(const GModule& m) {
    if (m.g0_elements.empty()) return std::nullopt;
    ElementMask gm;
    for (auto& g : m.g0_elements) gm.set(g.code());
    std::vector<const Subgroup*> inside;
    for (auto& s : all_subgroups())
        if ((s.mask & ~gm).none()) inside.push_back(&s);
    auto to_idx = [&](const Subgroup& s) {
        std::vector<std::size_t> v;
        for (auto& g : s.elements) v.push_back(*m.index_of(g));
        std::sort(v.begin(), v.end());
        return v;
    };
    for (auto it = inside.rbegin(); it != inside.rend(); ++it) {
        const Subgroup& N = **it;
        if (!N.abelian()) continue;
        bool normal = true;
        for (auto& x : m.g0_elements) {
            for (auto& y : N.elements)
                if (!N.contains(x * y * x.inverse())) {
                    normal = false;
                    break;
                }
            if (!normal) break;
        }
        if (!normal) continue;
        auto hdec = cyclic_decomposition(m, to_idx(N), 3);
        if (!hdec) continue;
        for (auto* K : inside) {
            if (N.order() * K->order() != m.order() || (N.mask & K->mask).count() != 1) continue;
            auto qdec = cyclic_decomposition(m, to_idx(*K), 2);
            if (!qdec) continue;
            return ExtensionData{*hdec, *qdec};
        }
    }
    return std::nullopt;
}

ExtensionChase::ExtensionChase(const GModule& m, const ExtensionData& ext) : m_(m) {
    h_elems_ = generated_subgroup(m, ext.h_generators);
    s_elems_ = generated_subgroup(m, ext.q_generators);
    std::size_t n = m.order();
    if (h_elems_.size() * s_elems_.size() != n) throw std::invalid_argument("|H| * |Q| differs from |G|");
    h_pos_.assign(n, -1);
    s_pos_.assign(n, -1);
    for (std::size_t i = 0; i < h_elems_.size(); ++i) h_pos_[h_elems_[i]] = static_cast<long>(i);
    for (std::size_t i = 0; i < s_elems_.size(); ++i) s_pos_[s_elems_[i]] = static_cast<long>(i);
    for (auto a : h_elems_)
        for (auto b : h_elems_)
            if (m.mul(a, b) != m.mul(b, a)) throw std::invalid_argument("H is not abelian");
    for (auto a : s_elems_)
        for (auto b : s_elems_)
            if (m.mul(a, b) != m.mul(b, a)) throw std::invalid_argument("the complement is not abelian");
    for (std::size_t g = 0; g < n; ++g)
        for (auto h : h_elems_)
            if (h_pos_[m.mul(m.mul(g, h), m.inverse[g])] < 0) throw std::invalid_argument("H is not normal");
    split_h_.assign(n, n);
    split_q_.assign(n, n);
    for (std::size_t i = 0; i < h_elems_.size(); ++i)
        for (std::size_t j = 0; j < s_elems_.size(); ++j) {
            std::size_t g = m.mul(h_elems_[i], s_elems_[j]);
            if (split_h_[g] != n) throw std::invalid_argument("H and the complement intersect");
            split_h_[g] = i;
            split_q_[g] = j;
        }
    q_gens_ = ext.q_generators;
    if (q_gens_.empty() || q_gens_.size() > 2) throw std::invalid_argument("the quotient must be cyclic or bicyclic");
    for (auto q : q_gens_) q_orders_.push_back(static_cast<long>(m.element_order(q)));
    long prod = 1;
    for (long o : q_orders_) prod *= o;
    if (static_cast<std::size_t>(prod) != s_elems_.size())
        throw std::invalid_argument("complement generators are not independent");
    h_mod_ = m.restrict_to(h_elems_);
    mh_basis_ = invariants_of(m, h_elems_).basis;
}

IntVec ExtensionChase::eval0(const Cochain0& phi, std::size_t g) const {
    return m_.act(h_elems_[split_h_[g]], phi[split_q_[g]]);
}

ExtensionChase::Cochain0 ExtensionChase::act0(std::size_t qt, const Cochain0& phi) const {
    Cochain0 out(s_elems_.size());
    std::size_t qi = m_.inverse[qt];
    for (std::size_t j = 0; j < s_elems_.size(); ++j) out[j] = m_.act(qt, eval0(phi, m_.mul(qi, s_elems_[j])));
    return out;
}

ExtensionChase::Cochain1 ExtensionChase::act1(std::size_t qt, const Cochain1& psi) const {
    std::size_t nq = s_elems_.size(), nh = h_elems_.size();
    Cochain1 out(nq * nh * nq);
    std::size_t qi = m_.inverse[qt];
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nh; ++b)
            for (std::size_t c = 0; c < nq; ++c) {
                std::size_t g0 = m_.mul(qi, s_elems_[a]);
                std::size_t g1 = m_.mul(qi, m_.mul(h_elems_[b], s_elems_[c]));
                // Psi(g0, g1) with g0 = h q0 and h^{-1} g1 = h'' q1
                std::size_t h = h_elems_[split_h_[g0]];
                std::size_t q0 = split_q_[g0];
                std::size_t rest = m_.mul(m_.inverse[h], g1);
                IntVec val = m_.act(h, psi[idx1(q0, split_h_[rest], split_q_[rest])]);
                out[idx1(a, b, c)] = m_.act(qt, val);
            }
    return out;
}

ExtensionChase::Cochain1 ExtensionChase::lift(const std::vector<IntVec>& f) const {
    std::size_t nq = s_elems_.size(), nh = h_elems_.size();
    Cochain1 out(nq * nh * nq);
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nh; ++b)
            for (std::size_t c = 0; c < nq; ++c) out[idx1(a, b, c)] = f[b];
    return out;
}

std::vector<ExtensionChase::Cochain1> ExtensionChase::horizontal1(const Cochain1& psi) const {
    std::vector<Cochain1> out;
    for (auto q : q_gens_) {
        Cochain1 t = act1(q, psi);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = vec_add(psi[i], t[i], -1);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ExtensionChase::Cochain0> ExtensionChase::horizontal0(const std::vector<Cochain0>& v0) const {
    auto apply_norm = [&](std::size_t q, long ord, const Cochain0& phi) {
        Cochain0 acc = phi, cur = phi;
        for (long e = 1; e < ord; ++e) {
            cur = act0(q, cur);
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = vec_add(acc[i], cur[i]);
        }
        return acc;
    };
    auto apply_delta = [&](std::size_t q, const Cochain0& phi) {
        Cochain0 t = act0(q, phi);
        for (std::size_t i = 0; i < t.size(); ++i) t[i] = vec_add(phi[i], t[i], -1);
        return t;
    };
    if (q_gens_.size() == 1) return {apply_norm(q_gens_[0], q_orders_[0], v0.at(0))};
    Cochain0 mid = apply_delta(q_gens_[1], v0.at(0));
    Cochain0 d2 = apply_delta(q_gens_[0], v0.at(1));
    for (std::size_t i = 0; i < mid.size(); ++i) mid[i] = vec_add(mid[i], d2[i], -1);
    return {apply_norm(q_gens_[0], q_orders_[0], v0[0]), mid, apply_norm(q_gens_[1], q_orders_[1], v0[1])};
}

ExtensionChase::Cochain1 ExtensionChase::vertical(const Cochain0& phi) const {
    std::size_t nq = s_elems_.size(), nh = h_elems_.size();
    Cochain1 out(nq * nh * nq);
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t b = 0; b < nh; ++b)
            for (std::size_t c = 0; c < nq; ++c)
                out[idx1(a, b, c)] = vec_add(m_.act(h_elems_[b], phi[c]), phi[a], -1);
    return out;
}

std::optional<ExtensionChase::Cochain0> ExtensionChase::solve_vertical(const Cochain1& v) const {
    std::size_t nq = s_elems_.size(), nh = h_elems_.size(), d = m_.dim;
    std::vector<SparseRow> rows;
    IntVec b;
    for (std::size_t a = 0; a < nq; ++a)
        for (std::size_t hb = 0; hb < nh; ++hb)
            for (std::size_t c = 0; c < nq; ++c) {
                const IntMatrix& M = m_.mats[h_elems_[hb]];
                for (std::size_t i = 0; i < d; ++i) {
                    std::map<std::size_t, long> acc;
                    for (std::size_t j = 0; j < d; ++j)
                        if (sgn(M(i, j)) != 0) acc[c * d + j] += to_long(M(i, j));
                    acc[a * d + i] -= 1;
                    SparseRow r;
                    for (auto [k, val] : acc)
                        if (val != 0) r.emplace_back(k, val);
                    rows.push_back(std::move(r));
                    b.push_back(v[idx1(a, hb, c)][i]);
                }
            }
    auto ks = kernel_and_solve(nq * d, rows, b);
    if (!ks.solution) return std::nullopt;
    Cochain0 phi(nq);
    for (std::size_t q = 0; q < nq; ++q)
        phi[q] = IntVec(ks.solution->begin() + static_cast<std::ptrdiff_t>(q * d),
                        ks.solution->begin() + static_cast<std::ptrdiff_t>((q + 1) * d));
    Cochain1 check = vertical(phi);
    if (check != v) throw InvariantError("vertical solve produced a wrong preimage");
    return phi;
}

std::optional<IntVec> ExtensionChase::invariant_part(const Cochain0& phi) const {
    for (auto& x : phi)
        if (x != phi[0]) return std::nullopt;
    for (auto h : h_elems_)
        if (m_.act(h, phi[0]) != phi[0]) return std::nullopt;
    return phi[0];
}

bool ExtensionChase::is_q_coboundary(const std::vector<IntVec>& w) const {
    std::size_t r = mh_basis_.size(), d = m_.dim;
    if (r == 0) return std::all_of(w.begin(), w.end(), is_zero_vec);
    auto ring = [&](std::size_t q, bool norm) {
        GroupRingElem e = norm ? norm_element(m_, q) : delta_element(q);
        return ring_matrix(m_, e);
    };
    IntMatrix B(d, r);
    for (std::size_t j = 0; j < r; ++j)
        for (std::size_t i = 0; i < d; ++i) B(i, j) = mh_basis_[j][i];
    std::size_t k1 = q_gens_.size(), k2 = k1 == 1 ? 1 : 3;
    IntMatrix A(k2 * d, k1 * r);
    auto put = [&](std::size_t row_blk, std::size_t col_blk, const IntMatrix& blk, long s) {
        IntMatrix t = blk * B;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < r; ++j) A(row_blk * d + i, col_blk * r + j) += s * t(i, j);
    };
    if (k1 == 1) {
        put(0, 0, ring(q_gens_[0], true), 1);
    } else {
        put(0, 0, ring(q_gens_[0], true), 1);
        put(1, 0, ring(q_gens_[1], false), 1);
        put(1, 1, ring(q_gens_[0], false), -1);
        put(2, 1, ring(q_gens_[1], true), 1);
    }
    return kernel_and_solve(A, concat(w)).solution.has_value();
}

ExtensionChase::Transgression ExtensionChase::transgress(const std::vector<IntVec>& f) const {
    Transgression t;
    auto v = horizontal1(lift(f));
    std::vector<Cochain0> v0;
    for (auto& comp : v) {
        auto phi = solve_vertical(comp);
        if (!phi) return t;
        v0.push_back(std::move(*phi));
    }
    t.q_invariant = true;
    for (auto& c : horizontal0(v0)) {
        auto w = invariant_part(c);
        if (!w) throw InvariantError("horizontal image does not lie in the invariant row");
        t.w.push_back(*w);
    }
    t.d2_zero = is_q_coboundary(t.w);
    return t;
}

GModule ExtensionChase::q_module_on_invariants() const {
    GModule q = m_.restrict_to(s_elems_);
    if (mh_basis_.empty()) throw std::invalid_argument("M^H is zero");
    return q.on_sublattice(mh_basis_);
}

FiveTermResult five_term_with_d2(const GModule& m, const ExtensionData& ext) {
    ExtensionChase chase(m, ext);
    FiveTermResult out;
    out.invariant_basis = chase.invariant_basis();
    out.h1_q_invariants = h1_presentation(chase.q_module_on_invariants()).group;

    const GModule& hm = chase.h_module();
    std::vector<std::size_t> hg;
    for (auto g : ext.h_generators) {
        auto it = std::find(chase.h_elements().begin(), chase.h_elements().end(), g);
        hg.push_back(static_cast<std::size_t>(it - chase.h_elements().begin()));
    }
    CohomologyResult h1h;
    std::vector<std::vector<IntVec>> gens_std;
    if (hg.empty()) {
        h1h.group = AbelianGroupType{};
    } else {
        ResolutionKind kind = hg.size() == 1 ? ResolutionKind::cyclic
                              : hg.size() == 2 ? ResolutionKind::bicyclic
                                               : ResolutionKind::tricyclic;
        auto res = build_resolution(hm, kind, hg);
        h1h = h1_via_resolution(hm, res);
        for (auto& rep : h1h.representatives) gens_std.push_back(resolution_to_standard(hm, res, rep.values));
    }
    out.h1_h = h1h.group;
    for (auto& f : gens_std) out.generator_images.push_back(chase.transgress(f));

    // enumerate H^1(H,M) to count Q-invariant classes and the kernel of d2
    std::size_t total = 1;
    for (long o : h1h.orders) total *= static_cast<std::size_t>(o);
    if (total > 4096) throw CapacityError("H^1(H,M) too large to enumerate");
    std::vector<long> c(h1h.orders.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t t = idx;
        for (std::size_t i = 0; i < c.size(); ++i) {
            c[i] = static_cast<long>(t % static_cast<std::size_t>(h1h.orders[i]));
            t /= static_cast<std::size_t>(h1h.orders[i]);
        }
        std::vector<IntVec> f(hm.order(), IntVec(m.dim));
        for (std::size_t i = 0; i < c.size(); ++i)
            for (std::size_t x = 0; x < hm.order(); ++x) f[x] = vec_add(f[x], gens_std[i][x], c[i]);
        auto tr = chase.transgress(f);
        if (tr.q_invariant) ++out.invariant_classes;
        if (tr.q_invariant && tr.d2_zero) ++out.d2_kernel;
    }
    out.h1_g_order = static_cast<std::size_t>(out.h1_q_invariants.order()) * out.d2_kernel;
    return out;
}

Index2Report index2_cyclic_generators(const GModule& m) {
    Index2Report rep;
    rep.h1_g = h1_presentation(m);
    std::vector<std::vector<long>> all_images;
    for (auto& K : index2_subgroups(m)) {
        Index2Entry e;
        e.subgroup = K;
        e.invariant_basis = invariants_of(m, K).basis;
        std::vector<char> inK(m.order(), 0);
        for (auto k : K) inK[k] = 1;
        std::size_t g = 0;
        while (inK[g]) ++g;
        if (e.invariant_basis.empty()) {
            rep.entries.push_back(std::move(e));
            continue;
        }
        // Z/2 = G/K acting on M^K through g
        GModule full_on_mk = m.on_sublattice(e.invariant_basis);
        GModule cyc = GModule::cyclic(2, full_on_mk.mats[g]);
        auto res = h1_via_resolution(cyc, build_resolution(cyc, ResolutionKind::cyclic, {1}));
        e.h1 = res.group;
        for (auto& r : res.representatives) {
            IntVec v(m.dim);
            for (std::size_t j = 0; j < e.invariant_basis.size(); ++j)
                v = vec_add(v, e.invariant_basis[j], to_long(r.values[0][j]));
            e.representatives.push_back(v);
            // inflation: f(x) = 0 on K and -v off K
            std::vector<IntVec> f(m.order(), IntVec(m.dim));
            for (std::size_t x = 0; x < m.order(); ++x)
                if (!inK[x])
                    for (std::size_t i = 0; i < m.dim; ++i) f[x][i] = -v[i];
            auto coords = class_coordinates_standard(m, rep.h1_g, f);
            e.images.push_back(coords);
            all_images.push_back(coords);
        }
        rep.entries.push_back(std::move(e));
    }
    // order of the subgroup generated by all images inside H^1(G,M)
    std::size_t k = rep.h1_g.orders.size();
    if (k == 0) {
        rep.generated_order = 1;
        return rep;
    }
    IntMatrix L(all_images.size() + k, k);
    for (std::size_t i = 0; i < all_images.size(); ++i)
        for (std::size_t j = 0; j < k; ++j) L(i, j) = all_images[i][j];
    Int full = 1;
    for (std::size_t j = 0; j < k; ++j) {
        L(all_images.size() + j, j) = rep.h1_g.orders[j];
        full *= rep.h1_g.orders[j];
    }
    auto sd = smith_normal_form(L);
    Int idx = 1;
    for (auto& dv : sd.divisors) idx *= dv;
    rep.generated_order = static_cast<std::size_t>(to_long(full / idx));
    return rep;
}

Fingerprint fingerprint(const Subgroup& s) {
    GModule m = GModule::from_subgroup(s);
    Fingerprint f;
    f.order = s.order();
    f.abelianization = abelianization_divisors(s);
    f.exponent = exponent(s);
    f.orbit_lengths = orbit_lengths(s);
    if (m.order() > 1)
        for (auto& K : index2_subgroups(m)) f.index2_invariant_ranks.push_back(invariants_of(m, K).rank);
    std::sort(f.index2_invariant_ranks.begin(), f.index2_invariant_ranks.end());
    f.invariant_rank = invariants_H0(m).rank;
    f.h1 = h1_presentation(m).group;
    return f;
}

}  // namespace dp2

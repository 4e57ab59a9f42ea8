#include "dp2/galois0.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace dp2 {

namespace {

int md(int a, int m) { return ((a % m) + m) % m; }

int chi_index(int chi) { return (md(chi, 8) - 1) / 2; }

}  // namespace

GroupElement::GroupElement(int chi_, int s_, int k_, int m_) : chi(md(chi_, 8)), s(md(s_, 2)), k(md(k_, 4)), m(md(m_, 4)) {
    if (chi % 2 == 0) throw std::invalid_argument("chi must be odd");
}

std::uint8_t GroupElement::code() const { return static_cast<std::uint8_t>(((chi_index(chi) * 2 + s) * 4 + k) * 4 + m); }

GroupElement GroupElement::from_code(std::uint8_t c) {
    int m = c % 4, k = (c / 4) % 4, s = (c / 16) % 2, ci = c / 32;
    return GroupElement(2 * ci + 1, s, k, m);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
    return GroupElement(g.chi * h.chi, g.s + h.s, g.k + g.chi * h.k, g.m + g.chi * h.m);
}

GroupElement GroupElement::inverse() const {
    // chi is its own inverse mod 8
    return GroupElement(chi, -s, -chi * k, -chi * m);
}

std::string GroupElement::to_string() const {
    std::ostringstream os;
    os << "(" << chi << "," << s << "," << k << "," << m << ")";
    return os.str();
}

GroupElement power(const GroupElement& g, int e) {
    GroupElement r;
    if (e < 0) return power(g.inverse(), -e);
    for (int i = 0; i < e; ++i) r = r * g;
    return r;
}

int order(const GroupElement& g) {
    GroupElement x = g;
    int n = 1;
    while (!(x == GroupElement())) x = x * g, ++n;
    return n;
}

namespace gen {
GroupElement identity() { return {}; }
GroupElement sigma() { return {7, 0, 0, 0}; }
GroupElement tau() { return {3, 0, 0, 0}; }
GroupElement iota_a() { return {1, 1, 3, 3}; }
GroupElement iota_b() { return {1, 0, 1, 0}; }
GroupElement iota_c() { return {1, 0, 0, 1}; }
}  // namespace gen

GroupElement parse_word(const std::string& w) {
    static const std::map<std::string, GroupElement> names = {
        {"sigma", gen::sigma()}, {"s", gen::sigma()},  {"tau", gen::tau()},
        {"t", gen::tau()},       {"iota_a", gen::iota_a()}, {"ia", gen::iota_a()},
        {"iota_b", gen::iota_b()}, {"ib", gen::iota_b()}, {"iota_c", gen::iota_c()},
        {"ic", gen::iota_c()},   {"e", gen::identity()}, {"1", gen::identity()}};
    GroupElement r;
    std::string tok;
    auto flush = [&]() {
        if (tok.empty()) return;
        int e = 1;
        auto caret = tok.find('^');
        std::string base = tok.substr(0, caret);
        if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
        auto it = names.find(base);
        if (it == names.end()) throw std::invalid_argument("unknown generator name: " + base);
        r = r * power(it->second, e);
        tok.clear();
    };
    for (char c : w) {
        if (c == ' ' || c == '*' || c == '.')
            flush();
        else
            tok += c;
    }
    flush();
    return r;
}

int sqrt2_sign(int chi) {
    int c = md(chi, 8);
    return (c == 1 || c == 7) ? 1 : -1;
}

CurveLabel act_on_curve(const GroupElement& g, const CurveLabel& l) {
    if (l.kind == CurveLabel::Axis) {
        int d = l.d, s = l.s;
        switch (l.axis) {
            case 2:  // delta x + (b/a) y = 0,  w = s (c/a)^2 a^2 z^2
                return CurveLabel::axis_curve(2, g.chi * d - 2 * g.k, s * ((g.m + g.s) % 2 ? -1 : 1));
            case 0:  // delta (b/a) y + (c/a) z = 0,  w = s a^2 x^2
                return CurveLabel::axis_curve(0, g.chi * d + 2 * (g.k - g.m), s * (g.s ? -1 : 1));
            default:  // delta (c/a) z + x = 0,  w = s (b/a)^2 a^2 y^2
                return CurveLabel::axis_curve(1, g.chi * d + 2 * g.m, s * ((g.k + g.s) % 2 ? -1 : 1));
        }
    }
    // alpha x + beta (b/a) y + gamma (c/a) z = 0, w = sqrt2 a^2 (...)
    int al = g.chi * l.al, be = g.chi * l.be + g.k, ga = g.chi * l.ga + g.m;
    int eps = sqrt2_sign(g.chi) * (g.s ? -1 : 1);
    if (eps < 0) ++al, ++be, ++ga;
    return CurveLabel::triple(al, be, ga);
}

namespace {

struct ActionCache {
    std::array<std::array<std::uint8_t, kCurveCount>, 128> perm{};
    std::array<Mat8, 128> mat{};
    std::array<std::array<std::uint8_t, 128>, 128> mul{};
};

Mat8 induced_matrix(const std::array<std::uint8_t, kCurveCount>& p) {
    const PicLattice& l = lattice();
    // basis curves: v1..v7 are curve classes, v8 is a sum of three curves
    static const std::array<CurveLabel, 7> basis = {
        CurveLabel::axis_curve(0, 1, 1), CurveLabel::axis_curve(0, 3, -1), CurveLabel::axis_curve(1, 1, 1),
        CurveLabel::axis_curve(1, 3, -1), CurveLabel::axis_curve(2, 1, 1), CurveLabel::axis_curve(2, 3, -1),
        CurveLabel::triple(1, 1, 1)};
    static const std::array<CurveLabel, 3> v8parts = {CurveLabel::axis_curve(2, 7, -1),
                                                     CurveLabel::axis_curve(2, 3, -1), CurveLabel::triple(1, 1, 1)};
    Mat8 m{};
    for (int j = 0; j < 7; ++j) {
        const PicClass& img = l.class_table[p[basis[j].index()]];
        for (int i = 0; i < 8; ++i) m[i][j] = img[i];
    }
    for (const auto& c : v8parts) {
        const PicClass& img = l.class_table[p[c.index()]];
        for (int i = 0; i < 8; ++i) m[i][7] += img[i];
    }
    for (std::size_t c = 0; c < kCurveCount; ++c)
        if (mat_apply(m, l.class_table[c]) != l.class_table[p[c]])
            throw std::logic_error("curve action is not linear on the Picard lattice");
    return m;
}

const ActionCache& cache() {
    static const ActionCache c = [] {
        ActionCache a;
        for (int x = 0; x < 128; ++x) {
            GroupElement g = GroupElement::from_code(static_cast<std::uint8_t>(x));
            for (std::size_t i = 0; i < kCurveCount; ++i)
                a.perm[x][i] = static_cast<std::uint8_t>(act_on_curve(g, CurveLabel::from_index(i)).index());
            a.mat[x] = induced_matrix(a.perm[x]);
            for (int y = 0; y < 128; ++y)
                a.mul[x][y] = (g * GroupElement::from_code(static_cast<std::uint8_t>(y))).code();
        }
        return a;
    }();
    return c;
}

inline std::uint8_t mulc(std::uint8_t a, std::uint8_t b) { return cache().mul[a][b]; }

}  // namespace

std::array<std::uint8_t, kCurveCount> curve_permutation(const GroupElement& g) { return cache().perm[g.code()]; }

Mat8 matrix_of(const GroupElement& g) { return cache().mat[g.code()]; }

Mat8 mat_identity() {
    Mat8 m{};
    for (int i = 0; i < 8; ++i) m[i][i] = 1;
    return m;
}

Mat8 mat_mul(const Mat8& a, const Mat8& b) {
    Mat8 r{};
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 8; ++k)
            if (a[i][k])
                for (int j = 0; j < 8; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

PicClass mat_apply(const Mat8& a, const PicClass& v) {
    PicClass r{};
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) r[i] += a[i][j] * v[j];
    return r;
}

bool Subgroup::abelian() const {
    for (auto& x : elements)
        for (auto& y : elements)
            if (!(x * y == y * x)) return false;
    return true;
}

std::string Subgroup::generators_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i].to_string();
    return s + ">";
}

namespace {

bool onto_Q(const ElementMask& mask) {
    bool seen[4] = {false, false, false, false};
    for (int c = 0; c < 128; ++c)
        if (mask.test(c)) seen[c / 32] = true;
    return seen[0] && seen[1] && seen[2] && seen[3];
}

ElementMask closure(ElementMask mask, const std::vector<std::uint8_t>& gens) {
    mask.set(0);
    std::vector<std::uint8_t> frontier;
    for (int c = 0; c < 128; ++c)
        if (mask.test(c)) frontier.push_back(static_cast<std::uint8_t>(c));
    while (!frontier.empty()) {
        std::vector<std::uint8_t> next;
        for (std::uint8_t x : frontier)
            for (std::uint8_t g : gens) {
                std::uint8_t y = mulc(g, x);
                if (!mask.test(y)) mask.set(y), next.push_back(y);
            }
        frontier.swap(next);
    }
    return mask;
}

std::vector<std::uint8_t> mask_codes(const ElementMask& m) {
    std::vector<std::uint8_t> r;
    for (int c = 0; c < 128; ++c)
        if (m.test(c)) r.push_back(static_cast<std::uint8_t>(c));
    return r;
}

// subgroups of equal size: the one containing the least element of the symmetric difference is smaller
bool mask_less(const ElementMask& a, const ElementMask& b) {
    ElementMask d = a ^ b;
    if (d.none()) return false;
    for (int c = 0; c < 128; ++c)
        if (d.test(c)) return a.test(c);
    return false;
}

}  // namespace

Subgroup subgroup_from_mask(const ElementMask& mask) {
    Subgroup s;
    s.mask = mask;
    for (std::uint8_t c : mask_codes(mask)) s.elements.push_back(GroupElement::from_code(c));
    s.ontoQ = onto_Q(mask);
    s.generators = small_generating_set(s);
    return s;
}

Subgroup generate_subgroup(const std::vector<GroupElement>& gens) {
    std::vector<std::uint8_t> gc;
    for (auto& g : gens) gc.push_back(g.code());
    Subgroup s = subgroup_from_mask(closure(ElementMask().set(0), gc));
    std::vector<GroupElement> kept;
    for (auto& g : gens)
        if (!(g == GroupElement())) kept.push_back(g);
    s.generators = kept;
    return s;
}

std::vector<GroupElement> small_generating_set(const Subgroup& s) {
    std::vector<GroupElement> gens;
    std::vector<std::uint8_t> gc;
    ElementMask span;
    span.set(0);
    // prefer elements of large order so the generating set stays short
    std::vector<GroupElement> cand = s.elements;
    std::stable_sort(cand.begin(), cand.end(), [](auto& a, auto& b) { return order(a) > order(b); });
    for (auto& g : cand) {
        if (span.test(g.code())) continue;
        gens.push_back(g);
        gc.push_back(g.code());
        span = closure(span, gc);
        if (span == s.mask) break;
    }
    return gens;
}

const Subgroup& normal_subgroup_H() {
    static const Subgroup h = generate_subgroup({gen::iota_a(), gen::iota_b(), gen::iota_a() * gen::iota_b() * gen::iota_c()});
    return h;
}

const Subgroup& generic_group() {
    static const Subgroup g = generate_subgroup({gen::sigma(), gen::tau(), gen::iota_a(), gen::iota_b(), gen::iota_c()});
    return g;
}

Subgroup conjugate(const Subgroup& s, const GroupElement& g) {
    ElementMask m;
    std::uint8_t gc = g.code(), gi = g.inverse().code();
    for (auto& e : s.elements) m.set(mulc(mulc(gc, e.code()), gi));
    Subgroup r = subgroup_from_mask(m);
    r.generators.clear();
    for (auto& x : s.generators) r.generators.push_back(g * x * g.inverse());
    return r;
}

namespace {

GroupElement swap_bc(const GroupElement& g) { return GroupElement(g.chi, g.s, g.m, g.k); }
GroupElement swap_ab(const GroupElement& g) { return GroupElement(g.chi, g.s + g.k, -g.k, g.m - g.k); }

}  // namespace

GroupElement relabel(const GroupElement& g, int perm) {
    switch (perm) {
        case 0: return g;
        case 1: return swap_bc(g);
        case 2: return swap_ab(g);
        case 3: return swap_bc(swap_ab(g));
        case 4: return swap_ab(swap_bc(g));
        case 5: return swap_ab(swap_bc(swap_ab(g)));
        default: throw std::out_of_range("relabel index");
    }
}

std::array<int, 3> relabel_permutation(int perm) {
    auto comp = [](std::array<int, 3> t1, std::array<int, 3> t2) {
        return std::array<int, 3>{t1[t2[0]], t1[t2[1]], t1[t2[2]]};
    };
    const std::array<int, 3> id{0, 1, 2}, bc{0, 2, 1}, ab{1, 0, 2};
    switch (perm) {
        case 0: return id;
        case 1: return bc;
        case 2: return ab;
        case 3: return comp(ab, bc);
        case 4: return comp(bc, ab);
        case 5: return comp(comp(ab, bc), ab);
        default: throw std::out_of_range("relabel index");
    }
}

Subgroup relabel(const Subgroup& s, int perm) {
    ElementMask m;
    for (auto& e : s.elements) m.set(relabel(e, perm).code());
    Subgroup r = subgroup_from_mask(m);
    r.generators.clear();
    for (auto& x : s.generators) r.generators.push_back(relabel(x, perm));
    return r;
}

const std::vector<Subgroup>& all_subgroups() {
    static const std::vector<Subgroup> subs = [] {
        std::vector<ElementMask> found;
        std::unordered_set<std::bitset<128>> seen;
        ElementMask triv;
        triv.set(0);
        found.push_back(triv);
        seen.insert(triv);
        for (std::size_t i = 0; i < found.size(); ++i) {
            ElementMask cur = found[i];
            std::vector<std::uint8_t> gens = mask_codes(cur);
            for (int c = 1; c < 128; ++c) {
                if (cur.test(c)) continue;
                gens.push_back(static_cast<std::uint8_t>(c));
                ElementMask nm = closure(cur, gens);
                gens.pop_back();
                if (seen.insert(nm).second) found.push_back(nm);
            }
        }
        std::sort(found.begin(), found.end(), [](const ElementMask& a, const ElementMask& b) {
            if (a.count() != b.count()) return a.count() < b.count();
            return mask_less(a, b);
        });
        std::vector<Subgroup> out;
        out.reserve(found.size());
        for (auto& m : found) out.push_back(subgroup_from_mask(m));
        return out;
    }();
    return subs;
}

std::vector<Subgroup> raw_subgroups_onto_Q() {
    std::vector<Subgroup> r;
    for (auto& s : all_subgroups())
        if (s.ontoQ) r.push_back(s);
    return r;
}

ElementMask canonical_mask(const Subgroup& s) {
    ElementMask best = s.mask;
    for (int p = 0; p < 6; ++p) {
        std::vector<std::uint8_t> rel;
        for (auto& e : s.elements) rel.push_back(relabel(e, p).code());
        for (int c = 0; c < 128; ++c) {
            std::uint8_t gi = GroupElement::from_code(static_cast<std::uint8_t>(c)).inverse().code();
            ElementMask m;
            for (std::uint8_t x : rel) m.set(mulc(mulc(static_cast<std::uint8_t>(c), x), gi));
            if (mask_less(m, best)) best = m;
        }
    }
    return best;
}

std::vector<Subgroup> enumerate_subgroups_onto_Q() {
    std::vector<ElementMask> reps;
    std::unordered_set<std::bitset<128>> keys;
    for (auto& s : all_subgroups()) {
        if (!s.ontoQ) continue;
        ElementMask k = canonical_mask(s);
        if (keys.insert(k).second) reps.push_back(k);
    }
    std::sort(reps.begin(), reps.end(), [](const ElementMask& a, const ElementMask& b) {
        if (a.count() != b.count()) return a.count() < b.count();
        return mask_less(a, b);
    });
    std::vector<Subgroup> out;
    for (auto& m : reps) out.push_back(subgroup_from_mask(m));
    return out;
}

bool contained_up_to_symmetry(const Subgroup& small, const Subgroup& big) {
    for (int p = 0; p < 6; ++p) {
        std::vector<std::uint8_t> rel;
        for (auto& e : small.elements) rel.push_back(relabel(e, p).code());
        for (int c = 0; c < 128; ++c) {
            std::uint8_t gi = GroupElement::from_code(static_cast<std::uint8_t>(c)).inverse().code();
            bool ok = true;
            for (std::uint8_t x : rel)
                if (!big.mask.test(mulc(mulc(static_cast<std::uint8_t>(c), x), gi))) {
                    ok = false;
                    break;
                }
            if (ok) return true;
        }
    }
    return false;
}

SemidirectWitness find_abelian_semidirect(const Subgroup& g) {
    std::vector<const Subgroup*> inside;
    for (auto& s : all_subgroups())
        if (g.contains(s) && s.abelian()) inside.push_back(&s);
    SemidirectWitness w;
    for (auto* n : inside) {
        bool normal = true;
        for (auto& x : g.elements) {
            for (auto& y : n->elements)
                if (!n->contains(x * y * x.inverse())) {
                    normal = false;
                    break;
                }
            if (!normal) break;
        }
        if (!normal) continue;
        for (auto* k : inside) {
            if (n->order() * k->order() != g.order()) continue;
            if ((n->mask & k->mask).count() != 1) continue;
            w.found = true;
            w.normal = *n;
            w.complement = *k;
            return w;
        }
    }
    return w;
}

std::vector<long> abelianization_divisors(const Subgroup& g) {
    std::vector<std::uint8_t> comms;
    for (auto& x : g.elements)
        for (auto& y : g.elements) comms.push_back((x * y * x.inverse() * y.inverse()).code());
    ElementMask d = closure(ElementMask().set(0), comms);
    // elements of G/D killed by 2^j, counted via cosets
    std::size_t dsz = d.count();
    std::vector<int> logs;  // log2 |{x in G/D : x^(2^j) = 1}|
    for (int j = 0;; ++j) {
        std::size_t cnt = 0;
        for (auto& x : g.elements)
            if (d.test(power(x, 1 << j).code())) ++cnt;
        std::size_t q = cnt / dsz;
        int lg = 0;
        while ((std::size_t(1) << lg) < q) ++lg;
        logs.push_back(lg);
        if (q * dsz == g.order()) break;
    }
    // number of cyclic factors of order >= 2^j is logs[j] - logs[j-1]
    std::vector<long> divs;
    for (std::size_t j = 1; j < logs.size(); ++j) {
        int ge_j = logs[j] - logs[j - 1];
        int ge_next = (j + 1 < logs.size()) ? logs[j + 1] - logs[j] : 0;
        for (int t = 0; t < ge_j - ge_next; ++t) divs.push_back(1L << j);
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

int exponent(const Subgroup& g) {
    int e = 1;
    for (auto& x : g.elements) e = std::max(e, order(x));
    return e;
}

std::vector<int> orbit_lengths(const Subgroup& g) {
    std::vector<bool> done(kCurveCount, false);
    std::vector<int> lens;
    for (std::size_t c = 0; c < kCurveCount; ++c) {
        if (done[c]) continue;
        std::set<std::size_t> orb;
        for (auto& x : g.elements) orb.insert(cache().perm[x.code()][c]);
        for (auto o : orb) done[o] = true;
        lens.push_back(static_cast<int>(orb.size()));
    }
    std::sort(lens.begin(), lens.end());
    return lens;
}

}  // namespace dp2

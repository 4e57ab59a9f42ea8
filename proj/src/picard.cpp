#include "dp2/picard.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dp2 {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

const char* unit_name(int e) {
    static const char* names[] = {"1", "i", "-1", "-i"};
    return names[mod(e, 4)];
}

}  // namespace

CurveLabel CurveLabel::axis_curve(int axis, int d, int s) {
    if (axis < 0 || axis > 2) throw std::invalid_argument("axis out of range");
    d = mod(d, 8);
    if (d % 2 == 0) throw std::invalid_argument("delta exponent must be odd");
    if (s != 1 && s != -1) throw std::invalid_argument("sign must be +1 or -1");
    CurveLabel l;
    l.kind = Axis;
    l.axis = axis;
    l.d = d;
    l.s = s;
    return l;
}

CurveLabel CurveLabel::triple(int al, int be, int ga) {
    al = mod(al, 4), be = mod(be, 4), ga = mod(ga, 4);
    if (al >= 2) al -= 2, be = mod(be + 2, 4), ga = mod(ga + 2, 4);
    CurveLabel l;
    l.kind = Triple;
    l.al = al;
    l.be = be;
    l.ga = ga;
    return l;
}

std::size_t CurveLabel::index() const {
    if (kind == Axis) return static_cast<std::size_t>(axis * 8 + (d - 1) / 2 * 2 + (s == 1 ? 0 : 1));
    return static_cast<std::size_t>(24 + al * 16 + be * 4 + ga);
}

CurveLabel CurveLabel::from_index(std::size_t i) {
    if (i >= kCurveCount) throw std::out_of_range("curve index");
    if (i < 24) return axis_curve(static_cast<int>(i / 8), static_cast<int>((i % 8) / 2 * 2 + 1), i % 2 ? -1 : 1);
    std::size_t t = i - 24;
    return triple(static_cast<int>(t / 16), static_cast<int>((t / 4) % 4), static_cast<int>(t % 4));
}

CurveLabel CurveLabel::partner() const {
    if (kind == Axis) return axis_curve(axis, d, -s);
    return triple(al + 1, be + 1, ga + 1);
}

std::string CurveLabel::name() const {
    std::ostringstream os;
    if (kind == Axis)
        os << "L_{" << "xyz"[axis] << ",zeta^" << d << "," << (s == 1 ? '+' : '-') << "}";
    else
        os << "L_{" << unit_name(al) << "," << unit_name(be) << "," << unit_name(ga) << "}";
    return os.str();
}

const std::vector<CurveLabel>& all_curves() {
    static const std::vector<CurveLabel> v = [] {
        std::vector<CurveLabel> r;
        for (std::size_t i = 0; i < kCurveCount; ++i) r.push_back(CurveLabel::from_index(i));
        return r;
    }();
    return v;
}

long intersection(const PicClass& a, const PicClass& b) {
    long s = a[7] * b[7];
    for (int i = 0; i < 7; ++i) s -= a[i] * b[i];
    return s;
}

long PicLattice::intersection(const PicClass& a, const PicClass& b) const {
    long s = 0;
    for (int i = 0; i < 8; ++i) s += gram[i] * a[i] * b[i];
    return s;
}

int PicLattice::find(const PicClass& c) const {
    for (std::size_t i = 0; i < kCurveCount; ++i)
        if (class_table[i] == c) return static_cast<int>(i);
    return -1;
}

std::string class_to_string(const PicClass& c) {
    std::ostringstream os;
    os << "(";
    for (int i = 0; i < 8; ++i) os << (i ? "," : "") << c[i];
    os << ")";
    return os.str();
}

PicLattice build_lattice() {
    PicLattice l;
    std::vector<bool> have(kCurveCount, false);
    auto set = [&](const CurveLabel& c, const PicClass& v) {
        l.class_table[c.index()] = v;
        have[c.index()] = true;
    };
    auto e = [](std::initializer_list<int> minus) {
        PicClass v{};
        for (int i : minus) v[i - 1] -= 1;
        v[7] += 1;
        return v;
    };
    auto basis = [](int i) {
        PicClass v{};
        v[i - 1] = 1;
        return v;
    };
    const int X = 0, Y = 1, Z = 2;
    // basis curves
    set(CurveLabel::axis_curve(X, 1, 1), basis(1));
    set(CurveLabel::axis_curve(X, 3, -1), basis(2));
    set(CurveLabel::axis_curve(Y, 1, 1), basis(3));
    set(CurveLabel::axis_curve(Y, 3, -1), basis(4));
    set(CurveLabel::axis_curve(Z, 1, 1), basis(5));
    set(CurveLabel::axis_curve(Z, 3, -1), basis(6));
    set(CurveLabel::triple(1, 1, 1), basis(7));
    // v8 = [L_{z,zeta^7,-}] + [L_{z,zeta^3,-}] + [L_{i,i,i}]
    set(CurveLabel::axis_curve(Z, 7, -1), PicClass{0, 0, 0, 0, 0, -1, -1, 1});
    // remaining seeds, exponents of i: 1 -> 0, i -> 1, -1 -> 2, -i -> 3
    set(CurveLabel::axis_curve(X, 5, 1), e({1, 7}));
    set(CurveLabel::axis_curve(X, 7, -1), e({2, 7}));
    set(CurveLabel::axis_curve(Y, 5, 1), e({3, 7}));
    set(CurveLabel::axis_curve(Y, 7, -1), e({4, 7}));
    set(CurveLabel::axis_curve(Z, 5, 1), e({5, 7}));
    set(CurveLabel::triple(0, 0, 1), e({2, 3}));
    set(CurveLabel::triple(0, 0, 2), e({5, 6}));
    set(CurveLabel::triple(0, 0, 3), e({1, 4}));
    set(CurveLabel::triple(0, 1, 0), e({1, 6}));
    set(CurveLabel::triple(0, 1, 3), e({3, 5}));
    set(CurveLabel::triple(0, 2, 0), e({3, 4}));
    set(CurveLabel::triple(0, 2, 2), e({1, 2}));
    set(CurveLabel::triple(0, 3, 0), e({2, 5}));
    set(CurveLabel::triple(0, 3, 1), e({4, 6}));
    set(CurveLabel::triple(1, 0, 0), e({4, 5}));
    set(CurveLabel::triple(1, 0, 3), e({2, 6}));
    set(CurveLabel::triple(1, 2, 2), e({3, 6}));
    set(CurveLabel::triple(1, 2, 3), e({1, 5}));
    set(CurveLabel::triple(1, 3, 0), e({1, 3}));
    set(CurveLabel::triple(1, 3, 2), e({2, 4}));

    std::size_t seeded = static_cast<std::size_t>(std::count(have.begin(), have.end(), true));
    if (seeded != 28) throw std::logic_error("lattice seed table has duplicate labels");
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        if (!have[i]) continue;
        CurveLabel p = CurveLabel::from_index(i).partner();
        if (have[p.index()]) throw std::logic_error("lattice seeds contain a partner pair: " + p.name());
    }
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        if (!have[i]) continue;
        CurveLabel p = CurveLabel::from_index(i).partner();
        PicClass v{};
        for (int k = 0; k < 8; ++k) v[k] = l.anticanonical[k] - l.class_table[i][k];
        l.class_table[p.index()] = v;
    }
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        const PicClass& c = l.class_table[i];
        if (l.intersection(c, c) != -1 || l.intersection(c, l.anticanonical) != 1)
            throw std::logic_error("derived class violates exceptional-curve invariants: " +
                                   CurveLabel::from_index(i).name());
    }
    return l;
}

const PicLattice& lattice() {
    static const PicLattice l = build_lattice();
    return l;
}

std::vector<PicClass> enumerate_exceptional_classes() {
    std::vector<PicClass> out;
    const int B = 4;
    PicClass n{};
    // D.(-K) = n1 + ... + n7 + 3 n8 = 1 determines n7
    for (n[7] = -B; n[7] <= B; ++n[7])
        for (n[0] = -B; n[0] <= B; ++n[0])
            for (n[1] = -B; n[1] <= B; ++n[1])
                for (n[2] = -B; n[2] <= B; ++n[2])
                    for (n[3] = -B; n[3] <= B; ++n[3])
                        for (n[4] = -B; n[4] <= B; ++n[4])
                            for (n[5] = -B; n[5] <= B; ++n[5]) {
                                long n6 = 1 - 3 * n[7] - n[0] - n[1] - n[2] - n[3] - n[4] - n[5];
                                if (n6 < -B || n6 > B) continue;
                                n[6] = n6;
                                if (intersection(n, n) == -1) out.push_back(n);
                            }
    std::sort(out.begin(), out.end());
    return out;
}

LatticeReport verify_lattice(const PicLattice& l) {
    LatticeReport r;
    auto fail = [&](const std::string& s) {
        r.ok = false;
        r.problems.push_back(s);
    };
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        const PicClass& c = l.class_table[i];
        if (l.intersection(c, c) == -1 && l.intersection(c, l.anticanonical) == 1)
            ++r.table_valid;
        else
            fail("invalid class for " + CurveLabel::from_index(i).name() + ": " + class_to_string(c));
    }
    if (l.intersection(l.anticanonical, l.anticanonical) != 2) fail("(-K)^2 != 2");
    std::vector<PicClass> roots = enumerate_exceptional_classes();
    r.brute_force_roots = roots.size();
    if (roots.size() != kCurveCount) fail("exhaustive search found " + std::to_string(roots.size()) + " classes");
    std::map<PicClass, std::size_t> seen;
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        const PicClass& c = l.class_table[i];
        if (std::binary_search(roots.begin(), roots.end(), c))
            ++r.matched;
        else
            fail("class of " + CurveLabel::from_index(i).name() + " is not an exceptional class");
        auto [it, fresh] = seen.emplace(c, i);
        if (!fresh)
            fail("classes of " + CurveLabel::from_index(it->second).name() + " and " +
                 CurveLabel::from_index(i).name() + " coincide");
    }
    for (std::size_t i = 0; i < kCurveCount; ++i) {
        int twos = 0;
        std::size_t which = i;
        for (std::size_t j = 0; j < kCurveCount; ++j)
            if (j != i && l.intersection(l.class_table[i], l.class_table[j]) == 2) ++twos, which = j;
        CurveLabel li = CurveLabel::from_index(i);
        if (twos != 1 || which != li.partner().index())
            fail("partner check failed for " + li.name());
    }
    return r;
}

}  // namespace dp2

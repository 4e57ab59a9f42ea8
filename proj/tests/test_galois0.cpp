#include "doctest.h"
#include "dp2/galois0.hpp"

#include <set>
#include <sstream>

using namespace dp2;

namespace {

// The generator action written out independently, straight from the action table.
CurveLabel table_action(int which, const CurveLabel& l) {
    if (l.kind == CurveLabel::Axis) {
        int d = l.d, s = l.s;
        switch (which) {
            case 0: return CurveLabel::axis_curve(l.axis, -d, s);     // sigma: delta^-1
            case 1: return CurveLabel::axis_curve(l.axis, 3 * d, s);  // tau: delta^3
            case 2:                                                   // iota_a
                if (l.axis == 2) return CurveLabel::axis_curve(2, d + 2, s);
                if (l.axis == 0) return CurveLabel::axis_curve(0, d, -s);
                return CurveLabel::axis_curve(1, d + 6, s);
            case 3:  // iota_b
                if (l.axis == 2) return CurveLabel::axis_curve(2, d + 6, s);
                if (l.axis == 0) return CurveLabel::axis_curve(0, d + 2, s);
                return CurveLabel::axis_curve(1, d, -s);
            default:  // iota_c
                if (l.axis == 2) return CurveLabel::axis_curve(2, d, -s);
                if (l.axis == 0) return CurveLabel::axis_curve(0, d + 6, s);
                return CurveLabel::axis_curve(1, d + 2, s);
        }
    }
    switch (which) {
        case 0: return CurveLabel::triple(-l.al, -l.be, -l.ga);
        case 1: return CurveLabel::triple(1 - l.al, 1 - l.be, 1 - l.ga);
        case 2: return CurveLabel::triple(l.al + 1, l.be, l.ga);
        case 3: return CurveLabel::triple(l.al, l.be + 1, l.ga);
        default: return CurveLabel::triple(l.al, l.be, l.ga + 1);
    }
}

const std::vector<GroupElement>& named() {
    static const std::vector<GroupElement> g = {gen::sigma(), gen::tau(), gen::iota_a(), gen::iota_b(), gen::iota_c()};
    return g;
}

bool is_isometry_fixing_K(const Mat8& m) {
    const PicLattice& l = lattice();
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) {
            PicClass ei{}, ej{};
            ei[i] = 1, ej[j] = 1;
            if (intersection(mat_apply(m, ei), mat_apply(m, ej)) != intersection(ei, ej)) return false;
        }
    return mat_apply(m, l.anticanonical) == l.anticanonical;
}

}  // namespace

TEST_SUITE("galois0") {

TEST_CASE("field action of the named generators") {
    // (zeta exponent, a^2 sign, b/a and c/a multipliers as powers of i)
    CHECK(gen::sigma().chi == 7);
    CHECK(gen::tau().chi == 3);
    auto ia = gen::iota_a();
    CHECK((ia.chi == 1 && ia.s == 1 && ia.k == 3 && ia.m == 3));
    auto ib = gen::iota_b();
    CHECK((ib.chi == 1 && ib.s == 0 && ib.k == 1 && ib.m == 0));
    auto ic = gen::iota_c();
    CHECK((ic.chi == 1 && ic.s == 0 && ic.k == 0 && ic.m == 1));
}

TEST_CASE("curve action reproduces the generator table on all 56 curves") {
    for (int w = 0; w < 5; ++w)
        for (const auto& c : all_curves()) CHECK_MESSAGE(act_on_curve(named()[w], c) == table_action(w, c), c.name());
    CHECK(act_on_curve(gen::iota_c(), CurveLabel::axis_curve(2, 3, 1)) == CurveLabel::axis_curve(2, 3, -1));
    for (const auto& c : all_curves()) CHECK(act_on_curve(gen::identity(), c) == c);
    // sigma(L_{i,i,i}) = L_{-i,-i,-i} = L_{i,i,-i}... canonical form
    CHECK(act_on_curve(gen::sigma(), CurveLabel::triple(1, 1, 1)) == CurveLabel::triple(3, 3, 3));
    CHECK(CurveLabel::triple(3, 3, 3) == CurveLabel::triple(1, 1, 1));
}

TEST_CASE("action is a group action and commutes with partners") {
    for (int x = 0; x < 128; ++x)
        for (int y = 0; y < 128; y += 7) {
            auto g = GroupElement::from_code(static_cast<std::uint8_t>(x));
            auto h = GroupElement::from_code(static_cast<std::uint8_t>(y));
            for (const auto& c : all_curves()) {
                CHECK(act_on_curve(g * h, c) == act_on_curve(g, act_on_curve(h, c)));
                CHECK(act_on_curve(g, c.partner()) == act_on_curve(g, c).partner());
            }
        }
}

TEST_CASE("matrices form a homomorphism into isometries fixing K") {
    CHECK(matrix_of(gen::identity()) == mat_identity());
    for (auto& g : named())
        for (auto& h : named()) CHECK(mat_mul(matrix_of(g), matrix_of(h)) == matrix_of(g * h));
    for (int x = 0; x < 128; ++x) {
        auto g = GroupElement::from_code(static_cast<std::uint8_t>(x));
        CHECK(is_isometry_fixing_K(matrix_of(g)));
    }
    PicClass v5{0, 0, 0, 0, 1, 0, 0, 0};
    // iota_c sends L_{z,zeta,+} to its partner, whose class is -K - v5
    CHECK(mat_apply(matrix_of(gen::iota_c()), v5) == PicClass{-1, -1, -1, -1, -2, -1, -1, 3});
    // faithful on G0
    std::set<Mat8> mats;
    for (int x = 0; x < 128; ++x) mats.insert(matrix_of(GroupElement::from_code(static_cast<std::uint8_t>(x))));
    CHECK(mats.size() == 128);
}

TEST_CASE("subgroup generation") {
    CHECK(generic_group().order() == 128);
    CHECK(generic_group().ontoQ);
    using namespace gen;
    auto h = generate_subgroup({iota_a() * iota_b(), sigma() * tau() * iota_a() * iota_c()});
    CHECK(h.order() == 16);
    auto g = generate_subgroup({iota_a() * iota_b(), sigma() * tau() * iota_a() * iota_c(), sigma()});
    CHECK(g.order() == 32);
    auto t = generate_subgroup({});
    CHECK(t.order() == 1);
    CHECK(!t.ontoQ);
    CHECK(parse_word("iota_a iota_b^2 sigma") == iota_a() * iota_b() * iota_b() * sigma());
}

TEST_CASE("the normal subgroup H and the quotient Q") {
    const Subgroup& H = normal_subgroup_H();
    CHECK(H.order() == 32);
    CHECK(H.abelian());
    CHECK(abelianization_divisors(H) == std::vector<long>{2, 4, 4});
    for (auto& g : generic_group().elements)
        for (auto& h : H.elements) CHECK(H.contains(g * h * g.inverse()));
    // G0/H has four elements, each of order <= 2
    std::set<int> cosets;
    for (auto& g : generic_group().elements) {
        cosets.insert(g.chi);
        CHECK(H.contains(g * g));
    }
    CHECK(cosets.size() == 4);
}

TEST_CASE("relabeling automorphisms") {
    for (int p = 0; p < 6; ++p) {
        std::set<std::uint8_t> img;
        for (int x = 0; x < 128; ++x) {
            auto g = GroupElement::from_code(static_cast<std::uint8_t>(x));
            img.insert(relabel(g, p).code());
            for (int y = 0; y < 128; y += 5) {
                auto h = GroupElement::from_code(static_cast<std::uint8_t>(y));
                CHECK(relabel(g * h, p) == relabel(g, p) * relabel(h, p));
            }
        }
        CHECK(img.size() == 128);
        CHECK(relabel(normal_subgroup_H(), p).mask == normal_subgroup_H().mask);
    }
}

TEST_CASE("subgroup enumeration") {
    const auto& all = all_subgroups();
    std::set<std::string> masks;
    for (auto& s : all) masks.insert(s.mask.to_string());
    CHECK(masks.size() == all.size());
    auto raw = raw_subgroups_onto_Q();
    auto classes = enumerate_subgroups_onto_Q();
    MESSAGE("subgroups: " << all.size() << ", onto Q: " << raw.size() << ", classes: " << classes.size());
    CHECK(classes.size() <= raw.size());
    for (auto& c : classes) CHECK(c.ontoQ);
    bool has_full = false;
    for (auto& c : classes) has_full |= c.order() == 128;
    CHECK(has_full);

    // oracle: within the order-32 group <iota_a iota_b, sigma tau iota_a iota_c, sigma>, close all
    // generator subsets of size <= 3 and compare with the enumerated subgroups it contains
    using namespace gen;
    auto G = generate_subgroup({iota_a() * iota_b(), sigma() * tau() * iota_a() * iota_c(), sigma()});
    std::set<std::string> by_closure;
    for (auto& a : G.elements)
        for (auto& b : G.elements)
            for (auto& c : G.elements) {
                auto s = generate_subgroup({a, b, c});
                if (s.ontoQ) by_closure.insert(s.mask.to_string());
            }
    std::set<std::string> by_enum;
    for (auto& s : raw)
        if (G.contains(s)) by_enum.insert(s.mask.to_string());
    CHECK(by_closure == by_enum);
}

TEST_CASE("conjugate subgroups and group invariants") {
    using namespace gen;
    auto s = generate_subgroup({iota_a() * iota_b(), sigma() * tau() * iota_a() * iota_c(), sigma()});
    for (int x = 0; x < 128; x += 9) {
        auto g = GroupElement::from_code(static_cast<std::uint8_t>(x));
        auto c = conjugate(s, g);
        CHECK(canonical_mask(c) == canonical_mask(s));
        CHECK(orbit_lengths(c) == orbit_lengths(s));
        CHECK(abelianization_divisors(c) == abelianization_divisors(s));
        CHECK(contained_up_to_symmetry(c, s));
    }
    auto triv = generate_subgroup({});
    CHECK(orbit_lengths(triv) == std::vector<int>(56, 1));
    CHECK(exponent(generic_group()) == 4);
}

TEST_CASE("enumerated classes are semidirect products of abelian groups") {
    int failures = 0;
    for (auto& c : enumerate_subgroups_onto_Q())
        if (!find_abelian_semidirect(c).found) {
            ++failures;
            MESSAGE("no abelian semidirect decomposition for " << c.generators_string());
        }
    CHECK(failures == 0);
}

}

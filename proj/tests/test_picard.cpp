#include "doctest.h"
#include "dp2/picard.hpp"

#include <set>

using namespace dp2;

TEST_SUITE("picard") {

TEST_CASE("labels index bijectively and partners are an involution") {
    std::set<std::size_t> seen;
    int axis = 0, triples = 0;
    for (const auto& c : all_curves()) {
        seen.insert(c.index());
        (c.kind == CurveLabel::Axis ? axis : triples)++;
        CHECK(c.partner().partner() == c);
        CHECK(!(c.partner() == c));
    }
    CHECK(seen.size() == 56);
    CHECK(axis == 24);
    CHECK(triples == 32);
    CHECK(CurveLabel::triple(2, 3, 1) == CurveLabel::triple(0, 1, 3));
}

TEST_CASE("basis classes and intersections") {
    const PicLattice& l = lattice();
    CHECK(l.cls(CurveLabel::axis_curve(0, 1, 1)) == PicClass{1, 0, 0, 0, 0, 0, 0, 0});
    CHECK(l.cls(CurveLabel::triple(0, 1, 0)) == PicClass{-1, 0, 0, 0, 0, -1, 0, 1});
    CHECK(l.cls(CurveLabel::axis_curve(0, 1, -1)) == PicClass{-2, -1, -1, -1, -1, -1, -1, 3});
    PicClass v1{1, 0, 0, 0, 0, 0, 0, 0}, v8{0, 0, 0, 0, 0, 0, 0, 1};
    CHECK(intersection(v1, v1) == -1);
    CHECK(intersection(v8, v8) == 1);
    CHECK(intersection(l.anticanonical, l.anticanonical) == 2);
    for (int d : {1, 3, 5, 7})
        CHECK(intersection(l.cls(CurveLabel::axis_curve(2, d, 1)), l.cls(CurveLabel::axis_curve(2, d, -1))) == 2);
}

TEST_CASE("table identities hold verbatim") {
    const PicLattice& l = lattice();
    auto e = [](std::initializer_list<int> minus) {
        PicClass v{};
        for (int i : minus) v[i - 1] -= 1;
        v[7] += 1;
        return v;
    };
    struct Row {
        CurveLabel c;
        PicClass v;
    };
    std::vector<Row> rows = {
        {CurveLabel::axis_curve(0, 5, 1), e({1, 7})},  {CurveLabel::axis_curve(0, 7, -1), e({2, 7})},
        {CurveLabel::axis_curve(1, 5, 1), e({3, 7})},  {CurveLabel::axis_curve(1, 7, -1), e({4, 7})},
        {CurveLabel::axis_curve(2, 5, 1), e({5, 7})},  {CurveLabel::triple(0, 0, 1), e({2, 3})},
        {CurveLabel::triple(0, 0, 2), e({5, 6})},      {CurveLabel::triple(0, 0, 3), e({1, 4})},
        {CurveLabel::triple(0, 1, 0), e({1, 6})},      {CurveLabel::triple(0, 1, 3), e({3, 5})},
        {CurveLabel::triple(0, 2, 0), e({3, 4})},      {CurveLabel::triple(0, 2, 2), e({1, 2})},
        {CurveLabel::triple(0, 3, 0), e({2, 5})},      {CurveLabel::triple(0, 3, 1), e({4, 6})},
        {CurveLabel::triple(1, 0, 0), e({4, 5})},      {CurveLabel::triple(1, 0, 3), e({2, 6})},
        {CurveLabel::triple(1, 2, 2), e({3, 6})},      {CurveLabel::triple(1, 2, 3), e({1, 5})},
        {CurveLabel::triple(1, 3, 0), e({1, 3})},      {CurveLabel::triple(1, 3, 2), e({2, 4})},
    };
    CHECK(rows.size() == 20);
    for (auto& r : rows) CHECK_MESSAGE(l.cls(r.c) == r.v, r.c.name());
    // v8 relation
    PicClass sum{};
    for (auto c : {CurveLabel::axis_curve(2, 7, -1), CurveLabel::axis_curve(2, 3, -1), CurveLabel::triple(1, 1, 1)})
        for (int k = 0; k < 8; ++k) sum[k] += l.cls(c)[k];
    CHECK(sum == PicClass{0, 0, 0, 0, 0, 0, 0, 1});
}

TEST_CASE("lattice verification and fault injection") {
    auto rep = verify_lattice(lattice());
    CHECK(rep.ok);
    CHECK(rep.table_valid == 56);
    CHECK(rep.brute_force_roots == 56);
    CHECK(rep.matched == 56);

    PicLattice bad = lattice();
    CurveLabel victim = CurveLabel::triple(0, 1, 0);
    bad.class_table[victim.index()][0] += 1;
    auto r2 = verify_lattice(bad);
    CHECK(!r2.ok);
    bool named = false;
    for (auto& p : r2.problems)
        if (p.find(victim.name()) != std::string::npos) named = true;
    CHECK(named);
}

TEST_CASE("brute-force root enumeration") {
    auto roots = enumerate_exceptional_classes();
    CHECK(roots.size() == 56);
    const PicLattice& l = lattice();
    for (auto& r : roots) {
        CHECK(intersection(r, r) == -1);
        CHECK(intersection(r, l.anticanonical) == 1);
    }
}

}

#pragma once

#include "dp2/picard.hpp"

#include <array>
#include <iosfwd>
#include <ostream>
#include <bitset>
#include <cstdint>
#include <string>
#include <vector>

namespace dp2 {

// Element of the generic group G0 in Kummer coordinates:
// zeta -> zeta^chi, a^2 -> (-1)^s a^2, b/a -> i^k b/a, c/a -> i^m c/a.
struct GroupElement {
    int chi = 1;  // 1,3,5,7
    int s = 0;    // mod 2
    int k = 0;    // mod 4
    int m = 0;    // mod 4

    GroupElement() = default;
    GroupElement(int chi_, int s_, int k_, int m_);

    std::uint8_t code() const;  // 0..127, identity = 0
    static GroupElement from_code(std::uint8_t c);
    GroupElement inverse() const;
    std::string to_string() const;  // "(chi,s,k,m)"

    bool operator==(const GroupElement& o) const { return code() == o.code(); }
    bool operator<(const GroupElement& o) const { return code() < o.code(); }
};

// g * h means: apply h first, then g.
GroupElement operator*(const GroupElement& g, const GroupElement& h);
GroupElement power(const GroupElement& g, int e);
int order(const GroupElement& g);

namespace gen {
GroupElement identity();
GroupElement sigma();
GroupElement tau();
GroupElement iota_a();
GroupElement iota_b();
GroupElement iota_c();
}  // namespace gen

// Parse words such as "iota_a iota_b^2 sigma" or "ia*ib*sigma*tau" (left to right product).
GroupElement parse_word(const std::string& w);

// sign of the action on sqrt(2) = zeta + zeta^{-1}
int sqrt2_sign(int chi);

CurveLabel act_on_curve(const GroupElement& g, const CurveLabel& l);
std::array<std::uint8_t, kCurveCount> curve_permutation(const GroupElement& g);

using Mat8 = std::array<std::array<long, 8>, 8>;  // acts on column vectors
Mat8 matrix_of(const GroupElement& g);
Mat8 mat_mul(const Mat8& a, const Mat8& b);
PicClass mat_apply(const Mat8& a, const PicClass& v);
Mat8 mat_identity();

using ElementMask = std::bitset<128>;

struct Subgroup {
    std::vector<GroupElement> elements;  // sorted by code
    std::vector<GroupElement> generators;
    ElementMask mask;
    bool ontoQ = false;

    std::size_t order() const { return elements.size(); }
    bool contains(const GroupElement& g) const { return mask.test(g.code()); }
    bool contains(const Subgroup& o) const { return (o.mask & ~mask).none(); }
    bool abelian() const;
    std::string generators_string() const;
};

Subgroup generate_subgroup(const std::vector<GroupElement>& gens);
Subgroup subgroup_from_mask(const ElementMask& mask);
// greedy minimal-ish generating set (each new generator outside the span so far)
std::vector<GroupElement> small_generating_set(const Subgroup& s);

// H = <iota_a, iota_b, iota_a iota_b iota_c>, G0/H = <sigma, tau>
const Subgroup& normal_subgroup_H();
const Subgroup& generic_group();

Subgroup conjugate(const Subgroup& s, const GroupElement& g);  // g s g^{-1}

// Automorphisms of G0 induced by permuting the roles of (A,B,C).
// index 0 = identity; 6 in total.
GroupElement relabel(const GroupElement& g, int perm);
Subgroup relabel(const Subgroup& s, int perm);
// the permutation of (A,B,C) realized by relabel(.,perm): new[i] = old[p[i]]
std::array<int, 3> relabel_permutation(int perm);

// every subgroup of G0
const std::vector<Subgroup>& all_subgroups();
// raw list of subgroups surjecting onto Q
std::vector<Subgroup> raw_subgroups_onto_Q();
// one representative per class under G0-conjugacy and relabeling, deterministic order
std::vector<Subgroup> enumerate_subgroups_onto_Q();
// canonical key: least element mask over conjugates and relabelings
ElementMask canonical_mask(const Subgroup& s);
// is a conjugate of some relabeling of `small` contained in `big`?
bool contained_up_to_symmetry(const Subgroup& small, const Subgroup& big);

// abelian normal subgroup N and abelian complement K with G = N x| K
struct SemidirectWitness {
    bool found = false;
    Subgroup normal, complement;
};
SemidirectWitness find_abelian_semidirect(const Subgroup& g);

// 2-group invariants
std::vector<long> abelianization_divisors(const Subgroup& g);
int exponent(const Subgroup& g);
std::vector<int> orbit_lengths(const Subgroup& g);  // sorted

}  // namespace dp2

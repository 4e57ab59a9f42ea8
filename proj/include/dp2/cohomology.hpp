#pragma once

#include "dp2/errors.hpp"
#include "dp2/galois0.hpp"
#include "dp2/intlin.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dp2 {

// A finite group given by its multiplication table, acting on Z^dim by integer matrices.
// Element 0 is the identity.
struct GModule {
    std::size_t dim = 0;
    std::vector<std::vector<std::size_t>> table;  // table[a][b] = a*b
    std::vector<std::size_t> inverse;
    std::vector<IntMatrix> mats;                  // action of each element
    std::vector<std::size_t> generators;          // element indices generating the group
    std::vector<GroupElement> g0_elements;        // set when the group is a subgroup of G0

    std::size_t order() const { return table.size(); }
    std::size_t mul(std::size_t a, std::size_t b) const { return table[a][b]; }
    std::size_t power(std::size_t g, long e) const;
    std::size_t element_order(std::size_t g) const;
    IntVec act(std::size_t g, const IntVec& m) const;
    std::optional<std::size_t> index_of(const GroupElement& g) const;
    std::string element_name(std::size_t g) const;

    // Picard module of a subgroup of G0
    static GModule from_subgroup(const Subgroup& s);
    // validates identity, inverses and the homomorphism property on generators
    static GModule from_table(std::vector<std::vector<std::size_t>> table, std::vector<IntMatrix> mats,
                              std::vector<std::size_t> generators);
    // Z/n x Z/m x ... with commuting generator matrices
    static GModule abelian(const std::vector<std::size_t>& orders, const std::vector<IntMatrix>& gen_mats);
    static GModule cyclic(std::size_t n, const IntMatrix& g) { return abelian({n}, {g}); }
    // dihedral group of order 2n: g^n = h^2 = (gh)^2 = e; element g^i h^j has index i + n*j
    static GModule dihedral(std::size_t n, const IntMatrix& g, const IntMatrix& h);

    // subgroup given by a set of element indices (must be closed), reindexed; old indices kept in the map
    GModule restrict_to(const std::vector<std::size_t>& elements, std::vector<std::size_t>* old_index = nullptr) const;
    // the action of G on a G-stable sublattice with the given basis, in basis coordinates
    GModule on_sublattice(const std::vector<IntVec>& basis) const;
};

// elements of the subgroup generated by gens
std::vector<std::size_t> generated_subgroup(const GModule& m, const std::vector<std::size_t>& gens);

struct H0Result {
    std::size_t rank = 0;
    std::vector<IntVec> basis;
};

H0Result invariants_H0(const GModule& m);
// invariants of a subgroup (given by element indices)
H0Result invariants_of(const GModule& m, const std::vector<std::size_t>& elements);

struct Cocycle {
    std::string backend;                // "presentation", "standard", or a resolution kind
    std::vector<std::size_t> positions; // element index for each value (empty for resolution slots)
    std::vector<IntVec> values;
};

struct CohomologyResult {
    AbelianGroupType group;
    std::vector<Cocycle> representatives;  // one per cyclic factor
    std::vector<long> orders;
    std::string backend;
    // lattice data used to express arbitrary cocycles in terms of the generators
    std::vector<IntVec> coboundaries;  // spanning set of B^1 in the backend's cochain coordinates
};

// Polycyclic presentation along a composition series with prime relative orders.
struct PcPresentation {
    std::vector<std::size_t> gens;      // element indices a_1..a_r
    std::vector<long> relative_orders;  // p_1..p_r
    struct Relation {
        std::vector<std::size_t> lhs, rhs;  // words in generator positions, equal in the group
    };
    std::vector<Relation> relations;
    std::vector<std::vector<long>> exponents;  // normal form exponent vector of every element
};

PcPresentation pc_presentation(const GModule& m);
std::size_t evaluate_word(const GModule& m, const PcPresentation& p, const std::vector<std::size_t>& word);

CohomologyResult h1_presentation(const GModule& m);
CohomologyResult h1_standard(const GModule& m, std::size_t max_order = 32);

// cocycle checks for the inhomogeneous standard complex (values indexed by element)
bool is_standard_cocycle(const GModule& m, const std::vector<IntVec>& f);
bool is_standard_coboundary(const GModule& m, const std::vector<IntVec>& f);
// extend generator values (presentation cocycle) to all elements
std::vector<IntVec> expand_presentation_cocycle(const GModule& m, const PcPresentation& p,
                                                const std::vector<IntVec>& gen_values);

// Group-ring elements and the small resolutions of Z for cyclic, bicyclic, tricyclic and dihedral groups.
using GroupRingElem = std::map<std::size_t, long>;

GroupRingElem ring_mul(const GModule& m, const GroupRingElem& x, const GroupRingElem& y);
GroupRingElem ring_add(const GroupRingElem& x, const GroupRingElem& y, long sy = 1);
GroupRingElem norm_element(const GModule& m, std::size_t g);           // N_g
GroupRingElem partial_norm(const GModule& m, std::size_t g, long i);   // 1 + g + ... + g^{i-1}
GroupRingElem delta_element(std::size_t g);                            // 1 - g
IntMatrix ring_matrix(const GModule& m, const GroupRingElem& x);       // action on M

enum class ResolutionKind { cyclic, bicyclic, tricyclic, dihedral };
std::string to_string(ResolutionKind k);

struct ResolutionComplex {
    ResolutionKind kind = ResolutionKind::cyclic;
    std::vector<std::size_t> gens;  // g, h, u
    std::vector<long> orders;
    // boundary maps: d1 : Z[G]^k1 -> Z[G], d2 : Z[G]^k2 -> Z[G]^k1, column j = image of e_j
    std::vector<std::vector<GroupRingElem>> d1, d2;
    // sigma1[x] = image of the standard generator attached to element x, in Z[G]^k1
    std::vector<std::vector<GroupRingElem>> sigma1;
};

// validates that the generators present the group in the requested shape
ResolutionComplex build_resolution(const GModule& m, ResolutionKind kind, const std::vector<std::size_t>& gens);
// tricyclic comparison map with the last partial norm running to u^k instead of u^{k-1}
ResolutionComplex build_resolution_variant_full_norm(const GModule& m, const std::vector<std::size_t>& gens);
// formal checks: d1 * d2 = 0, and d1(sigma1(x)) = x - 1 for every x
bool boundaries_compose_to_zero(const GModule& m, const ResolutionComplex& r);
bool sigma1_is_chain_map(const GModule& m, const ResolutionComplex& r);

// dual maps on M: d0 : M -> M^k1, d1 : M^k1 -> M^k2
IntMatrix dual_d0(const GModule& m, const ResolutionComplex& r);
IntMatrix dual_d1(const GModule& m, const ResolutionComplex& r);

CohomologyResult h1_via_resolution(const GModule& m, const ResolutionComplex& r);
bool is_resolution_cocycle(const GModule& m, const ResolutionComplex& r, const std::vector<IntVec>& v);
bool is_resolution_coboundary(const GModule& m, const ResolutionComplex& r, const std::vector<IntVec>& v);
// standard inhomogeneous cocycle f(x) = sum_i sigma1(x)_i . v_i
std::vector<IntVec> resolution_to_standard(const GModule& m, const ResolutionComplex& r,
                                           const std::vector<IntVec>& v);

// try to recognise the group with the given generators as one of the four shapes
std::optional<ResolutionComplex> detect_resolution(const GModule& m);

// coordinates of a standard cocycle class in terms of a result's generators (mod orders)
std::vector<long> class_coordinates_standard(const GModule& m, const CohomologyResult& res,
                                             const std::vector<IntVec>& f);

// ---------------------------------------------------------------------------------------------
// Split extensions 1 -> H -> G -> Q -> 1 and the transgression d2 : H^1(H,M)^Q -> H^2(Q,M^H).

struct ExtensionData {
    std::vector<std::size_t> h_generators;  // independent cyclic generators of the abelian normal H
    std::vector<std::size_t> q_generators;  // commuting generators of a complement S (1 or 2)
};

// largest abelian normal subgroup with a complement of the required shape
std::optional<ExtensionData> find_split_extension(const GModule& m);

// Cochains of the bicomplex Hom_H(Z[G^{n+1}], M):
// degree 0 stored as phi(q) for q in S, degree 1 as Psi(q, h' q') indexed [q][h'][q'].
class ExtensionChase {
public:
    ExtensionChase(const GModule& m, const ExtensionData& ext);

    std::size_t q_size() const { return s_elems_.size(); }
    std::size_t h_size() const { return h_elems_.size(); }
    const std::vector<std::size_t>& h_elements() const { return h_elems_; }
    const std::vector<std::size_t>& s_elements() const { return s_elems_; }
    const GModule& h_module() const { return h_mod_; }  // H acting on M, indices follow h_elements()

    using Cochain0 = std::vector<IntVec>;  // size |Q|
    using Cochain1 = std::vector<IntVec>;  // size |Q| * |H| * |Q|

    // chi^1 applied to a standard H-cocycle (indexed like h_elements())
    Cochain1 lift(const std::vector<IntVec>& f) const;
    // horizontal differentials of the Q-resolution
    std::vector<Cochain1> horizontal1(const Cochain1& psi) const;
    std::vector<Cochain0> horizontal0(const std::vector<Cochain0>& v0) const;
    // vertical differential d_0^{.,0}
    Cochain1 vertical(const Cochain0& phi) const;
    std::optional<Cochain0> solve_vertical(const Cochain1& v) const;
    // constant value m of a degree-0 cochain that lies in i(M^H), if it does
    std::optional<IntVec> invariant_part(const Cochain0& phi) const;
    // is (w_1,...) a coboundary in the Q-complex of M^H
    bool is_q_coboundary(const std::vector<IntVec>& w) const;

    struct Transgression {
        bool q_invariant = false;
        bool d2_zero = false;
        std::vector<IntVec> w;  // values in M^H representing d2
    };
    Transgression transgress(const std::vector<IntVec>& f) const;

    GModule q_module_on_invariants() const;  // Q acting on M^H in basis coordinates
    const std::vector<IntVec>& invariant_basis() const { return mh_basis_; }

private:
    const GModule& m_;
    std::vector<std::size_t> h_elems_, s_elems_;
    std::vector<long> h_pos_, s_pos_;                   // element -> position or -1
    std::vector<std::size_t> split_h_, split_q_;        // g = h q
    std::vector<std::size_t> q_gens_;
    std::vector<long> q_orders_;
    GModule h_mod_;
    std::vector<IntVec> mh_basis_;

    std::size_t idx1(std::size_t q, std::size_t h, std::size_t q2) const {
        return (q * h_elems_.size() + h) * s_elems_.size() + q2;
    }
    Cochain0 act0(std::size_t qt, const Cochain0& phi) const;
    Cochain1 act1(std::size_t qt, const Cochain1& psi) const;
    IntVec eval0(const Cochain0& phi, std::size_t g) const;
};

struct FiveTermResult {
    AbelianGroupType h1_q_invariants;     // H^1(Q, M^H)
    AbelianGroupType h1_h;                // H^1(H, M)
    std::size_t invariant_classes = 0;    // |H^1(H,M)^Q|
    std::size_t d2_kernel = 0;            // |ker d2|
    std::vector<ExtensionChase::Transgression> generator_images;  // per generator of H^1(H,M)
    std::size_t h1_g_order = 0;           // |H^1(Q,M^H)| * |ker d2|
    std::vector<IntVec> invariant_basis;  // M^H
};

FiveTermResult five_term_with_d2(const GModule& m, const ExtensionData& ext);

struct Index2Entry {
    std::vector<std::size_t> subgroup;       // element indices of the index-2 subgroup K
    std::vector<IntVec> invariant_basis;     // M^K
    AbelianGroupType h1;                     // H^1(G/K, M^K)
    std::vector<IntVec> representatives;     // (-1)-eigenvectors v with v + g v = 0
    std::vector<std::vector<long>> images;   // inflated classes in coordinates of H^1(G,M)
};

struct Index2Report {
    CohomologyResult h1_g;
    std::vector<Index2Entry> entries;
    std::size_t generated_order = 0;  // order of the subgroup of H^1(G,M) generated by all images
};

Index2Report index2_cyclic_generators(const GModule& m);

struct Fingerprint {
    std::size_t order = 0;
    std::vector<long> abelianization;
    int exponent = 0;
    std::vector<int> orbit_lengths;
    std::vector<std::size_t> index2_invariant_ranks;  // sorted
    std::size_t invariant_rank = 0;
    AbelianGroupType h1;
    auto operator<=>(const Fingerprint&) const = default;
};

Fingerprint fingerprint(const Subgroup& s);

}  // namespace dp2

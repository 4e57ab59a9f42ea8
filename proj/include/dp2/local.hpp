#pragma once

#include "dp2/kummer.hpp"
#include "dp2/numfield.hpp"

#include <array>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dp2 {

inline constexpr long kRealPlace = 0;
std::string place_name(long place);  // "R", "Q_2", "Q_17"

// Hilbert symbol (a,b)_v in {+1,-1}; place 0 is the real place.
int hilbert_symbol(const Rational& a, const Rational& b, long place);
// (a, p^v u)_p for a p-adic unit u known modulo p (odd p) or modulo 8 (p = 2)
int hilbert_symbol_unit(const Rational& a, long p, long v, i64 u_residue);

struct Surface {
    i64 A = 0, B = 0, C = 0;
};

// primes dividing 2ABC
std::vector<long> bad_primes(const Surface& S);

enum class Normalization { first_unit, x_one, z_one };
enum class PointStatus { liftable, refutable, undetermined };
std::string to_string(PointStatus s);

struct PointClass {
    std::array<i64, 4> wxyz{};  // residues modulo p^k
    PointStatus status = PointStatus::undetermined;
};

struct PadicOptions {
    Normalization norm = Normalization::first_unit;
    double budget = 1073741824.0;  // cells
};

// Primitive tuples (w,x,y,z) modulo p^k on w^2 = Ax^4 + By^4 + Cz^4, one per class of the
// scaling (w,x,y,z) -> (u^2 w, u x, u y, u z).  Liftable: the Hensel bound holds (the least
// valuation m of a free partial derivative satisfies 2m < k).  Refutable: no solution modulo
// p^(k+1) reduces to the tuple.
std::vector<PointClass> padic_point_classes(const Surface& S, long p, int k, const PadicOptions& opt = {});

// Local invariants are stored in quarters: 0, 1, 2, 3 stand for 0, 1/4, 1/2, 3/4.
using InvariantVector = std::vector<int>;
std::string invariant_string(int quarters);
std::string invariant_vector_string(const InvariantVector& v);

// Returns the invariant vector when it is constant on the class of `pt` modulo p^level.
using CellEvaluator = std::function<std::optional<InvariantVector>(const std::array<i64, 4>& pt, int level)>;

struct Exploration {
    std::set<InvariantVector> attained;
    std::size_t certified = 0, refuted = 0, undetermined = 0;
    int deepest = 0;
};

// Adaptive refinement of the residue classes of S(Q_p).  A class modulo p^j whose Hensel bound
// holds with derivative valuation m contains a genuine point modulo p^(j-m); its invariant is
// recorded once the evaluator determines it at that coarser level.  Classes without lifts are
// refuted; classes still open at max_level are counted as undetermined.
Exploration explore_padic(const Surface& S, long p, const CellEvaluator& eval, int start_level, int max_level,
                          Normalization norm = Normalization::first_unit, unsigned threads = 1);

int default_max_level(long p);  // 12 for p = 2, 6 otherwise

struct RationalFunction {
    MultiPoly num, den;  // weighted-homogeneous in (w,x,y,z) of equal degree, w of weight 2
};
RationalFunction make_function(const std::string& num, const std::string& den, const FieldPtr& K,
                               const std::map<std::string, NFElem>& constants = {});
inline const std::vector<std::string>& surface_vars() {
    static const std::vector<std::string> v{"w", "x", "y", "z"};
    return v;
}

struct QuaternionClass {
    Rational d;
    RationalFunction g;
    std::vector<RationalFunction> equivalent;  // further functions giving the same element of Br(S)
    std::string label;
};

struct LocalProfile {
    long place = kRealPlace;
    long prime_power_base = 0;
    int level = 0;
    std::set<InvariantVector> attained;
    std::size_t undetermined = 0;
    std::size_t samples = 0;
    std::size_t skipped = 0;  // real samples where the class could not be read off
    std::string method;  // exact-enumeration, sampling, good-reduction

    bool inconclusive() const { return undetermined > 0; }
    std::string modulus() const;  // "2^5", "17^2", "R"
};

struct ProfileOptions {
    int start_level = 1;
    int max_level = 0;  // 0: default_max_level(p)
    std::size_t real_samples = 1000000;
    unsigned threads = 1;
};

// Joint profile of several classes at one place (one coordinate per class).
LocalProfile quaternion_profile(const std::vector<QuaternionClass>& classes, const Surface& S, long place,
                                const ProfileOptions& opt = {});
LocalProfile quaternion_profile(const QuaternionClass& q, const Surface& S, long place, const ProfileOptions& opt = {});

// Real points: deterministic spherical sample of (x,y,z) with both signs of w.
// The evaluator returns nothing at samples where the class cannot be read off.
using RealEvaluator = std::function<std::optional<InvariantVector>(const std::array<double, 4>&)>;
LocalProfile real_profile(const Surface& S, const RealEvaluator& eval, std::size_t samples);

enum class Conclusion { obstructed, not_obstructed_by_class, inconclusive };
std::string to_string(Conclusion c);

struct Verdict {
    std::vector<LocalProfile> profiles;
    Conclusion conclusion = Conclusion::inconclusive;
    bool relies_on_sampling = false;
    std::string note;
};

// Minkowski-sum rule over the given places: obstructed when no choice of attained vectors sums
// to zero in every coordinate and no profile is inconclusive.
Verdict verdict(std::vector<LocalProfile> profiles);

struct SolvabilityCertificate {
    long p = 0;
    bool solvable = false;
    std::string method;  // "smooth point mod p" or "Weil bound"
};
// For p not dividing 2ABC: a smooth point modulo p lifts by Hensel's lemma.
SolvabilityCertificate good_reduction_solvable(const Surface& S, long p);

struct U2V2 {
    i64 u = 0, v = 0;
    int s = 0;  // (-1)^((u-v)/2)
};
U2V2 represent_u2_plus_2v2(i64 p);  // p prime, p = 3 mod 16
bool lemma_check(i64 p);

struct TranscriptEntry {
    std::string claim;
    bool ok = false;
    std::string detail;
};

enum class ClassKind { quaternion, cyclic_order4 };

struct ExampleClass {
    std::string name;
    Surface S;
    ClassKind kind = ClassKind::quaternion;
    std::vector<QuaternionClass> classes;          // quaternion kind: jointly analysed classes
    std::vector<RationalFunction> cyclic_functions;  // cyclic kind: f_1, f_2 over Q(i)
    std::vector<TranscriptEntry> transcript;

    bool verified() const;
};

ExampleClass build_ex71();
ExampleClass build_ex72(i64 p);
struct ConicPoint {
    Rational r1, r2, s1, s2, t0;  // r0 = r1 + r2 theta, s0 = s1 + s2 theta, theta^2 = -ABC
};
// Generic recipe: needs the 31-product genericity test and a point on A r^2 + B s^2 + C t^2 = 0
// over Q(theta); searched within `bound` unless supplied.
ExampleClass build_ex73(const Surface& S, std::optional<ConicPoint> point = std::nullopt, long bound = 40);
ExampleClass build_ex74();
ExampleClass build_ex75();

bool generic_triple(const Surface& S);  // no A^a B^b C^c (-1)^d 2^e is a square, except the trivial one
std::optional<ConicPoint> find_conic_point(const Surface& S, long bound);

// Joint profiles of quaternion classes at R and at every prime dividing 2ABC, then the verdict.
Verdict quaternion_verdict(const Surface& S, const std::vector<QuaternionClass>& classes, const ProfileOptions& opt = {});

// Profiles at R and at every prime dividing 2ABC, then the verdict.
Verdict example_verdict(const ExampleClass& ex, const ProfileOptions& opt = {});

struct QuarticResidueReport {
    long p = 0;
    i64 sqrt_minus_one = 0;           // the residue substituted for i
    std::set<i64> values;             // unit parts of f modulo p over the point classes
    std::map<i64, bool> quartic_residue;
    std::set<int> quarters;           // unit^((p-1)/4) = sqrt_minus_one^q
    std::size_t undetermined = 0;
    int level = 0;
};
// f over Q(i); p = 1 mod 4.
QuarticResidueReport quartic_residue_profile(const RationalFunction& f, const Surface& S, long p, int k,
                                             unsigned threads = 1);

using GaussianResidue = std::pair<int, int>;  // a + b i modulo 32
const std::vector<GaussianResidue>& ex75_mod32_table();

struct Mod32Report {
    bool all_members = false;
    std::size_t classes = 0, undetermined = 0;
    std::set<GaussianResidue> values;
    int level = 0;
};
// At every 2-adic point class, f_1 or f_2 is 2-adically integral with value modulo 32 in the table.
Mod32Report mod32_membership(const Surface& S, const std::vector<RationalFunction>& fs,
                             const std::vector<GaussianResidue>& table, unsigned threads = 1);

struct NormWitness {
    GaussianResidue target;
    bool found = false;
    int scale = 0;          // c = y / 2^scale
    std::array<i64, 8> y{};  // y in Z[i][r]/(r^4 - 17) modulo 2^(5 + 4 scale), basis i^a r^b at a + 2b
};
// Search for c with N_gh(c) = 1 and N_g(c) equal to the target modulo 32, preferring the least scale.
std::vector<NormWitness> norm_image_witnesses(const std::vector<GaussianResidue>& targets, int box = 3);

}  // namespace dp2

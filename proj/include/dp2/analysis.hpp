#pragma once

#include "dp2/cohomology.hpp"
#include "dp2/galois0.hpp"
#include "dp2/intlin.hpp"
#include "dp2/local.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

// End-to-end analysis of the surfaces w^2 = A x^4 + B y^4 + C z^4.
namespace dp2 {

// A maximal subgroup of G0 surjecting onto Q, with the square class forcing containment:
// the Galois group lies in the row's group exactly when factor * A^a B^b C^c is a rational square.
struct Table2Row {
    int index = 0;  // 1-based
    std::vector<std::string> generators;
    AbelianGroupType brauer;
    std::size_t pic_rank = 0;
    i64 factor = 1;
    std::array<int, 3> exponents{};
    std::array<i64, 3> example{};

    Subgroup group() const;
    std::string condition() const;  // "-2ABC square"
    std::string generators_string() const;
    bool condition_holds(i64 A, i64 B, i64 C) const;
};

const std::vector<Table2Row>& table2_rows();

// The unique row whose group contains g up to G0-conjugacy and relabeling, if exactly one does.
std::optional<int> table2_match(const Subgroup& g);

// The possible Br(S)/Br(Q): (1), Z/2, Z/4, (Z/2)^2, Z/4 + Z/2, (Z/2)^3.
const std::vector<AbelianGroupType>& brauer_types();

enum class Backend { presentation, standard, resolution, all };
Backend parse_backend(const std::string& s);  // throws std::invalid_argument

struct BackendResult {
    std::string backend;
    std::optional<AbelianGroupType> group;  // empty when the backend does not apply
    std::string note;
};

struct AnalysisOptions {
    Backend backend = Backend::presentation;
};

struct AnalysisReport {
    Surface surface;
    Subgroup galois;
    std::size_t pic_rank = 0;
    AbelianGroupType brauer;
    std::string brauer_backend;
    std::vector<BackendResult> cross_checks;
    std::optional<int> table2_row;
};

// Throws std::invalid_argument for zero coefficients, CapacityError beyond the factorization budget
// and InvariantError when backends disagree or the result leaves the list of possible types.
AnalysisReport analyze_surface(i64 A, i64 B, i64 C, const AnalysisOptions& opt = {});

struct ScanEntry {
    Subgroup group;
    Fingerprint fingerprint;
};

struct ScanReport {
    std::vector<ScanEntry> entries;      // one per class up to G0-conjugacy and relabeling
    std::vector<AbelianGroupType> h1_types;  // sorted, distinct
    std::size_t fingerprint_classes = 0;  // F
    std::size_t enumerated_classes = 0;   // U
    bool types_allowed = false;
    bool trivial_implies_rank2 = false;
};

// Throws InvariantError naming the offending subgroup when an assertion fails.
ScanReport scan_theorem(unsigned threads = 1);

struct ObstructionReport {
    std::string recipe;  // "ex71", "ex72", "ex73", "ex74", "ex75"
    ExampleClass example;
    Verdict verdict;
    std::optional<Verdict> two_torsion;  // the quaternion class alone, for the cyclic example
};

struct RecipeNotImplemented : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Named examples: "ex71", "ex72:<p>", "ex73", "ex74", "ex75".
std::optional<Surface> example_surface(const std::string& name);

// Chooses the recipe for (A,B,C): the two families, the two fixed surfaces and the generic recipe.
ObstructionReport obstruct(const Surface& S, const ProfileOptions& opt = {}, long conic_bound = 40);

}  // namespace dp2

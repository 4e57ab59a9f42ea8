#include "dp2/analysis.hpp"

#include "dp2/errors.hpp"
#include "dp2/kummer.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace dp2 {

namespace {

AbelianGroupType type_of(std::vector<long> divisors) {
    AbelianGroupType t;
    std::sort(divisors.begin(), divisors.end());
    t.divisors = divisors;
    return t;
}

Table2Row row(int index, std::vector<std::string> gens, std::vector<long> br, std::size_t pic, i64 factor,
              std::array<int, 3> exps, std::array<i64, 3> example) {
    Table2Row r;
    r.index = index;
    r.generators = std::move(gens);
    r.brauer = type_of(std::move(br));
    r.pic_rank = pic;
    r.factor = factor;
    r.exponents = exps;
    r.example = example;
    return r;
}

}  // namespace

const std::vector<Table2Row>& table2_rows() {
    static const std::vector<Table2Row> rows = {
        row(1, {"iota_a sigma", "iota_a iota_b", "iota_a iota_c", "tau"}, {2}, 1, -2, {1, 1, 1}, {-15, 10, 3}),
        row(2, {"iota_a sigma", "iota_b", "iota_c", "tau"}, {2}, 1, -2, {1, 0, 0}, {-2, 3, 5}),
        row(3, {"iota_a sigma", "iota_a iota_b", "iota_c", "tau"}, {2}, 1, -2, {1, 1, 0}, {-6, 3, 5}),
        row(4, {"iota_a tau", "iota_a iota_b", "iota_a iota_c", "sigma"}, {2}, 1, 2, {1, 1, 1}, {3, 10, 15}),
        row(5, {"iota_a tau", "iota_b", "iota_c", "sigma"}, {2}, 1, 2, {1, 0, 0}, {2, 3, 5}),
        row(6, {"iota_a tau", "iota_a iota_b", "iota_c", "sigma"}, {2}, 1, 2, {1, 1, 0}, {-6, -3, 5}),
        row(7, {"iota_a sigma", "iota_a iota_b", "iota_a iota_c", "sigma tau"}, {}, 2, -1, {1, 1, 1}, {-15, 3, 5}),
        row(8, {"iota_a sigma", "iota_b", "iota_c", "sigma tau"}, {2}, 1, -1, {1, 0, 0}, {-1, 3, 5}),
        row(9, {"iota_a sigma", "iota_a iota_a", "iota_a iota_b", "iota_c", "sigma tau"}, {2}, 1, -1, {1, 1, 0},
            {-63, 7, 15}),
        row(10, {"iota_a iota_b", "iota_a iota_c", "sigma", "tau"}, {2}, 1, 1, {1, 1, 1}, {3, 5, 15}),
        row(11, {"iota_b", "iota_c", "sigma", "tau"}, {2}, 1, 1, {1, 0, 0}, {1, 3, 5}),
        row(12, {"iota_a iota_a", "iota_a iota_b", "iota_c", "sigma", "tau"}, {2, 2}, 1, 1, {1, 1, 0}, {-63, -7, 5}),
    };
    return rows;
}

Subgroup Table2Row::group() const {
    std::vector<GroupElement> gens;
    for (auto& w : generators) gens.push_back(parse_word(w));
    return generate_subgroup(gens);
}

std::string Table2Row::generators_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) s += (i ? ", " : "") + generators[i];
    return s + ">";
}

std::string Table2Row::condition() const {
    std::string s = factor == -1 ? "-" : factor == 1 ? "" : std::to_string(factor);
    const char* names = "ABC";
    for (int i = 0; i < 3; ++i)
        if (exponents[i]) s += names[i];
    return s + " square";
}

bool Table2Row::condition_holds(i64 A, i64 B, i64 C) const {
    validate_coefficients(A, B, C);
    int sign = 1;
    std::map<i64, int> parity;
    auto absorb = [&](i64 x) {
        if (x < 0) sign = -sign;
        for (auto& [p, e] : factorize(x)) parity[p] ^= e & 1;
    };
    absorb(factor);
    const i64 coeffs[3] = {A, B, C};
    for (int i = 0; i < 3; ++i)
        if (exponents[i]) absorb(coeffs[i]);
    if (sign < 0) return false;
    return std::all_of(parity.begin(), parity.end(), [](auto& kv) { return kv.second == 0; });
}

std::optional<int> table2_match(const Subgroup& g) {
    std::optional<int> found;
    for (auto& r : table2_rows())
        if (contained_up_to_symmetry(g, r.group())) {
            if (found) return std::nullopt;
            found = r.index;
        }
    return found;
}

const std::vector<AbelianGroupType>& brauer_types() {
    static const std::vector<AbelianGroupType> types = {type_of({}),     type_of({2}),    type_of({4}),
                                                        type_of({2, 2}), type_of({2, 4}), type_of({2, 2, 2})};
    return types;
}

Backend parse_backend(const std::string& s) {
    if (s == "presentation") return Backend::presentation;
    if (s == "standard") return Backend::standard;
    if (s == "resolution") return Backend::resolution;
    if (s == "all") return Backend::all;
    throw std::invalid_argument("unknown backend '" + s + "' (presentation, standard, resolution, all)");
}

namespace {

BackendResult run_backend(const GModule& m, Backend b) {
    BackendResult r;
    switch (b) {
        case Backend::presentation:
            r.backend = "presentation";
            r.group = h1_presentation(m).group;
            break;
        case Backend::standard:
            r.backend = "standard";
            try {
                r.group = h1_standard(m, 32).group;
            } catch (const CapacityError& e) {
                r.note = e.what();
            }
            break;
        case Backend::resolution: {
            r.backend = "resolution";
            auto res = detect_resolution(m);
            if (res) {
                r.group = h1_via_resolution(m, *res).group;
                r.backend += " (" + to_string(res->kind) + ")";
            } else {
                r.note = "group is not abelian on at most three generators or dihedral";
            }
            break;
        }
        case Backend::all:
            throw std::logic_error("run_backend needs a single backend");
    }
    return r;
}

}  // namespace

AnalysisReport analyze_surface(i64 A, i64 B, i64 C, const AnalysisOptions& opt) {
    validate_coefficients(A, B, C);
    AnalysisReport rep;
    rep.surface = {A, B, C};
    rep.galois = galois_group(A, B, C);
    GModule m = GModule::from_subgroup(rep.galois);
    rep.pic_rank = invariants_H0(m).rank;

    std::vector<Backend> order;
    if (opt.backend == Backend::all)
        order = {Backend::presentation, Backend::standard, Backend::resolution};
    else
        order = {opt.backend};
    for (Backend b : order) {
        BackendResult r = run_backend(m, b);
        if (!rep.brauer_backend.empty()) {
            rep.cross_checks.push_back(r);
            if (r.group && *r.group != rep.brauer)
                throw InvariantError("backend " + r.backend + " gives " + r.group->to_string() + " but " +
                                     rep.brauer_backend + " gives " + rep.brauer.to_string());
            continue;
        }
        if (!r.group) throw CapacityError("backend " + r.backend + " does not apply: " + r.note);
        rep.brauer = *r.group;
        rep.brauer_backend = r.backend;
    }

    auto& allowed = brauer_types();
    if (std::find(allowed.begin(), allowed.end(), rep.brauer) == allowed.end())
        throw InvariantError("H^1 = " + rep.brauer.to_string() + " is not one of the possible types");
    if (rep.pic_rank == 1 && rep.brauer.trivial())
        throw InvariantError("trivial H^1 with Picard rank 1");
    rep.table2_row = table2_match(rep.galois);
    return rep;
}

ScanReport scan_theorem(unsigned threads) {
    ScanReport rep;
    auto classes = enumerate_subgroups_onto_Q();
    std::vector<Fingerprint> fps(classes.size());
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i; (i = next++) < classes.size();) fps[i] = fingerprint(classes[i]);
    };
    threads = std::max(1u, threads);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    auto& allowed = brauer_types();
    std::set<Fingerprint> distinct;
    std::set<AbelianGroupType> types;
    rep.types_allowed = rep.trivial_implies_rank2 = true;
    for (std::size_t i = 0; i < classes.size(); ++i) {
        const Fingerprint& f = fps[i];
        if (std::find(allowed.begin(), allowed.end(), f.h1) == allowed.end())
            throw InvariantError("H^1 = " + f.h1.to_string() + " for " + classes[i].generators_string());
        if (f.h1.trivial() && f.invariant_rank < 2)
            throw InvariantError("trivial H^1 with invariant rank " + std::to_string(f.invariant_rank) + " for " +
                                 classes[i].generators_string());
        distinct.insert(f);
        types.insert(f.h1);
        rep.entries.push_back({classes[i], f});
    }
    rep.h1_types.assign(types.begin(), types.end());
    rep.fingerprint_classes = distinct.size();
    rep.enumerated_classes = classes.size();
    return rep;
}

std::optional<Surface> example_surface(const std::string& name) {
    if (name == "ex71") return Surface{-25, -5, 45};
    if (name == "ex73") return Surface{-126, -91, 78};
    if (name == "ex74") return Surface{34, 34, 34};
    if (name == "ex75") return Surface{-9826, -2, 136};
    if (name.rfind("ex72", 0) == 0) {
        i64 p = 3;
        if (name.size() > 4) {
            if (name[4] != ':') return std::nullopt;
            try {
                std::size_t used = 0;
                p = std::stoll(name.substr(5), &used);
                if (used != name.size() - 5) return std::nullopt;
            } catch (const std::exception&) {
                return std::nullopt;
            }
        }
        return Surface{-2 * p, -p, 2};
    }
    return std::nullopt;
}

ObstructionReport obstruct(const Surface& S, const ProfileOptions& opt, long conic_bound) {
    validate_coefficients(S.A, S.B, S.C);
    ObstructionReport rep;
    auto same = [&](i64 a, i64 b, i64 c) { return S.A == a && S.B == b && S.C == c; };
    i64 p = -S.B;
    if (same(-25, -5, 45)) {
        rep.recipe = "ex71";
        rep.example = build_ex71();
    } else if (p > 0 && same(-2 * p, -p, 2) && p % 16 == 3 && is_prime_u64(static_cast<std::uint64_t>(p))) {
        rep.recipe = "ex72";
        rep.example = build_ex72(p);
    } else if (same(34, 34, 34)) {
        rep.recipe = "ex74";
        rep.example = build_ex74();
    } else if (same(-9826, -2, 136)) {
        rep.recipe = "ex75";
        rep.example = build_ex75();
    } else if (generic_triple(S)) {
        auto pt = find_conic_point(S, conic_bound);
        if (!pt)
            throw CapacityError("no point on A r^2 + B s^2 + C t^2 = 0 with coordinates up to " +
                                std::to_string(conic_bound));
        rep.recipe = "ex73";
        rep.example = build_ex73(S, pt);
    } else {
        std::ostringstream os;
        os << "recipe not implemented for (" << S.A << ", " << S.B << ", " << S.C
           << "): covered are generic triples, the family (-2p,-p,2) with p prime and p = 3 mod 16, "
              "and the surfaces (-25,-5,45), (34,34,34) and (-9826,-2,136)";
        throw RecipeNotImplemented(os.str());
    }
    if (!rep.example.verified()) throw InvariantError("identities of " + rep.example.name + " failed to verify");
    rep.verdict = example_verdict(rep.example, opt);
    if (rep.example.kind == ClassKind::cyclic_order4)
        rep.two_torsion = quaternion_verdict(rep.example.S, rep.example.classes, opt);
    return rep;
}

}  // namespace dp2

#include "dp2/analysis.hpp"
#include "dp2/cubic.hpp"
#include "dp2/errors.hpp"
#include "dp2/kummer.hpp"
#include "dp2/picard.hpp"
#include "dp2/report.hpp"

#include <cstdlib>
#include <iostream>
#include <set>
#include <string>

#include "CLI11.hpp"

using namespace dp2;
using json = nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, invalid_input = 2, invariant_violation = 3, inconclusive = 4 };

struct Common {
    i64 A = 0, B = 0, C = 0, D = 0;
    bool json = false;
    std::string backend = "presentation";
    int depth = 0;
    long bound = -1;
    unsigned threads = 1;
    std::size_t samples = 200000;
    std::string example;
    std::string a, b;
    long place = -1;
};

unsigned default_threads() {
    if (const char* env = std::getenv("DP2_THREADS")) {
        try {
            int n = std::stoi(env);
            if (n > 0) return static_cast<unsigned>(n);
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring DP2_THREADS=" << env << "\n";
    }
    return 1;
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string surface_string(const Surface& S) {
    auto term = [](i64 c, const char* v, bool first) {
        std::string s = c < 0 ? (first ? "-" : " - ") : (first ? "" : " + ");
        return s + std::to_string(c < 0 ? -c : c) + " " + v + "^4";
    };
    return "w^2 = " + term(S.A, "x", true) + term(S.B, "y", false) + term(S.C, "z", false);
}

ProfileOptions profile_options(const Common& c) {
    ProfileOptions o;
    o.max_level = c.depth;
    o.real_samples = c.samples;
    o.threads = c.threads;
    return o;
}

void print_verdict_text(const Verdict& v) {
    for (auto& p : v.profiles) {
        std::string inv;
        for (auto& x : p.attained) inv += (inv.empty() ? "" : " ") + invariant_vector_string(x);
        std::cout << "  " << place_name(p.place) << " (" << p.modulus() << ", " << p.method << "): {" << inv << "}";
        if (p.undetermined) std::cout << ", " << p.undetermined << " undetermined";
        std::cout << "\n";
    }
    std::cout << "conclusion   " << to_string(v.conclusion) << (v.relies_on_sampling ? " (real place sampled)" : "")
              << "\n";
    if (!v.note.empty()) std::cout << "note         " << v.note << "\n";
}

int run_analyze(const Common& c, bool with_verdict) {
    AnalysisOptions opt;
    opt.backend = parse_backend(c.backend);
    auto rep = analyze_surface(c.A, c.B, c.C, opt);
    std::optional<Verdict> v;
    std::string verdict_note;
    if (with_verdict) {
        try {
            v = obstruct(rep.surface, profile_options(c), c.bound < 0 ? 40 : c.bound).verdict;
        } catch (const RecipeNotImplemented& e) {
            verdict_note = e.what();
        }
    }
    if (c.json) {
        print(to_json(make_report_record(rep, v)));
    } else {
        std::cout << "surface      " << surface_string(rep.surface) << "\n";
        std::cout << "galois       order " << rep.galois.order() << ", " << rep.galois.generators_string() << "\n";
        std::cout << "pic rank     " << rep.pic_rank << "\n";
        std::cout << "Br(S)/Br(Q)  " << rep.brauer.to_string() << " [" << rep.brauer_backend << "]\n";
        for (auto& x : rep.cross_checks)
            std::cout << "  " << x.backend << ": " << (x.group ? x.group->to_string() : "skipped, " + x.note) << "\n";
        if (rep.table2_row) {
            auto& r = table2_rows()[*rep.table2_row - 1];
            std::cout << "maximal row  " << r.index << " " << r.generators_string() << " (" << r.condition() << ")\n";
        } else {
            std::cout << "maximal row  none (not inside a unique maximal class)\n";
        }
        if (v) print_verdict_text(*v);
        if (!verdict_note.empty()) std::cout << "verdict      " << verdict_note << "\n";
    }
    return v && v->conclusion == Conclusion::inconclusive ? inconclusive : ok;
}

int run_scan(const Common& c) {
    auto rep = scan_theorem(c.threads);
    std::vector<std::string> types;
    for (auto& t : rep.h1_types) types.push_back(t.to_string());
    bool sandwich = rep.fingerprint_classes <= 194 && 194 <= rep.enumerated_classes;
    if (c.json) {
        json j;
        j["classes"] = rep.enumerated_classes;
        j["fingerprint_classes"] = rep.fingerprint_classes;
        j["sandwich"] = sandwich;
        j["h1_types"] = types;
        j["trivial_implies_rank2"] = rep.trivial_implies_rank2;
        j["entries"] = json::array();
        for (auto& e : rep.entries)
            j["entries"].push_back({{"order", e.group.order()},
                                    {"generators", e.group.generators_string()},
                                    {"h1", e.fingerprint.h1.to_string()},
                                    {"pic_rank", e.fingerprint.invariant_rank}});
        print(j);
    } else {
        std::cout << "classes up to conjugacy and relabeling (U): " << rep.enumerated_classes << "\n";
        std::cout << "fingerprint classes (F):                    " << rep.fingerprint_classes << "\n";
        std::cout << "F <= 194 <= U: " << (sandwich ? "yes" : "no") << "\n";
        std::cout << "H^1 types:";
        for (auto& t : types) std::cout << " [" << t << "]";
        std::cout << "\ntrivial H^1 only with rank >= 2: " << (rep.trivial_implies_rank2 ? "yes" : "no") << "\n";
    }
    return sandwich ? ok : invariant_violation;
}

json transcript_json(const std::vector<TranscriptEntry>& t) {
    json a = json::array();
    for (auto& e : t) a.push_back({{"claim", e.claim}, {"ok", e.ok}, {"detail", e.detail}});
    return a;
}

int run_obstruct(const Common& c) {
    Surface S{c.A, c.B, c.C};
    if (!c.example.empty()) {
        auto named = example_surface(c.example);
        if (!named) throw std::invalid_argument("unknown example '" + c.example + "' (ex71, ex72[:p], ex73, ex74, ex75)");
        S = *named;
    }
    auto rep = obstruct(S, profile_options(c), c.bound < 0 ? 40 : c.bound);
    if (c.json) {
        json j;
        j["surface"] = {{"A", S.A}, {"B", S.B}, {"C", S.C}};
        j["recipe"] = rep.recipe;
        j["transcript"] = transcript_json(rep.example.transcript);
        j["verdict"] = to_json(make_verdict_record(rep.verdict));
        if (rep.two_torsion) j["two_torsion"] = to_json(make_verdict_record(*rep.two_torsion));
        print(j);
    } else {
        std::cout << "surface      " << surface_string(S) << "\n";
        std::cout << "recipe       " << rep.recipe << " (" << rep.example.name << ")\n";
        for (auto& t : rep.example.transcript) std::cout << "  [" << (t.ok ? "ok" : "FAIL") << "] " << t.claim << "\n";
        print_verdict_text(rep.verdict);
        if (rep.two_torsion) {
            std::cout << "2-torsion class alone:\n";
            print_verdict_text(*rep.two_torsion);
        }
    }
    return rep.verdict.conclusion == Conclusion::inconclusive ? inconclusive : ok;
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw std::invalid_argument("not a rational number: " + s);
    q.canonicalize();
    if (q == 0) throw std::invalid_argument("Hilbert symbols need nonzero arguments");
    return q;
}

int run_hilbert(const Common& c) {
    Rational a = parse_rational(c.a), b = parse_rational(c.b);
    std::set<long> places{kRealPlace, 2};
    if (c.place >= 0) {
        places = {c.place};
    } else {
        for (const mpz_class& n : {mpz_class(a.get_num()), mpz_class(a.get_den()), mpz_class(b.get_num()),
                                   mpz_class(b.get_den())}) {
            mpz_class m = abs(n);
            if (!m.fits_slong_p()) throw CapacityError("argument too large to factor");
            if (m > 1)
                for (auto& [p, e] : factorize(m.get_si())) places.insert(static_cast<long>(p));
        }
    }
    int product = 1;
    json j;
    j["a"] = a.get_str();
    j["b"] = b.get_str();
    j["symbols"] = json::array();
    for (long v : places) {
        if (v != kRealPlace && (v < 2 || !is_prime_u64(static_cast<std::uint64_t>(v))))
            throw std::invalid_argument("place must be 0 (real) or a prime");
        int h = hilbert_symbol(a, b, v);
        product *= h;
        j["symbols"].push_back({{"place", place_name(v)}, {"value", h}});
        if (!c.json) std::cout << "(" << a << ", " << b << ")_" << place_name(v) << " = " << h << "\n";
    }
    if (c.place < 0) {
        j["product"] = product;
        if (!c.json) std::cout << "product over all places = " << product << "\n";
    }
    if (c.json) print(j);
    return c.place < 0 && product != 1 ? invariant_violation : ok;
}

int run_verify(const Common& c) {
    std::vector<TranscriptEntry> out;
    auto add = [&](std::string claim, bool okay, std::string detail = "") {
        out.push_back({std::move(claim), okay, std::move(detail)});
    };
    add("Picard lattice verifies", verify_lattice(build_lattice()).ok);
    auto g0 = analyze_surface(3, 5, 7);
    add("generic H^1 = Z/2 with Picard rank 1", g0.brauer.to_string() == "Z/2" && g0.pic_rank == 1);
    for (auto& ex : {build_ex71(), build_ex72(3), build_ex72(19), build_ex73({-126, -91, 78}), build_ex74(), build_ex75()}) {
        bool all = ex.verified();
        add(ex.name + " identities", all);
        for (auto& t : ex.transcript)
            if (!t.ok) add("  " + t.claim, false, t.detail);
    }
    std::size_t primes = 0;
    bool lemma = true;
    for (i64 p = 3; p < 10000; p += 16)
        if (is_prime_u64(static_cast<std::uint64_t>(p))) {
            ++primes;
            if (!lemma_check(p)) {
                lemma = false;
                add("residue lemma", false, "p = " + std::to_string(p));
            }
        }
    add("residue lemma for all primes p = 3 mod 16 below 10^4", lemma, std::to_string(primes) + " primes");
    for (auto cc : {CubicCoefficients{1, 2, 3, 4}, CubicCoefficients{2, 5, 3, 7}, CubicCoefficients{3, 7, 11, 13}}) {
        auto F = cubic_field(cc);
        add("cubic column identity for (" + std::to_string(cc.A) + "," + std::to_string(cc.B) + "," +
                std::to_string(cc.C) + "," + std::to_string(cc.D) + ")",
            cubic_column_residual(cc, F).is_zero());
    }
    bool all = std::all_of(out.begin(), out.end(), [](auto& t) { return t.ok; });
    if (c.json) {
        print(json{{"ok", all}, {"checks", transcript_json(out)}});
    } else {
        for (auto& t : out)
            std::cout << "[" << (t.ok ? "ok" : "FAIL") << "] " << t.claim << (t.detail.empty() ? "" : " (" + t.detail + ")")
                      << "\n";
    }
    return all ? ok : invariant_violation;
}

int run_cubic(const Common& c) {
    CubicCoefficients cc{c.A, c.B, c.C, c.D};
    for (long x : {cc.A, cc.B, cc.C, cc.D})
        if (x <= 0) throw std::invalid_argument("cubic coefficients must be positive");
    if (auto bad = cubic_degenerate_ratio(cc)) throw std::invalid_argument("degenerate coefficients: " + *bad + " is a cube");
    auto rep = cubic_pipeline(cc, c.bound < 0 ? 6 : static_cast<int>(c.bound));
    if (c.json) {
        json j;
        j["coefficients"] = {{"A", cc.A}, {"B", cc.B}, {"C", cc.C}, {"D", cc.D}};
        j["column_identity"] = rep.column_identity;
        j["norm_found"] = rep.norm_found;
        j["lambda_mu_nu"] = rep.norm_found ? json(rep.lambda_mu_nu) : json(nullptr);
        j["norm_verified"] = rep.norm_verified;
        j["h"] = rep.h ? json(rep.h->to_string()) : json(nullptr);
        j["presentation"] = rep.presentation;
        j["transcript"] = transcript_json(rep.transcript);
        print(j);
    } else {
        std::cout << "column identity  " << (rep.column_identity ? "verified" : "FAILED") << "\n";
        if (rep.norm_found) {
            std::cout << "lambda, mu, nu   " << rep.lambda_mu_nu[0] << ", " << rep.lambda_mu_nu[1] << ", "
                      << rep.lambda_mu_nu[2] << (rep.norm_verified ? "" : " (norm check FAILED)") << "\n";
        } else {
            std::cout << "lambda, mu, nu   not found within the search bound\n";
        }
        if (rep.h) std::cout << "h                " << rep.h->to_string() << "\n";
        if (!rep.presentation.empty()) std::cout << "algebra          " << rep.presentation << "\n";
        for (auto& t : rep.transcript) std::cout << "  [" << (t.ok ? "ok" : "FAIL") << "] " << t.claim << "\n";
    }
    bool all = std::all_of(rep.transcript.begin(), rep.transcript.end(), [](auto& t) { return t.ok; });
    if (!rep.column_identity || !all) return invariant_violation;
    return rep.norm_found ? ok : inconclusive;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Brauer groups and Brauer-Manin obstructions of diagonal quartic del Pezzo surfaces of degree two"};
    app.require_subcommand(1);
    Common c;
    c.threads = default_threads();

    auto coeffs = [&](CLI::App* s, bool required) {
        auto* a = s->add_option("-A", c.A, "coefficient of x^4");
        auto* b = s->add_option("-B", c.B, "coefficient of y^4");
        auto* cc = s->add_option("-C", c.C, "coefficient of z^4");
        if (required) {
            a->required();
            b->required();
            cc->required();
        }
        return std::array<CLI::Option*, 3>{a, b, cc};
    };
    auto json_flag = [&](CLI::App* s) { s->add_flag("--json", c.json, "emit JSON"); };

    auto* analyze = app.add_subcommand("analyze", "Galois group, Picard rank and Br(S)/Br(Q)");
    coeffs(analyze, true);
    json_flag(analyze);
    analyze->add_option("--backend", c.backend, "presentation, standard, resolution or all");
    bool with_verdict = false;
    analyze->add_flag("--verdict", with_verdict, "also run the local obstruction recipe when one applies");
    analyze->add_option("--depth", c.depth, "maximal p-adic level for local profiles");
    analyze->add_option("--samples", c.samples, "real-place samples");
    analyze->add_option("--threads", c.threads, "worker threads");

    auto* scan = app.add_subcommand("scan", "cohomology of every subgroup class surjecting onto Q");
    json_flag(scan);
    scan->add_option("--threads", c.threads, "worker threads");

    auto* obs = app.add_subcommand("obstruct", "build an explicit class and compute its local invariants");
    auto opts = coeffs(obs, false);
    auto* ex = obs->add_option("--example", c.example, "ex71, ex72[:p], ex73, ex74 or ex75");
    for (auto* o : opts) ex->excludes(o);
    json_flag(obs);
    obs->add_option("--depth", c.depth, "maximal p-adic level");
    obs->add_option("--samples", c.samples, "real-place samples");
    obs->add_option("--bound", c.bound, "search bound for the conic point");
    obs->add_option("--threads", c.threads, "worker threads");

    auto* hil = app.add_subcommand("hilbert", "Hilbert symbols (a,b)_v");
    hil->add_option("a", c.a, "rational a")->required();
    hil->add_option("b", c.b, "rational b")->required();
    hil->add_option("--place", c.place, "0 for the real place or a prime; default all relevant places");
    json_flag(hil);

    auto* ver = app.add_subcommand("verify", "run the identity and lemma checks");
    json_flag(ver);

    auto* cub = app.add_subcommand("cubic", "cyclic algebra of order 3 on A x^3 + B y^3 + C z^3 + D t^3 = 0");
    coeffs(cub, true);
    cub->add_option("-D", c.D, "coefficient of t^3")->required();
    cub->add_option("--bound", c.bound, "height bound for the norm search");
    json_flag(cub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : invalid_input;
    }

    try {
        if (*analyze) return run_analyze(c, with_verdict);
        if (*scan) return run_scan(c);
        if (*obs) {
            if (c.example.empty() && (c.A == 0 || c.B == 0 || c.C == 0))
                throw std::invalid_argument("give -A -B -C or --example");
            return run_obstruct(c);
        }
        if (*hil) return run_hilbert(c);
        if (*ver) return run_verify(c);
        if (*cub) return run_cubic(c);
    } catch (const RecipeNotImplemented& e) {
        std::cerr << "error: " << e.what() << "\n";
        return inconclusive;
    } catch (const CapacityError& e) {
        std::cerr << "capacity: " << e.what() << "\n";
        return inconclusive;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return invariant_violation;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return invalid_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return inconclusive;
    }
    return ok;
}

#include "dp2/report.hpp"

namespace dp2 {

VerdictRecord make_verdict_record(const Verdict& v) {
    VerdictRecord r;
    r.conclusion = to_string(v.conclusion);
    for (auto& p : v.profiles) {
        ProfileRecord pr;
        pr.place = place_name(p.place);
        pr.modulus = p.modulus();
        for (auto& inv : p.attained) pr.invariants.push_back(invariant_vector_string(inv));
        pr.method = p.method;
        r.profiles.push_back(pr);
    }
    return r;
}

ReportRecord make_report_record(const AnalysisReport& a, const std::optional<Verdict>& v) {
    ReportRecord r;
    r.A = a.surface.A;
    r.B = a.surface.B;
    r.C = a.surface.C;
    r.order = a.galois.order();
    r.generators = a.galois.generators_string();
    r.pic_rank = a.pic_rank;
    r.divisors = a.brauer.divisors;
    r.rank = a.brauer.rank;
    r.backend = a.brauer_backend;
    r.table2_row = a.table2_row;
    if (v) r.verdict = make_verdict_record(*v);
    return r;
}

nlohmann::ordered_json to_json(const VerdictRecord& v) {
    nlohmann::ordered_json j;
    j["conclusion"] = v.conclusion;
    j["profiles"] = nlohmann::ordered_json::array();
    for (auto& p : v.profiles)
        j["profiles"].push_back(
            {{"place", p.place}, {"modulus", p.modulus}, {"invariants", p.invariants}, {"method", p.method}});
    return j;
}

nlohmann::ordered_json to_json(const ReportRecord& r) {
    nlohmann::ordered_json j;
    j["surface"] = {{"A", r.A}, {"B", r.B}, {"C", r.C}};
    j["galois"] = {{"order", r.order}, {"generators", r.generators}};
    j["pic_rank"] = r.pic_rank;
    j["brauer"] = {{"divisors", r.divisors}, {"rank", r.rank}, {"backend", r.backend}};
    j["table2_row"] = r.table2_row ? nlohmann::ordered_json(*r.table2_row) : nlohmann::ordered_json(nullptr);
    j["verdict"] = r.verdict ? to_json(*r.verdict) : nlohmann::ordered_json(nullptr);
    return j;
}

ReportRecord report_from_json(const nlohmann::json& j) {
    ReportRecord r;
    r.A = j.at("surface").at("A").get<i64>();
    r.B = j.at("surface").at("B").get<i64>();
    r.C = j.at("surface").at("C").get<i64>();
    r.order = j.at("galois").at("order").get<std::size_t>();
    r.generators = j.at("galois").at("generators").get<std::string>();
    r.pic_rank = j.at("pic_rank").get<std::size_t>();
    r.divisors = j.at("brauer").at("divisors").get<std::vector<long>>();
    r.rank = j.at("brauer").at("rank").get<std::size_t>();
    r.backend = j.at("brauer").value("backend", "");
    if (!j.at("table2_row").is_null()) r.table2_row = j["table2_row"].get<int>();
    if (!j.at("verdict").is_null()) {
        VerdictRecord v;
        auto& jv = j["verdict"];
        v.conclusion = jv.at("conclusion").get<std::string>();
        for (auto& p : jv.at("profiles"))
            v.profiles.push_back({p.at("place").get<std::string>(), p.at("modulus").get<std::string>(),
                                  p.at("invariants").get<std::vector<std::string>>(), p.at("method").get<std::string>()});
        r.verdict = v;
    }
    return r;
}

}  // namespace dp2

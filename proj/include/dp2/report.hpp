#pragma once

#include "dp2/analysis.hpp"

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

// Machine-readable analysis reports.
namespace dp2 {

struct ProfileRecord {
    std::string place;   // "R", "Q_2"
    std::string modulus; // "2^5", "R"
    std::vector<std::string> invariants;
    std::string method;
    bool operator==(const ProfileRecord&) const = default;
};

struct VerdictRecord {
    std::string conclusion;
    std::vector<ProfileRecord> profiles;
    bool operator==(const VerdictRecord&) const = default;
};

struct ReportRecord {
    i64 A = 0, B = 0, C = 0;
    std::size_t order = 0;
    std::string generators;
    std::size_t pic_rank = 0;
    std::vector<long> divisors;
    std::size_t rank = 0;
    std::string backend;
    std::optional<int> table2_row;
    std::optional<VerdictRecord> verdict;
    bool operator==(const ReportRecord&) const = default;
};

VerdictRecord make_verdict_record(const Verdict& v);
ReportRecord make_report_record(const AnalysisReport& a, const std::optional<Verdict>& v = std::nullopt);

nlohmann::ordered_json to_json(const ReportRecord& r);
nlohmann::ordered_json to_json(const VerdictRecord& v);
// throws nlohmann::json::exception on a malformed document
ReportRecord report_from_json(const nlohmann::json& j);

}  // namespace dp2

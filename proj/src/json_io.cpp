#include "halfcert/json_io.hpp"

#include <fstream>
#include <stdexcept>
#include <string>

namespace halfcert {

Family family_from_json(const Json& j) {
    if (!j.is_object())
        throw std::invalid_argument("family document must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer())
        throw std::invalid_argument("family field \"n\" must be an integer");
    const int n = j["n"].get<int>();
    if (n <= 0)
        throw std::invalid_argument("family field \"n\" must be positive");
    if (!j.contains("sets") || !j["sets"].is_array())
        throw std::invalid_argument("family field \"sets\" must be an array");

    std::vector<std::vector<int>> raw;
    raw.reserve(j["sets"].size());
    std::size_t set_index = 0;
    for (const Json& entry : j["sets"]) {
        if (!entry.is_array())
            throw std::invalid_argument("sets[" + std::to_string(set_index) +
                                        "] must be an array of elements");
        std::vector<int> elems;
        elems.reserve(entry.size());
        std::size_t elem_index = 0;
        for (const Json& e : entry) {
            if (!e.is_number_integer())
                throw std::invalid_argument(
                    "sets[" + std::to_string(set_index) + "][" +
                    std::to_string(elem_index) + "] must be an integer");
            const long long value = e.get<long long>();
            if (value < 1 || value > n)
                throw std::invalid_argument(
                    "sets[" + std::to_string(set_index) + "][" +
                    std::to_string(elem_index) + "] = " + std::to_string(value) +
                    " outside ground set 1.." + std::to_string(n));
            elems.push_back(static_cast<int>(value));
            ++elem_index;
        }
        raw.push_back(std::move(elems));
        ++set_index;
    }
    return Family::from_element_lists(n, raw);
}

Family load_family(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw std::invalid_argument("cannot open family file " + file.string());
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& err) {
        throw std::invalid_argument("parse error in " + file.string() + ": " +
                                    err.what());
    }
    try {
        return family_from_json(j);
    } catch (const std::invalid_argument& err) {
        throw std::invalid_argument(file.string() + ": " + err.what());
    }
}

Json family_to_json(const Family& fam) {
    Json sets = Json::array();
    for (const SetMask& m : fam.sets()) sets.push_back(m.elements());
    return Json{{"n", fam.ground_size()}, {"sets", sets}};
}

Json to_json(const FrequencyTable& table) {
    return Json{{"ground_size", table.ground_size},
                {"family_size", table.family_size},
                {"absent_counts", table.absent_count}};
}

Json to_json(const CertificateReport& report) {
    Json j{{"verdict", report.pass ? "pass" : "fail"},
           {"family_size", report.family_size},
           {"witness_size", report.witness_size}};
    if (!report.fail_reason.empty()) j["reason"] = report.fail_reason;
    if (report.inequality_evaluated) {
        j["lhs_bits"] = report.lhs_bits;
        j["rhs_bits"] = report.rhs_bits;
        j["margin_bits"] = report.margin_bits;
        j["exact_lhs"] = to_decimal(report.exact_lhs);
        j["exact_rhs"] = to_decimal(report.exact_rhs);
    }
    if (report.witness_subfamily) j["subfamily"] = *report.witness_subfamily;
    if (report.family_union_closed)
        j["family_union_closed"] = *report.family_union_closed;
    return j;
}

Json to_json(const DecompositionVector& vec) {
    return Json{{"ground_size", vec.ground_size},
                {"x", vec.x},
                {"elimination_order", vec.elimination_order},
                {"source_entropy_bits", vec.source_entropy}};
}

Json to_json(const DecompositionCheck& check) {
    Json violations = Json::array();
    for (const DecompositionViolation& v : check.violations)
        violations.push_back(
            Json{{"set", v.subset.elements()}, {"slack", v.slack}});
    return Json{{"subsets_checked", check.subsets_checked},
                {"worst_slack", check.worst_slack},
                {"violations", violations}};
}

namespace {

const char* coverage_name(SearchCoverage coverage) {
    switch (coverage) {
    case SearchCoverage::found: return "found";
    case SearchCoverage::exhausted: return "exhausted";
    default: return "budget_limited";
    }
}

} // namespace

Json to_json(const SearchOutcome& outcome) {
    Json j{{"found", outcome.witness.has_value()},
           {"coverage", coverage_name(outcome.coverage)},
           {"examined", outcome.examined}};
    if (outcome.witness) j["witness"] = family_to_json(*outcome.witness);
    if (outcome.report) j["report"] = to_json(*outcome.report);
    if (!outcome.trace.empty()) {
        Json trace = Json::array();
        for (const SearchTraceEntry& entry : outcome.trace)
            trace.push_back(Json{{"step", entry.step},
                                 {"action", entry.action},
                                 {"margin_bits", entry.margin_bits},
                                 {"accepted", entry.accepted},
                                 {"passed", entry.passed}});
        j["trace"] = trace;
    }
    return j;
}

Json to_json(const ThresholdReport& report) {
    return Json{{"power_size", report.power_size},
                {"witness_size", report.witness_size},
                {"copies", report.copies},
                {"epsilon", std::to_string(report.epsilon.num) + "/" +
                                std::to_string(report.epsilon.den)},
                {"size_condition_met", report.size_condition_met},
                {"lower_bound_met", report.lower_bound_met},
                {"degenerate_copies", report.degenerate_copies},
                {"trivial_base", report.trivial_base},
                {"certificate", to_json(report.certificate)}};
}

} // namespace halfcert

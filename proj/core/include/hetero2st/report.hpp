#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hetero2st/bootstrap.hpp"

namespace hetero2st {

/// snake_case JSON of a TestReport. Non-finite cutoffs serialize as the
/// strings "inf"/"nan" so the document stays valid JSON and round-trips.
nlohmann::json report_to_json(const TestReport& report);
TestReport report_from_json(const nlohmann::json& j);

nlohmann::json reports_to_json(const std::vector<TestReport>& reports);
std::vector<TestReport> reports_from_json(const nlohmann::json& j);

/// One line per report: kind, observed, cutoff, p-value, decision.
std::string reports_to_text(const std::vector<TestReport>& reports);
/// CSV with one row per report.
std::string reports_to_csv(const std::vector<TestReport>& reports);

}  // namespace hetero2st

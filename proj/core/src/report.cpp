#include "hetero2st/report.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hetero2st/csv.hpp"
#include "hetero2st/errors.hpp"

namespace hetero2st {

namespace {

nlohmann::json encode_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double decode_double(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ParseError("unexpected numeric string '" + s + "'");
  }
  return j.get<double>();
}

}  // namespace

nlohmann::json report_to_json(const TestReport& r) {
  return nlohmann::json{
      {"statistic", to_string(r.kind)},
      {"calibration", r.calibration},
      {"observed", encode_double(r.observed)},
      {"cutoff", encode_double(r.cutoff)},
      {"p_value", encode_double(r.p_value)},
      {"decision", r.reject ? "reject" : "retain"},
      {"alpha", r.alpha},
      {"ell", r.ell},
      {"rounds", r.rounds},
      {"k_hat", r.k_hat},
      {"feasible_rounds", r.feasible_rounds},
      {"attempted_rounds", r.attempted_rounds},
      {"n", r.n},
      {"m", r.m},
      {"d", r.d},
      {"seed", r.seed},
      {"wall_ms", r.wall_ms},
      {"warnings", r.warnings},
  };
}

TestReport report_from_json(const nlohmann::json& j) {
  TestReport r;
  r.kind = test_kind_from_string(j.at("statistic").get<std::string>());
  r.calibration = j.at("calibration").get<std::string>();
  r.observed = decode_double(j.at("observed"));
  r.cutoff = decode_double(j.at("cutoff"));
  r.p_value = decode_double(j.at("p_value"));
  const std::string decision = j.at("decision").get<std::string>();
  if (decision != "reject" && decision != "retain") {
    throw ParseError("decision must be 'reject' or 'retain'");
  }
  r.reject = decision == "reject";
  r.alpha = j.at("alpha").get<double>();
  r.ell = j.at("ell").get<int>();
  r.rounds = j.at("rounds").get<std::int64_t>();
  r.k_hat = j.at("k_hat").get<int>();
  r.feasible_rounds = j.at("feasible_rounds").get<std::int64_t>();
  r.attempted_rounds = j.at("attempted_rounds").get<std::int64_t>();
  r.n = j.at("n").get<std::int64_t>();
  r.m = j.at("m").get<std::int64_t>();
  r.d = j.at("d").get<std::int64_t>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.wall_ms = j.at("wall_ms").get<double>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  return r;
}

nlohmann::json reports_to_json(const std::vector<TestReport>& reports) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(report_to_json(r));
  return nlohmann::json{{"reports", arr}};
}

std::vector<TestReport> reports_from_json(const nlohmann::json& j) {
  std::vector<TestReport> out;
  for (const auto& item : j.at("reports")) out.push_back(report_from_json(item));
  return out;
}

std::string reports_to_text(const std::vector<TestReport>& reports) {
  std::ostringstream os;
  for (const auto& r : reports) {
    os << to_string(r.kind) << ": " << (r.reject ? "REJECT" : "retain")
       << "  statistic=" << format_double(r.observed);
    if (r.calibration == "bootstrap") {
      os << "  cutoff=" << format_double(r.cutoff) << "  k_hat=" << r.k_hat;
    }
    os << "  p=" << format_double(r.p_value) << "  (alpha=" << r.alpha
       << ", n=" << r.n << ", m=" << r.m << ", d=" << r.d << ")\n";
    for (const auto& w : r.warnings) os << "  warning: " << w << "\n";
  }
  return os.str();
}

std::string reports_to_csv(const std::vector<TestReport>& reports) {
  std::ostringstream os;
  os << "statistic,calibration,observed,cutoff,p_value,decision,alpha,ell,"
        "rounds,k_hat,n,m,d,seed\n";
  for (const auto& r : reports) {
    os << to_string(r.kind) << ',' << r.calibration << ','
       << format_double(r.observed) << ',' << format_double(r.cutoff) << ','
       << format_double(r.p_value) << ',' << (r.reject ? "reject" : "retain")
       << ',' << format_double(r.alpha) << ',' << r.ell << ',' << r.rounds << ','
       << r.k_hat << ',' << r.n << ',' << r.m << ',' << r.d << ',' << r.seed
       << '\n';
  }
  return os.str();
}

}  // namespace hetero2st

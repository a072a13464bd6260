#pragma once

#include <array>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hetero2st/bootstrap.hpp"

namespace hetero2st {

/// A replicated run of one named scenario over a grid of sample shapes.
struct ExperimentPlan {
  std::string experiment;
  int replications = 100;
  double alpha = 0.05;
  /// (n, m, d) cells; empty means the scenario's default grid.
  std::vector<std::array<std::int64_t, 3>> grid;
  std::vector<TestKind> tests = {TestKind::bwec};
  int ell = 5;
  int b_rounds = 200;
  std::int64_t perm_draws = 1000;
  int kmax = 10;
  double ps_threshold = 0.80;
  WeightMode weight_mode = WeightMode::corner;
  std::uint64_t seed = 1;
  /// When false, mean_ms is reported as 0 so output files are byte-stable.
  bool record_timing = true;

  void validate() const;
};

struct CellResult {
  TestKind test = TestKind::bwec;
  std::int64_t n = 0, m = 0, d = 0;
  std::int64_t rejects = 0;
  std::int64_t valid_reps = 0;
  std::int64_t failed_reps = 0;
  double mean_ms = 0.0;

  double rate() const;
  double standard_error() const;  // sqrt(rate (1 - rate) / valid_reps)
};

struct RejectionTable {
  std::string experiment;
  double alpha = 0.05;
  int replications = 0;
  std::vector<CellResult> cells;  // grid-major, tests in requested order
};

/// Draw fresh samples per replication, run every requested test, aggregate
/// rejection counts. Replications run in parallel under per-replication
/// derived seeds, so the table is identical for any thread count. A failed
/// replication is excluded from its test's tally and counted in failed_reps.
RejectionTable run_experiment(const ExperimentPlan& plan);

/// CSV schema: test,scenario,n,m,d,alpha,rate,se,reps,failed_reps,mean_ms.
std::string table_to_csv(const RejectionTable& table);

/// Aligned text table, tests as rows and grid cells as columns.
/// Throws EmptySelection when the table has no cells.
std::string table_to_text(const RejectionTable& table);

nlohmann::json plan_to_json(const ExperimentPlan& plan);
ExperimentPlan plan_from_json(const nlohmann::json& j);

}  // namespace hetero2st

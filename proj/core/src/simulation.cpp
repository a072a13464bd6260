#include "hetero2st/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "hetero2st/csv.hpp"
#include "hetero2st/errors.hpp"
#include "hetero2st/experiments.hpp"
#include "hetero2st/parallel.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

namespace {

// Seed streams of one replication.
enum : std::uint64_t {
  stream_components = 1,
  stream_x = 2,
  stream_y = 3,
  stream_test = 4,
};

struct RepOutcome {
  // Parallel arrays over the plan's test list.
  std::vector<int> decided;  // 1 = produced a decision, 0 = failed
  std::vector<int> rejected;
  std::vector<double> wall_ms;
};

}  // namespace

void ExperimentPlan::validate() const {
  if (replications < 1) throw InvalidSpec("replications must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidSpec("alpha must be in (0,1)");
  if (tests.empty()) throw InvalidSpec("plan.tests must be nonempty");
  experiment_grid(experiment);  // validates the name
}

double CellResult::rate() const {
  return valid_reps == 0
             ? 0.0
             : static_cast<double>(rejects) / static_cast<double>(valid_reps);
}

double CellResult::standard_error() const {
  if (valid_reps == 0) return 0.0;
  const double r = rate();
  return std::sqrt(r * (1.0 - r) / static_cast<double>(valid_reps));
}

namespace {

RepOutcome run_one_replication(const ExperimentPlan& plan,
                               const std::array<std::int64_t, 3>& cell,
                               std::uint64_t rep_seed) {
  const std::size_t num_tests = plan.tests.size();
  RepOutcome out;
  out.decided.assign(num_tests, 0);
  out.rejected.assign(num_tests, 0);
  out.wall_ms.assign(num_tests, 0.0);

  BootstrapConfig cfg;
  cfg.b_rounds = plan.b_rounds;
  cfg.alpha = plan.alpha;
  cfg.ell = plan.ell;
  cfg.weight_mode = plan.weight_mode;
  cfg.kmax = plan.kmax;
  cfg.ps_threshold = plan.ps_threshold;
  cfg.seed = derive_seed(rep_seed, stream_test);

  ExperimentSetting setting;
  try {
    setting = experiment_spec(plan.experiment, static_cast<int>(cell[2]),
                              derive_seed(rep_seed, stream_components));
  } catch (const Error&) {
    return out;  // every test of this replication is a failure
  }

  std::vector<TestKind> kinds = plan.tests;
  try {
    const PointCloud x =
        sample_mixture(setting.fx, cell[0], derive_seed(rep_seed, stream_x));
    const PointCloud y =
        sample_mixture(setting.fy, cell[1], derive_seed(rep_seed, stream_y));

    auto record = [&](const std::vector<TestReport>& reports) {
      for (const auto& rep : reports) {
        for (std::size_t t = 0; t < num_tests; ++t) {
          if (plan.tests[t] == rep.kind) {
            out.decided[t] = 1;
            out.rejected[t] = rep.reject ? 1 : 0;
            out.wall_ms[t] = rep.wall_ms;
          }
        }
      }
    };

    try {
      record(heterogeneous_test_all(x, y, kinds, cfg, plan.perm_draws));
    } catch (const Error&) {
      // Attribute the failure: retry the permutation and bootstrap groups
      // separately so an infeasible bootstrap does not void the others.
      std::vector<TestKind> boot, perm;
      for (auto k : kinds) {
        (k == TestKind::bgec || k == TestKind::bwec ? boot : perm).push_back(k);
      }
      for (const auto& group : {perm, boot}) {
        if (group.empty()) continue;
        try {
          record(heterogeneous_test_all(x, y, group, cfg, plan.perm_draws));
        } catch (const Error&) {
          // group stays undecided -> counted as failed
        }
      }
    }
  } catch (const Error&) {
    // sampling failed; every test of this replication is a failure
  }
  return out;
}

}  // namespace

RejectionTable run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  const auto grid = plan.grid.empty() ? experiment_grid(plan.experiment)
                                      : plan.grid;

  RejectionTable table;
  table.experiment = plan.experiment;
  table.alpha = plan.alpha;
  table.replications = plan.replications;

  for (std::size_t ci = 0; ci < grid.size(); ++ci) {
    const auto& cell = grid[ci];
    std::vector<RepOutcome> outcomes(static_cast<std::size_t>(plan.replications));
    parallel_for(outcomes.size(), [&](std::size_t r) {
      outcomes[r] = run_one_replication(
          plan, cell, derive_seed(plan.seed, ci, r));
    });
    for (std::size_t t = 0; t < plan.tests.size(); ++t) {
      CellResult res;
      res.test = plan.tests[t];
      res.n = cell[0];
      res.m = cell[1];
      res.d = cell[2];
      double ms_total = 0.0;
      for (const auto& o : outcomes) {
        if (o.decided[t]) {
          ++res.valid_reps;
          res.rejects += o.rejected[t];
          ms_total += o.wall_ms[t];
        } else {
          ++res.failed_reps;
        }
      }
      res.mean_ms = (plan.record_timing && res.valid_reps > 0)
                        ? ms_total / static_cast<double>(res.valid_reps)
                        : 0.0;
      table.cells.push_back(res);
    }
  }
  return table;
}

std::string table_to_csv(const RejectionTable& table) {
  std::ostringstream os;
  os << "test,scenario,n,m,d,alpha,rate,se,reps,failed_reps,mean_ms\n";
  for (const auto& c : table.cells) {
    os << to_string(c.test) << ',' << table.experiment << ',' << c.n << ','
       << c.m << ',' << c.d << ',' << format_double(table.alpha) << ','
       << format_double(c.rate()) << ',' << format_double(c.standard_error())
       << ',' << c.valid_reps << ',' << c.failed_reps << ','
       << format_double(c.mean_ms) << '\n';
  }
  return os.str();
}

std::string table_to_text(const RejectionTable& table) {
  if (table.cells.empty()) {
    throw EmptySelection("rejection table has no cells");
  }
  // Column per distinct (n, m, d) in first-appearance order.
  std::vector<std::array<std::int64_t, 3>> cols;
  for (const auto& c : table.cells) {
    const std::array<std::int64_t, 3> key{c.n, c.m, c.d};
    if (std::find(cols.begin(), cols.end(), key) == cols.end())
      cols.push_back(key);
  }
  std::vector<TestKind> rows;
  for (const auto& c : table.cells) {
    if (std::find(rows.begin(), rows.end(), c.test) == rows.end())
      rows.push_back(c.test);
  }

  std::ostringstream os;
  os << "rejection rates: " << table.experiment << " (alpha "
     << format_double(table.alpha) << ", " << table.replications
     << " replications)\n";
  char buf[64];
  os << "  test ";
  for (const auto& k : cols) {
    std::snprintf(buf, sizeof(buf), " n=%lld,m=%lld,d=%lld",
                  static_cast<long long>(k[0]), static_cast<long long>(k[1]),
                  static_cast<long long>(k[2]));
    os << buf;
  }
  os << '\n';
  bool any_failed = false;
  for (auto test : rows) {
    std::snprintf(buf, sizeof(buf), "  %-5s", to_string(test).c_str());
    os << buf;
    for (const auto& k : cols) {
      const auto it = std::find_if(
          table.cells.begin(), table.cells.end(), [&](const CellResult& c) {
            return c.test == test && c.n == k[0] && c.m == k[1] && c.d == k[2];
          });
      std::snprintf(buf, sizeof(buf), " n=%lld,m=%lld,d=%lld",
                    static_cast<long long>(k[0]), static_cast<long long>(k[1]),
                    static_cast<long long>(k[2]));
      const int width = static_cast<int>(std::string(buf).size());
      if (it == table.cells.end()) {
        std::snprintf(buf, sizeof(buf), " %*s", width - 1, "-");
      } else {
        const bool failed = it->failed_reps > 0;
        any_failed |= failed;
        std::snprintf(buf, sizeof(buf), " %*.3f%s", failed ? width - 2 : width - 1,
                      it->rate(), failed ? "*" : "");
      }
      os << buf;
    }
    os << '\n';
  }
  if (any_failed) {
    os << "  * some replications failed; see failed_reps in the CSV\n";
  }
  return os.str();
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
  nlohmann::json tests = nlohmann::json::array();
  for (auto t : plan.tests) tests.push_back(to_string(t));
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& g : plan.grid) grid.push_back({g[0], g[1], g[2]});
  return nlohmann::json{
      {"experiment", plan.experiment},
      {"replications", plan.replications},
      {"alpha", plan.alpha},
      {"grid", grid},
      {"tests", tests},
      {"ell", plan.ell},
      {"b_rounds", plan.b_rounds},
      {"perm_draws", plan.perm_draws},
      {"kmax", plan.kmax},
      {"ps_threshold", plan.ps_threshold},
      {"weights", plan.weight_mode == WeightMode::corner ? "corner" : "dirichlet"},
      {"seed", plan.seed},
  };
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
  ExperimentPlan plan;
  plan.experiment = j.at("experiment").get<std::string>();
  plan.replications = j.value("replications", plan.replications);
  plan.alpha = j.value("alpha", plan.alpha);
  if (j.contains("grid")) {
    for (const auto& g : j.at("grid")) {
      plan.grid.push_back({g.at(0).get<std::int64_t>(),
                           g.at(1).get<std::int64_t>(),
                           g.at(2).get<std::int64_t>()});
    }
  }
  if (j.contains("tests")) {
    plan.tests.clear();
    for (const auto& t : j.at("tests")) {
      plan.tests.push_back(test_kind_from_string(t.get<std::string>()));
    }
  }
  plan.ell = j.value("ell", plan.ell);
  plan.b_rounds = j.value("b_rounds", plan.b_rounds);
  plan.perm_draws = j.value("perm_draws", plan.perm_draws);
  plan.kmax = j.value("kmax", plan.kmax);
  plan.ps_threshold = j.value("ps_threshold", plan.ps_threshold);
  if (j.contains("weights")) {
    const std::string w = j.at("weights").get<std::string>();
    if (w == "corner") plan.weight_mode = WeightMode::corner;
    else if (w == "dirichlet") plan.weight_mode = WeightMode::dirichlet_uniform;
    else throw InvalidSpec("weights must be 'corner' or 'dirichlet'");
  }
  plan.seed = j.value("seed", plan.seed);
  plan.validate();
  return plan;
}

}  // namespace hetero2st

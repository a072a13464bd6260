// Command line front end: run composite-null two-sample tests on CSV data,
// replicate the built-in benchmark scenarios, and generate synthetic samples.

#include <CLI11.hpp>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hetero2st/bootstrap.hpp"
#include "hetero2st/csv.hpp"
#include "hetero2st/errors.hpp"
#include "hetero2st/experiments.hpp"
#include "hetero2st/mixtures.hpp"
#include "hetero2st/report.hpp"
#include "hetero2st/rng.hpp"
#include "hetero2st/simulation.hpp"

namespace h2 = hetero2st;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_reject = 3;

std::vector<h2::TestKind> parse_tests(const std::string& csv) {
  std::vector<h2::TestKind> kinds;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) kinds.push_back(h2::test_kind_from_string(item));
  }
  if (kinds.empty()) throw h2::InvalidSpec("--tests parsed to an empty list");
  return kinds;
}

h2::WeightMode parse_weights(const std::string& w) {
  if (w == "corner") return h2::WeightMode::corner;
  if (w == "dirichlet") return h2::WeightMode::dirichlet_uniform;
  throw h2::InvalidSpec("--weights must be 'corner' or 'dirichlet'");
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw h2::Error("cannot open '" + out_path + "' for writing");
  f << content;
}

h2::PointCloud load_cloud(const std::string& path, bool arcsinh) {
  h2::CsvTable t = h2::read_csv_file(path);
  if (arcsinh) {
    t.values = t.values.unaryExpr([](double v) { return std::asinh(v); });
  }
  return h2::PointCloud(std::move(t.values));
}

struct CommonOptions {
  double alpha = 0.05;
  int ell = 5;
  int b_rounds = 200;
  int kmax = 10;
  double ps_threshold = 0.80;
  std::string weights = "corner";
  std::string tests = "bwec";
  std::int64_t perm_draws = 1000;
  std::uint64_t seed = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--alpha", opt.alpha, "significance level in (0,1)");
  cmd->add_option("--ell", opt.ell, "MST multiplicity");
  cmd->add_option("--B,--b-rounds", opt.b_rounds, "bootstrap rounds");
  cmd->add_option("--kmax", opt.kmax, "maximum clusters probed");
  cmd->add_option("--ps-threshold", opt.ps_threshold,
                  "prediction-strength threshold");
  cmd->add_option("--weights", opt.weights, "corner|dirichlet");
  cmd->add_option("--tests", opt.tests,
                  "comma list from ec,gec,wec,bgec,bwec");
  cmd->add_option("--perm-draws", opt.perm_draws,
                  "permutation draws for ec/gec/wec");
  cmd->add_option("--seed", opt.seed, "master seed");
}

int cmd_test(const std::string& x_csv, const std::string& y_csv,
             const CommonOptions& opt, bool arcsinh, const std::string& format,
             const std::string& out_path) {
  const h2::PointCloud x = load_cloud(x_csv, arcsinh);
  const h2::PointCloud y = load_cloud(y_csv, arcsinh);

  h2::BootstrapConfig cfg;
  cfg.alpha = opt.alpha;
  cfg.ell = opt.ell;
  cfg.b_rounds = opt.b_rounds;
  cfg.kmax = opt.kmax;
  cfg.ps_threshold = opt.ps_threshold;
  cfg.weight_mode = parse_weights(opt.weights);
  cfg.seed = opt.seed;

  const auto kinds = parse_tests(opt.tests);
  const auto reports =
      h2::heterogeneous_test_all(x, y, kinds, cfg, opt.perm_draws);

  std::string content;
  if (format == "json") {
    content = h2::reports_to_json(reports).dump(2) + "\n";
  } else if (format == "csv") {
    content = h2::reports_to_csv(reports);
  } else if (format == "text") {
    content = h2::reports_to_text(reports);
  } else {
    throw h2::InvalidSpec("--format must be json, csv or text");
  }
  write_output(out_path, content);

  for (const auto& r : reports) {
    if (r.reject) return exit_reject;
  }
  return exit_ok;
}

int cmd_experiment(std::string name, const std::string& plan_path,
                   const CommonOptions& opt, int reps, std::int64_t n,
                   std::int64_t m, std::int64_t d, bool no_timing,
                   const std::string& out_path, bool tests_given,
                   bool reps_given) {
  h2::ExperimentPlan plan;
  if (!plan_path.empty()) {
    std::ifstream f(plan_path);
    if (!f) throw h2::Error("cannot open plan file '" + plan_path + "'");
    nlohmann::json j;
    f >> j;
    plan = h2::plan_from_json(j);
    if (!name.empty()) plan.experiment = name;
  } else {
    if (name.empty()) {
      throw h2::InvalidSpec("name an experiment or pass --plan (see --list)");
    }
    plan.experiment = name;
    plan.tests = parse_tests(opt.tests);
    plan.replications = reps;
  }
  if (plan_path.empty() || tests_given) plan.tests = parse_tests(opt.tests);
  if (plan_path.empty() || reps_given) plan.replications = reps;
  plan.alpha = opt.alpha;
  plan.ell = opt.ell;
  plan.b_rounds = opt.b_rounds;
  plan.perm_draws = opt.perm_draws;
  plan.kmax = opt.kmax;
  plan.ps_threshold = opt.ps_threshold;
  plan.weight_mode = parse_weights(opt.weights);
  plan.seed = opt.seed;
  plan.record_timing = !no_timing;

  // --n/--m/--d pin a custom cell when all three are given, otherwise filter
  // the scenario's default grid on whichever coordinates were provided.
  if (n > 0 && m > 0 && d > 0) {
    plan.grid = {{n, m, d}};
  } else if (n > 0 || m > 0 || d > 0) {
    for (const auto& cell : h2::experiment_grid(plan.experiment)) {
      if ((n == 0 || cell[0] == n) && (m == 0 || cell[1] == m) &&
          (d == 0 || cell[2] == d)) {
        plan.grid.push_back(cell);
      }
    }
    if (plan.grid.empty()) {
      throw h2::EmptySelection(
          "no default grid cell matches the requested --n/--m/--d; give all "
          "three to run a custom cell");
    }
  }

  const h2::RejectionTable table = h2::run_experiment(plan);
  std::cout << h2::table_to_text(table);
  const std::string out =
      out_path.empty() ? plan.experiment + "_results.csv" : out_path;
  write_output(out, h2::table_to_csv(table));
  if (!(out.empty() || out == "-")) {
    std::cout << "wrote " << out << "\n";
  }
  return exit_ok;
}

int cmd_generate(const std::string& spec_path, const std::string& experiment,
                 int d, std::int64_t nx, std::int64_t ny, std::uint64_t seed,
                 const std::string& out_prefix, const std::string& dump_spec) {
  h2::MixtureSpec fx, fy;
  std::int64_t def_nx = 0, def_ny = 0;
  if (!experiment.empty()) {
    const h2::ExperimentSetting s =
        h2::experiment_spec(experiment, d, h2::derive_seed(seed, 99));
    fx = s.fx;
    fy = s.fy;
    def_nx = s.n;
    def_ny = s.m;
  } else if (!spec_path.empty()) {
    std::ifstream f(spec_path);
    if (!f) throw h2::Error("cannot open spec file '" + spec_path + "'");
    nlohmann::json j;
    f >> j;
    if (j.contains("x") || j.contains("y")) {
      fx = h2::mixture_spec_from_json(j.at("x"));
      fy = h2::mixture_spec_from_json(j.at("y"));
    } else {
      fx = h2::mixture_spec_from_json(j);
      fy = fx;
    }
  } else {
    throw h2::InvalidSpec("pass --spec FILE or --experiment NAME");
  }
  if (nx == 0) nx = def_nx;
  if (ny == 0) ny = def_ny;
  if (nx < 1 || ny < 1) {
    throw h2::InvalidSpec("sample counts must be >= 1 (got nx = " +
                          std::to_string(nx) + ", ny = " + std::to_string(ny) +
                          ")");
  }

  if (!dump_spec.empty()) {
    nlohmann::json j{{"x", h2::mixture_spec_to_json(fx)},
                     {"y", h2::mixture_spec_to_json(fy)}};
    write_output(dump_spec, j.dump(2) + "\n");
  }

  const h2::PointCloud x = h2::sample_mixture(fx, nx, h2::derive_seed(seed, 1));
  const h2::PointCloud y = h2::sample_mixture(fy, ny, h2::derive_seed(seed, 2));
  h2::write_csv_file(out_prefix + "_x.csv", x.points());
  h2::write_csv_file(out_prefix + "_y.csv", y.points());
  std::cout << "wrote " << out_prefix << "_x.csv (" << x.rows() << "x"
            << x.dim() << ") and " << out_prefix << "_y.csv (" << y.rows()
            << "x" << y.dim() << ")\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hetero2st: graph-based two-sample tests under latent heterogeneity"};
  app.require_subcommand(1);

  // test
  auto* test = app.add_subcommand(
      "test", "test whether Y matches a mixture of X's subpopulations");
  std::string x_csv, y_csv, format = "json", out_path;
  bool arcsinh = false;
  CommonOptions test_opt;
  test->add_option("x_csv", x_csv, "baseline sample CSV (rows = observations)")
      ->required();
  test->add_option("y_csv", y_csv, "test sample CSV")->required();
  add_common(test, test_opt);
  test->add_option("--format", format, "json|csv|text");
  test->add_option("--out", out_path, "output path (default stdout)");
  test->add_flag("--arcsinh", arcsinh,
                 "apply arcsinh to every entry before testing");

  // experiment
  auto* exp = app.add_subcommand(
      "experiment", "replicate a built-in benchmark scenario");
  std::string exp_name, plan_path, exp_out;
  CommonOptions exp_opt;
  int reps = 100;
  std::int64_t over_n = 0, over_m = 0, over_d = 0;
  bool list = false, no_timing = false;
  exp->add_option("name", exp_name, "scenario name (see --list)");
  exp->add_option("--plan", plan_path, "JSON plan file");
  exp->add_flag("--list", list, "list scenario names and exit");
  auto* reps_opt = exp->add_option("--reps", reps, "replications per cell");
  exp->add_option("--n", over_n, "baseline sample size");
  exp->add_option("--m", over_m, "test sample size");
  exp->add_option("--d", over_d, "dimension");
  add_common(exp, exp_opt);
  exp->add_option("--out", exp_out, "CSV output path ('-' for stdout)");
  exp->add_flag("--no-timing", no_timing,
                "report mean_ms as 0 so outputs are byte-stable");

  // generate
  auto* gen = app.add_subcommand("generate", "write synthetic X/Y sample CSVs");
  std::string spec_path, gen_experiment, out_prefix = "sample", dump_spec;
  std::int64_t nx = 0, ny = 0;
  std::uint64_t gen_seed = 1;
  int gen_d = 0;
  gen->add_option("--spec", spec_path, "mixture spec JSON file");
  gen->add_option("--experiment", gen_experiment, "built-in scenario name");
  gen->add_option("--d", gen_d, "dimension (scenarios with variable d)");
  gen->add_option("--nx", nx, "rows of X (default: scenario n)");
  gen->add_option("--ny", ny, "rows of Y (default: scenario m)");
  gen->add_option("--seed", gen_seed, "master seed");
  gen->add_option("--out-prefix", out_prefix, "prefix for <prefix>_{x,y}.csv");
  gen->add_option("--dump-spec", dump_spec, "also write the spec pair as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (test->parsed()) {
      return cmd_test(x_csv, y_csv, test_opt, arcsinh, format, out_path);
    }
    if (exp->parsed()) {
      if (list) {
        for (const auto& n : h2::experiment_names()) std::cout << n << "\n";
        return exit_ok;
      }
      return cmd_experiment(exp_name, plan_path, exp_opt, reps, over_n, over_m,
                            over_d, no_timing, exp_out,
                            !exp_opt.tests.empty() &&
                                exp->count("--tests") > 0,
                            reps_opt->count() > 0);
    }
    if (gen->parsed()) {
      return cmd_generate(spec_path, gen_experiment, gen_d, nx, ny, gen_seed,
                          out_prefix, dump_spec);
    }
  } catch (const h2::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_error;
  }
  return exit_error;
}

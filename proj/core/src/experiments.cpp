#include "hetero2st/experiments.hpp"

#include <cmath>

#include "hetero2st/errors.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

namespace {

Eigen::VectorXd constant_vec(int d, double v) {
  return Eigen::VectorXd::Constant(d, v);
}

MixtureComponent gaussian(Eigen::VectorXd mean, CovSpec cov) {
  MixtureComponent c;
  c.family = ComponentFamily::gaussian;
  c.location = std::move(mean);
  c.cov = cov;
  return c;
}

MixtureComponent gamma_cop(int d, double shape, double rate, CovSpec corr) {
  MixtureComponent c;
  c.family = ComponentFamily::gamma_copula;
  c.shape = constant_vec(d, shape);
  c.rate = constant_vec(d, rate);
  c.cov = corr;
  return c;
}

MixtureComponent exp_cop(int d, double rate, CovSpec corr) {
  MixtureComponent c;
  c.family = ComponentFamily::exponential_copula;
  c.rate = constant_vec(d, rate);
  c.cov = corr;
  return c;
}

// Zero-inflation probabilities: the first round(0.8 d) coordinates carry the
// given draws (or constant), the rest are 0.
Eigen::VectorXd inflation_vector(int d, const std::vector<double>& head) {
  Eigen::VectorXd p = Eigen::VectorXd::Zero(d);
  for (std::size_t j = 0; j < head.size(); ++j)
    p(static_cast<Eigen::Index>(j)) = head[j];
  return p;
}

int inflated_coords(int d) {
  return static_cast<int>(std::llround(0.8 * d));
}

struct Exp1Parts {
  Eigen::VectorXd mu1, mu2, mu3;
  CovSpec s1, s2, s3;
};

Exp1Parts exp1_parts(int d, std::uint64_t component_seed) {
  Exp1Parts p;
  p.mu1 = constant_vec(d, 0.0);
  p.mu2 = constant_vec(d, -3.0);
  p.mu3 = constant_vec(d, 3.0);
  p.s1 = CovSpec::spd(1.0, 10.0, derive_seed(component_seed, 1));
  p.s2 = CovSpec::spd(1.0, 10.0, derive_seed(component_seed, 2));
  p.s3 = CovSpec::spd(1.0, 10.0, derive_seed(component_seed, 3));
  return p;
}

MixtureSpec make_mixture(int d, std::vector<MixtureComponent> comps,
                         std::vector<double> weights,
                         Eigen::VectorXd zero_inflation = {}) {
  MixtureSpec spec;
  spec.d = d;
  spec.components = std::move(comps);
  spec.weights = std::move(weights);
  spec.zero_inflation = std::move(zero_inflation);
  return spec;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "exp1-s1", "exp1-s2", "exp2-s1", "exp2-s2", "exp3-s1", "exp3-s2",
      "fig1-case1", "fig1-case2", "fig1-case3",
      "fig2-case1", "fig2-case2", "fig2-case3",
  };
  return names;
}

std::vector<std::array<std::int64_t, 3>> experiment_grid(
    const std::string& name) {
  auto grid_for = [](std::int64_t m_small, std::int64_t m_big) {
    std::vector<std::array<std::int64_t, 3>> g;
    for (std::int64_t d : {5, 15, 30}) g.push_back({500, m_small, d});
    for (std::int64_t d : {5, 15, 30}) g.push_back({2000, m_big, d});
    return g;
  };
  if (name == "exp1-s1" || name == "exp1-s2" || name == "exp2-s1" ||
      name == "exp3-s1") {
    return grid_for(50, 200);
  }
  if (name == "exp2-s2") return grid_for(25, 100);
  if (name == "exp3-s2") return grid_for(10, 40);
  if (name.rfind("fig1-", 0) == 0) return {{2000, 200, 2}};
  if (name.rfind("fig2-", 0) == 0) return {{2000, 200, 3}};
  throw UnknownExperiment("unknown experiment '" + name + "'");
}

ExperimentSetting experiment_spec(const std::string& name, int d,
                                  std::uint64_t component_seed) {
  const auto grid = experiment_grid(name);  // validates the name
  ExperimentSetting out;
  out.name = name;
  out.n = grid.front()[0];
  out.m = grid.front()[1];
  const int default_d = static_cast<int>(grid.front()[2]);
  if (d == 0) d = default_d;
  if (d < 1) throw InvalidSpec("d must be >= 1");
  if (name.rfind("fig", 0) == 0 && d != default_d) {
    throw InvalidSpec(name + " is defined for d = " + std::to_string(default_d));
  }
  out.d = d;

  if (name == "exp1-s1" || name == "exp1-s2") {
    const Exp1Parts p = exp1_parts(d, component_seed);
    out.fx = make_mixture(
        d, {gaussian(p.mu1, p.s1), gaussian(p.mu2, p.s2), gaussian(p.mu3, p.s3)},
        {0.3, 0.3, 0.4});
    CovSpec s3y = p.s3;
    if (name == "exp1-s2") s3y.scale = 0.25;
    out.fy = make_mixture(
        d, {gaussian(p.mu1, p.s1), gaussian(p.mu2, p.s2), gaussian(p.mu3, s3y)},
        {0.1, 0.1, 0.8});
    return out;
  }

  if (name == "exp2-s1" || name == "exp2-s2") {
    const CovSpec s1 = CovSpec::taper(0.7, 1);
    const CovSpec s2 = CovSpec::taper(0.9, -1);
    out.fx = make_mixture(
        d, {gamma_cop(d, 5.0, 1.0, s1), exp_cop(d, 1.0, s2)}, {0.5, 0.5});
    if (name == "exp2-s1") {
      out.fy = make_mixture(
          d, {gamma_cop(d, 5.0, 1.0, s1), exp_cop(d, 1.0, s2)}, {0.05, 0.95});
    } else {
      const CovSpec s3 = CovSpec::taper(0.9, 1, 0.25);
      out.fy = make_mixture(
          d, {gamma_cop(d, 5.0, 1.0, s1), exp_cop(d, 1.5, s3)}, {0.8, 0.2});
    }
    return out;
  }

  if (name == "exp3-s1" || name == "exp3-s2") {
    const CovSpec s1 = CovSpec::taper(0.7, 1);
    const CovSpec s2 = CovSpec::taper(0.9, -1);
    const int nz = inflated_coords(d);
    Rng rng = make_rng(derive_seed(component_seed, 7));
    std::uniform_real_distribution<double> u(0.5, 0.6);
    std::vector<double> p_head(static_cast<std::size_t>(nz));
    for (auto& v : p_head) v = u(rng);
    const Eigen::VectorXd p = inflation_vector(d, p_head);

    out.fx = make_mixture(
        d, {gamma_cop(d, 5.0, 1.0, s1), exp_cop(d, 1.0, s2)}, {0.5, 0.5}, p);
    if (name == "exp3-s1") {
      out.fy = make_mixture(
          d, {gamma_cop(d, 5.0, 1.0, s1), exp_cop(d, 1.0, s2)}, {0.2, 0.8}, p);
    } else {
      const Eigen::VectorXd q = inflation_vector(
          d, std::vector<double>(static_cast<std::size_t>(nz), 0.3));
      out.fy = make_mixture(
          d, {gamma_cop(d, 5.0, 1.5, s1), exp_cop(d, 1.0, s2)}, {0.5, 0.5}, q);
    }
    return out;
  }

  if (name.rfind("fig1-", 0) == 0) {
    Eigen::VectorXd mu1(2), mu2(2), mu3(2), mu4(2), mu5(2);
    mu1 << 10, 10;
    mu2 << 20, 10;
    mu3 << 20, 20;
    mu4 << 10, 20;
    mu5 << 25, 5;
    const CovSpec id = CovSpec::identity();
    out.fx = make_mixture(2,
                          {gaussian(mu1, id), gaussian(mu2, id),
                           gaussian(mu3, id), gaussian(mu4, id)},
                          {0.25, 0.25, 0.25, 0.25});
    if (name == "fig1-case1") {
      out.fy = out.fx;
    } else if (name == "fig1-case2") {
      out.fy = make_mixture(
          2, {gaussian(mu1, id), gaussian(mu2, id), gaussian(mu3, id)},
          {0.1, 0.8, 0.1});
    } else if (name == "fig1-case3") {
      out.fy = make_mixture(2, {gaussian(mu5, id)}, {1.0});
    } else {
      throw UnknownExperiment("unknown experiment '" + name + "'");
    }
    return out;
  }

  if (name.rfind("fig2-", 0) == 0) {
    Eigen::VectorXd mu1(3), mu2(3), mu3(3);
    mu1 << 0, 0, 0;
    mu2 << 0, -4, -4;
    mu3 << 4, -2, -3;
    const CovSpec id = CovSpec::identity();
    out.fx = make_mixture(
        3, {gaussian(mu1, id), gaussian(mu2, id), gaussian(mu3, id)},
        {0.3, 0.3, 0.4});
    if (name == "fig2-case1") {
      out.fy = out.fx;
    } else if (name == "fig2-case2") {
      out.fy = make_mixture(
          3, {gaussian(mu1, id), gaussian(mu2, id), gaussian(mu3, id)},
          {0.8, 0.1, 0.1});
    } else if (name == "fig2-case3") {
      const CovSpec tight = CovSpec::identity(0.1);
      out.fy = make_mixture(
          3, {gaussian(mu1, tight), gaussian(mu2, tight), gaussian(mu3, tight)},
          {0.8, 0.1, 0.1});
    } else {
      throw UnknownExperiment("unknown experiment '" + name + "'");
    }
    return out;
  }

  throw UnknownExperiment("unknown experiment '" + name + "'");
}

}  // namespace hetero2st

#include "hetero2st/mixtures.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "hetero2st/errors.hpp"
#include "hetero2st/rng.hpp"

namespace hetero2st {

Eigen::MatrixXd random_spd(int d, double eig_lo, double eig_hi,
                           std::uint64_t seed) {
  if (d < 1) throw InvalidSpec("dimension must be >= 1");
  if (!(eig_lo > 0.0) || eig_lo > eig_hi) {
    throw InvalidSpec("need 0 < eig_lo <= eig_hi");
  }
  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> eig(eig_lo, eig_hi);
  Eigen::VectorXd lambda(d);
  for (int i = 0; i < d; ++i) lambda(i) = eig(rng);

  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = gauss(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  Eigen::MatrixXd out = q * lambda.asDiagonal() * q.transpose();
  return 0.5 * (out + out.transpose());  // exact symmetry
}

Eigen::MatrixXd tapering_corr(int d, double base, int sign) {
  if (d < 1) throw InvalidSpec("dimension must be >= 1");
  if (!(std::abs(base) < 1.0)) throw InvalidSpec("|base| must be < 1");
  if (sign != 1 && sign != -1) throw InvalidSpec("sign must be +1 or -1");
  const double b = sign * base;
  Eigen::MatrixXd out(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out(i, j) = std::pow(b, std::abs(i - j));
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(out);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    throw NotPositiveDefinite("tapering matrix with base " +
                              std::to_string(b) + " is not positive definite");
  }
  return out;
}

CovSpec CovSpec::identity(double c) {
  CovSpec s;
  s.kind = Kind::identity_scaled;
  s.scale = c;
  return s;
}

CovSpec CovSpec::spd(double lo, double hi, std::uint64_t seed, double scale) {
  CovSpec s;
  s.kind = Kind::random_spd;
  s.eig_lo = lo;
  s.eig_hi = hi;
  s.seed = seed;
  s.scale = scale;
  return s;
}

CovSpec CovSpec::taper(double base, int sign, double scale) {
  CovSpec s;
  s.kind = Kind::tapering;
  s.base = base;
  s.sign = sign;
  s.scale = scale;
  return s;
}

Eigen::MatrixXd CovSpec::materialize(int d) const {
  if (!(scale > 0.0)) throw InvalidSpec("cov scale must be positive");
  switch (kind) {
    case Kind::identity_scaled:
      return scale * Eigen::MatrixXd::Identity(d, d);
    case Kind::random_spd:
      return scale * random_spd(d, eig_lo, eig_hi, seed);
    case Kind::tapering:
      return scale * tapering_corr(d, base, sign);
  }
  throw InvalidSpec("unknown covariance kind");
}

void MixtureSpec::validate() const {
  if (d < 1) throw InvalidSpec("spec.d must be >= 1");
  if (components.empty()) throw InvalidSpec("spec.components must be nonempty");
  if (components.size() != weights.size()) {
    throw InvalidSpec("spec.weights size must match spec.components");
  }
  double total = 0.0;
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (!(weights[a] > 0.0 && weights[a] <= 1.0)) {
      throw InvalidSpec("spec.weights[" + std::to_string(a) +
                        "] must lie in (0, 1]");
    }
    total += weights[a];
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw InvalidSpec("spec.weights must sum to 1 within 1e-12, got " +
                      std::to_string(total));
  }
  if (zero_inflation.size() != 0 &&
      zero_inflation.size() != static_cast<Eigen::Index>(d)) {
    throw InvalidSpec("spec.zero_inflation must have length d");
  }
  for (Eigen::Index j = 0; j < zero_inflation.size(); ++j) {
    if (!(zero_inflation(j) >= 0.0 && zero_inflation(j) <= 1.0)) {
      throw InvalidSpec("spec.zero_inflation[" + std::to_string(j) +
                        "] must lie in [0, 1]");
    }
  }
  for (std::size_t a = 0; a < components.size(); ++a) {
    const auto& c = components[a];
    const std::string at = "spec.components[" + std::to_string(a) + "]";
    auto expect_len = [&](const Eigen::VectorXd& v, const char* field) {
      if (v.size() != static_cast<Eigen::Index>(d)) {
        throw InvalidSpec(at + "." + field + " must have length d");
      }
    };
    switch (c.family) {
      case ComponentFamily::gaussian:
        expect_len(c.location, "mean");
        break;
      case ComponentFamily::gamma_copula:
        expect_len(c.shape, "shape");
        expect_len(c.rate, "rate");
        for (Eigen::Index j = 0; j < c.shape.size(); ++j) {
          if (!(c.shape(j) > 0.0) || !(c.rate(j) > 0.0)) {
            throw InvalidSpec(at + " gamma shape and rate must be positive");
          }
        }
        break;
      case ComponentFamily::exponential_copula:
        expect_len(c.rate, "rate");
        for (Eigen::Index j = 0; j < c.rate.size(); ++j) {
          if (!(c.rate(j) > 0.0)) {
            throw InvalidSpec(at + " exponential rate must be positive");
          }
        }
        break;
    }
    // Positive definiteness surfaces here rather than mid-sampling.
    const Eigen::MatrixXd cov = c.cov.materialize(d);
    const Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
      throw InvalidSpec(at + ".cov is not positive definite");
    }
  }
}

namespace {

double std_normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double gamma_quantile(double shape, double rate, double u) {
  const boost::math::gamma_distribution<double> dist(shape, 1.0 / rate);
  return boost::math::quantile(dist, u);
}

}  // namespace

PointCloud sample_mixture(const MixtureSpec& spec, std::int64_t count,
                          std::uint64_t seed) {
  spec.validate();
  if (count < 1) throw InvalidSpec("sample count must be >= 1");

  // Cholesky factors once per component.
  std::vector<Eigen::MatrixXd> chol(spec.components.size());
  for (std::size_t a = 0; a < spec.components.size(); ++a) {
    const Eigen::LLT<Eigen::MatrixXd> llt(
        spec.components[a].cov.materialize(spec.d));
    chol[a] = llt.matrixL();
  }
  std::vector<double> cumweights(spec.weights.size());
  std::partial_sum(spec.weights.begin(), spec.weights.end(), cumweights.begin());

  Rng rng = make_rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  Matrix out(count, spec.d);
  Eigen::VectorXd z(spec.d);
  const bool inflate = spec.zero_inflation.size() > 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const double pick = uni(rng);
    std::size_t a = 0;
    while (a + 1 < cumweights.size() && pick > cumweights[a]) ++a;
    const auto& comp = spec.components[a];

    for (int j = 0; j < spec.d; ++j) z(j) = gauss(rng);
    Eigen::VectorXd latent = chol[a] * z;
    Eigen::RowVectorXd row(spec.d);
    switch (comp.family) {
      case ComponentFamily::gaussian:
        row = (comp.location + latent).transpose();
        break;
      case ComponentFamily::gamma_copula:
        for (int j = 0; j < spec.d; ++j) {
          const double u = std::clamp(std_normal_cdf(latent(j)), 1e-16,
                                      1.0 - 1e-16);
          row(j) = gamma_quantile(comp.shape(j), comp.rate(j), u);
        }
        break;
      case ComponentFamily::exponential_copula:
        for (int j = 0; j < spec.d; ++j) {
          const double u = std::clamp(std_normal_cdf(latent(j)), 1e-16,
                                      1.0 - 1e-16);
          row(j) = -std::log1p(-u) / comp.rate(j);
        }
        break;
    }
    if (inflate) {
      for (int j = 0; j < spec.d; ++j) {
        if (uni(rng) < spec.zero_inflation(j)) row(j) = 0.0;
      }
    }
    out.row(i) = row;
  }
  return PointCloud(std::move(out));
}

namespace {

const char* family_name(ComponentFamily f) {
  switch (f) {
    case ComponentFamily::gaussian: return "gaussian";
    case ComponentFamily::gamma_copula: return "gamma_copula";
    case ComponentFamily::exponential_copula: return "exponential_copula";
  }
  return "?";
}

ComponentFamily family_from(const std::string& s) {
  if (s == "gaussian") return ComponentFamily::gaussian;
  if (s == "gamma_copula") return ComponentFamily::gamma_copula;
  if (s == "exponential_copula") return ComponentFamily::exponential_copula;
  throw InvalidSpec("unknown component family '" + s + "'");
}

nlohmann::json cov_to_json(const CovSpec& c) {
  nlohmann::json j;
  switch (c.kind) {
    case CovSpec::Kind::identity_scaled:
      j["kind"] = "identity";
      break;
    case CovSpec::Kind::random_spd:
      j["kind"] = "random_spd";
      j["eig_lo"] = c.eig_lo;
      j["eig_hi"] = c.eig_hi;
      j["seed"] = c.seed;
      break;
    case CovSpec::Kind::tapering:
      j["kind"] = "tapering";
      j["base"] = c.base;
      j["sign"] = c.sign;
      break;
  }
  if (c.scale != 1.0) j["scale"] = c.scale;
  return j;
}

CovSpec cov_from_json(const nlohmann::json& j) {
  CovSpec c;
  const std::string kind = j.at("kind").get<std::string>();
  c.scale = j.value("scale", 1.0);
  if (kind == "identity") {
    c.kind = CovSpec::Kind::identity_scaled;
  } else if (kind == "random_spd") {
    c.kind = CovSpec::Kind::random_spd;
    c.eig_lo = j.at("eig_lo").get<double>();
    c.eig_hi = j.at("eig_hi").get<double>();
    c.seed = j.value("seed", std::uint64_t{0});
  } else if (kind == "tapering") {
    c.kind = CovSpec::Kind::tapering;
    c.base = j.at("base").get<double>();
    c.sign = j.value("sign", 1);
  } else {
    throw InvalidSpec("cov.kind must be identity, random_spd or tapering");
  }
  return c;
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return {v.data(), v.data() + v.size()};
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(),
                                           static_cast<Eigen::Index>(v.size()));
}

}  // namespace

nlohmann::json mixture_spec_to_json(const MixtureSpec& spec) {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : spec.components) {
    nlohmann::json jc{{"family", family_name(c.family)},
                      {"cov", cov_to_json(c.cov)}};
    switch (c.family) {
      case ComponentFamily::gaussian:
        jc["mean"] = to_std(c.location);
        break;
      case ComponentFamily::gamma_copula:
        jc["shape"] = to_std(c.shape);
        jc["rate"] = to_std(c.rate);
        break;
      case ComponentFamily::exponential_copula:
        jc["rate"] = to_std(c.rate);
        break;
    }
    comps.push_back(std::move(jc));
  }
  nlohmann::json j{{"d", spec.d}, {"weights", spec.weights},
                   {"components", comps}};
  if (spec.zero_inflation.size() > 0) {
    j["zero_inflation"] = to_std(spec.zero_inflation);
  }
  return j;
}

MixtureSpec mixture_spec_from_json(const nlohmann::json& j) {
  MixtureSpec spec;
  spec.d = j.at("d").get<int>();
  spec.weights = j.at("weights").get<std::vector<double>>();
  if (j.contains("zero_inflation")) {
    spec.zero_inflation =
        to_eigen(j.at("zero_inflation").get<std::vector<double>>());
  }
  for (const auto& jc : j.at("components")) {
    MixtureComponent c;
    c.family = family_from(jc.at("family").get<std::string>());
    c.cov = cov_from_json(jc.at("cov"));
    switch (c.family) {
      case ComponentFamily::gaussian:
        c.location = to_eigen(jc.at("mean").get<std::vector<double>>());
        break;
      case ComponentFamily::gamma_copula:
        c.shape = to_eigen(jc.at("shape").get<std::vector<double>>());
        c.rate = to_eigen(jc.at("rate").get<std::vector<double>>());
        break;
      case ComponentFamily::exponential_copula:
        c.rate = to_eigen(jc.at("rate").get<std::vector<double>>());
        break;
    }
    spec.components.push_back(std::move(c));
  }
  spec.validate();
  return spec;
}

}  // namespace hetero2st

#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "hetero2st/point_cloud.hpp"

namespace hetero2st {

/// Symmetric positive definite matrix with eigenvalues drawn uniformly from
/// [eig_lo, eig_hi] and a Haar-like random orthogonal basis (QR of a standard
/// Gaussian matrix with sign-fixed diagonal).
Eigen::MatrixXd random_spd(int d, double eig_lo, double eig_hi,
                           std::uint64_t seed);

/// AR(1)-style tapering correlation matrix with entry (sign*base)^|i-j|.
/// Requires |base| < 1; throws NotPositiveDefinite if the result fails a
/// positive-definiteness check.
Eigen::MatrixXd tapering_corr(int d, double base, int sign);

/// Declarative covariance / copula-correlation matrix.
struct CovSpec {
  enum class Kind { identity_scaled, random_spd, tapering };
  Kind kind = Kind::identity_scaled;
  double scale = 1.0;  // multiplies the materialized matrix
  double eig_lo = 1.0, eig_hi = 1.0;  // random_spd
  std::uint64_t seed = 0;             // random_spd
  double base = 0.0;                  // tapering
  int sign = 1;                       // tapering

  static CovSpec identity(double c = 1.0);
  static CovSpec spd(double lo, double hi, std::uint64_t seed, double scale = 1.0);
  static CovSpec taper(double base, int sign, double scale = 1.0);

  Eigen::MatrixXd materialize(int d) const;
};

enum class ComponentFamily { gaussian, gamma_copula, exponential_copula };

/// One mixture component. Gaussian components use location + cov as the
/// covariance matrix. Copula components draw a latent Gaussian with cov used
/// verbatim as the copula parameter, push each coordinate through the
/// standard normal cdf and then through the margin quantile (Gamma with
/// per-coordinate shape and rate, or Exponential with per-coordinate rate).
struct MixtureComponent {
  ComponentFamily family = ComponentFamily::gaussian;
  Eigen::VectorXd location;  // gaussian
  Eigen::VectorXd shape;     // gamma_copula
  Eigen::VectorXd rate;      // gamma_copula / exponential_copula
  CovSpec cov;
};

/// Mixture distribution with optional coordinatewise zero inflation applied
/// after the component draw: coordinate j is replaced by 0 with probability
/// zero_inflation[j].
struct MixtureSpec {
  int d = 1;
  std::vector<MixtureComponent> components;
  std::vector<double> weights;
  Eigen::VectorXd zero_inflation;  // size 0 (none) or d

  /// Throws InvalidSpec with the offending field named.
  void validate() const;
};

/// Seeded sampler. Deterministic given (spec, seed): the same call returns
/// bit-identical output on every run and thread count.
PointCloud sample_mixture(const MixtureSpec& spec, std::int64_t count,
                          std::uint64_t seed);

/// JSON schema documented in the README (mixture spec files).
nlohmann::json mixture_spec_to_json(const MixtureSpec& spec);
MixtureSpec mixture_spec_from_json(const nlohmann::json& j);

}  // namespace hetero2st

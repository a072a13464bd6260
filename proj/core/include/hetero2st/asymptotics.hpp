#pragma once

namespace hetero2st {

/// Limit-regime parameters of the composite-null analysis: graph multiplicity
/// ell, sample-ratio limit rho = n/m, number of baseline components k, lower
/// weight bound l_bound with l_bound * k <= 1, and density bounds m1 <= m2.
struct AsymptoticParams {
  int ell = 1;
  double rho = 1.0;
  int k = 1;
  double l_bound = 1.0;
  double m1 = 1.0;
  double m2 = 1.0;

  /// Throws InvalidSpec on violated invariants.
  void validate() const;
};

/// Asymptotic rejection cutoff for the weighted edge-count statistic under
/// the composite null:
///   gamma = (ell rho / (1+rho)^2) * (1 + (1+rho) k^2 / (l_bound rho^2)).
double gamma_cutoff(const AsymptoticParams& p);

/// L2 separation radius beyond which the gamma-calibrated test has
/// asymptotic power one:
///   epsilon = sqrt(2 m2^3 (1+rho)^3 k^2 / (m1^2 rho^3 l_bound)).
double epsilon_separation(const AsymptoticParams& p);

}  // namespace hetero2st

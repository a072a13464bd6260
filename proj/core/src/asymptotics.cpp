#include "hetero2st/asymptotics.hpp"

#include <cmath>

#include "hetero2st/errors.hpp"

namespace hetero2st {

void AsymptoticParams::validate() const {
  if (ell < 1) throw InvalidSpec("ell must be >= 1");
  if (!(rho > 0.0)) throw InvalidSpec("rho must be positive");
  if (k < 1) throw InvalidSpec("k must be >= 1");
  if (!(l_bound > 0.0) || l_bound * k > 1.0 + 1e-12) {
    throw InvalidSpec("l_bound must satisfy 0 < l_bound <= 1/k");
  }
  if (!(m1 > 0.0) || m1 > m2) throw InvalidSpec("need 0 < m1 <= m2");
}

double gamma_cutoff(const AsymptoticParams& p) {
  p.validate();
  const double one_plus = 1.0 + p.rho;
  const double lead = p.ell * p.rho / (one_plus * one_plus);
  const double kk = static_cast<double>(p.k) * p.k;
  return lead * (1.0 + one_plus * kk / (p.l_bound * p.rho * p.rho));
}

double epsilon_separation(const AsymptoticParams& p) {
  p.validate();
  const double one_plus = 1.0 + p.rho;
  const double kk = static_cast<double>(p.k) * p.k;
  const double num = 2.0 * p.m2 * p.m2 * p.m2 * one_plus * one_plus * one_plus * kk;
  const double den = p.m1 * p.m1 * p.rho * p.rho * p.rho * p.l_bound;
  return std::sqrt(num / den);
}

}  // namespace hetero2st

#pragma once

#include "becrad/model.hpp"

namespace becrad {

/// Polylogarithm evaluation with its error diagnostics.
struct PolylogSum {
  double value;
  /// Number of series terms summed; 0 when a closed form or the expansion
  /// about z = 1 was used.
  long terms_used;
  /// Upper bound on the discarded part of the evaluation.
  double truncation_bound;
};

struct BoseDensityResult {
  Density value;
  long terms_used;
  double truncation_bound;
};

/// Hard cap on the number of series terms summed directly.
inline constexpr long kPolylogTermCap = 1'000'000;

/// Li_s(z) = sum_{n>=1} z^n / n^s for 0 <= z <= 1, s > 0.
/// Throws DomainError for z outside [0, 1] or s <= 0 and DivergenceError for
/// z = 1 with s <= 1.
double polylog(double s, double z);

/// Li_s(e^w) for w <= 0, evaluated from the log-fugacity so that points very
/// close to z = 1 keep full precision. The direct series is used whenever it
/// converges within kPolylogTermCap terms; otherwise the expansion of Li_s
/// about z = 1 in powers of w is used.
PolylogSum polylog_exp(double s, double w);

/// Bose density integral
///   rho_0(mu) = (2 pi)^-d  int d^d k  1 / (exp(beta (c_kin k^2 - mu)) - 1)
///            = (4 pi beta c_kin)^(-d/2) Li_{d/2}(exp(beta mu)).
/// mu > 0 throws DomainError; mu = 0 with d <= 2 gives the infinite tag.
BoseDensityResult bose_density(double beta, double mu, int dim, double c_kin = 1.0);

/// Same integral by adaptive Gauss-Kronrod quadrature of the radial form.
/// Independent of the series route; used as a check on it.
double bose_density_quadrature(double beta, double mu, int dim, double c_kin = 1.0);

}  // namespace becrad

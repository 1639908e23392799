#pragma once

#include <optional>

#include "becrad/model.hpp"

namespace becrad {

/// The coupled (matter mode, photon) block of the grand-canonical
/// Hamiltonian at one chemical potential:
///   matter * a*a + photon * b*b + (g/2)(coupling term),
/// with matter = eps_Q - mu and photon = Omega.
///
/// `margin` = 4 * matter * photon - g^2 is carried separately because the
/// lower normal-mode energy is proportional to it and it vanishes at the
/// critical chemical potential; recomputing it from `matter` would cancel
/// catastrophically there.
struct CoupledBlock {
  double matter;
  double photon;
  double g;
  double margin;

  static CoupledBlock at_mu(double eps_q, double mu, double omega, double g);
  /// Block at mu = mu_c - gap for gap >= 0, with the margin formed without
  /// cancellation: 4 Omega (max(threshold, 0) + gap).
  static CoupledBlock below_critical(const ModelParams& params, double gap);
};

struct SpectrumPair {
  double e_plus;
  double e_minus;
  /// Rotation angle (rotating coupling) or rapidity (pair coupling); zero at g = 0.
  double mixing;
  Variant variant;
};

/// Normal modes of matter a*a + photon b*b + (g/2)(a*b + b*a).
/// E_pm = ((A + B) +- sqrt((A - B)^2 + g^2)) / 2; angle from
/// tan 2 theta = -g / (B - A) on the branch (-pi/4, pi/4].
SpectrumPair model1_spectrum(const CoupledBlock& block);
SpectrumPair model1_spectrum(double eps_q, double mu, double omega, double g);

/// Bogoliubov normal modes of matter a*a + photon b*b + (g/2)(a*b* + a b).
/// E_pm = (+-(A - B) + sqrt((A + B)^2 - g^2)) / 2; rapidity from
/// tanh 2 phi = -g / (A + B). Throws InstabilityError when (A + B)^2 <= g^2.
SpectrumPair model2_spectrum(const CoupledBlock& block);
SpectrumPair model2_spectrum(double eps_q, double mu, double omega, double g);

/// Closed form for either coupled variant.
SpectrumPair block_spectrum(Variant variant, const CoupledBlock& block);

/// Numerical eigen-solution used to check the closed forms. For the
/// rotating coupling: eigenvalues of [[A, g/2], [g/2, B]]. For the pair
/// coupling: eigenvalues {E+, -E-} of the equation-of-motion matrix
/// [[A, g/2], [-g/2, -B]] acting on (a, b*).
struct OraclePair {
  double e_plus;
  double e_minus;
};
OraclePair numerical_spectrum_oracle(Variant variant, double matter, double photon, double g);

struct StabilityVerdict {
  bool stable;
  /// min(E+, E-) when the normal modes exist; for the free gas, the zero-mode
  /// energy -mu.
  std::optional<double> margin;
};

/// Stable iff mu <= mu_c (and, for the pair coupling, the Bogoliubov
/// transformation exists).
StabilityVerdict stability_check(const ModelParams& params, double mu);

}  // namespace becrad

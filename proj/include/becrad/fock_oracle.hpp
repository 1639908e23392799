#pragma once

#include "becrad/model.hpp"

namespace becrad {

/// Brute-force thermal state of the coupled two-mode block
///   A a*a + B b*b + (g/2)(a*b + b*a)     (rotating coupling)
///   A a*a + B b*b + (g/2)(a*b* + a b)    (pair coupling)
/// on the truncated basis {|n_a, n_b> : n_a, n_b <= n_max}.
///
/// Both couplings conserve a quantum number (n_a + n_b, resp. n_b - n_a), so
/// the truncated Hamiltonian splits into tridiagonal blocks, each
/// diagonalized exactly with LAPACK. No closed-form normal-mode result is used.
struct ThermalMoments {
  double n_matter;       // <a*a>
  double n_photon;       // <b*b>
  double correlation;    // Re <a*b> or Re <a*b*>
  double conserved;      // <n_a + n_b> (rotating) or <n_b - n_a> (pair), summed per block
  double log_partition;  // ln Tr exp(-beta H) on the truncated space
  int n_max;
};

/// Largest allowed per-mode cutoff: (n_max + 1)^2 <= 10^6 basis states.
inline constexpr int kFockMaxCutoff = 999;

/// Throws InstabilityError unless A > 0, B > 0 and 4AB > g^2, and
/// DomainError for an n_max outside [1, kFockMaxCutoff].
ThermalMoments thermal_expectations(Variant variant, double matter, double photon, double g,
                                    double beta, int n_max);

/// Doubles n_max from 8 until every observable changes by less than `tol`
/// (relative, with an absolute floor of tol for values below one). Throws
/// ConvergenceError with the last two estimates if n_max = 512 is not enough.
ThermalMoments converged_thermal_expectations(Variant variant, double matter, double photon,
                                              double g, double beta, double tol = 1e-9);

}  // namespace becrad

#pragma once

#include "becrad/gibbs.hpp"
#include "becrad/lattice.hpp"
#include "becrad/model.hpp"

namespace becrad {

/// Finite-volume chemical potential fixed by the density constraint
///   rho = V^-1 sum_{free k} n(eps_k - mu) + V^-1 <coupled matter mode>(mu).
struct MuSolution {
  double mu;
  /// mu_c - mu > 0, carried separately so it keeps full relative precision
  /// when mu is within O(1/V) of mu_c.
  double gap;
  double volume;
  double rho_target;
  /// constraint(mu) - rho
  double residual;
  Regime regime;
  int iterations;
};

/// Total density implied by the grand-canonical state at mu = mu_c - gap.
class DensityConstraint {
 public:
  DensityConstraint(const ModelParams& params, const VolumeSpec& vol);

  double at_gap(double gap) const;
  /// True when the coupled-block occupation diverges as mu -> mu_c, which
  /// guarantees a root below mu_c for every density.
  bool diverges_at_critical() const { return diverges_; }
  /// Supremum of the constraint on mu < mu_c when it does not diverge.
  double capacity() const;

  const FreeModes& free_modes() const { return free_; }
  const ModelParams& params() const { return params_; }
  double volume() const { return free_.volume(); }

 private:
  ModelParams params_;
  FreeModes free_;
  double mu_c_;
  bool diverges_;
};

/// Solves the density constraint by bracketing and bisection on the gap
/// below mu_c. Throws DomainError for rho <= 0 or when rho exceeds the
/// finite-volume capacity (coupled block with eps_Q > g^2/(4 Omega)), and
/// ConvergenceError if the residual tolerance 1e-12 * rho is not met.
MuSolution solve_mu(const ModelParams& params, double rho, const VolumeSpec& vol);
MuSolution solve_mu(const DensityConstraint& constraint, double rho);

/// Thermodynamic-limit chemical potential: the root of rho_0(mu) = rho on
/// (-inf, mu_c] in the normal phase, mu_c itself when condensed.
struct LimitingMu {
  double mu;
  Regime regime;
};
LimitingMu limiting_mu(const ModelParams& params, double rho);

/// Leading large-V behavior mu_c - 1/(beta V (rho - rho_c)). Requires a
/// finite rho_c < rho.
double asymptotic_mu(const ModelParams& params, double rho, double volume);

/// Leading large-V lower normal-mode energy of the rotating coupling:
/// (1/V) (1/(beta (rho - rho_c))) Omega / (Omega - mu_c + eps_Q).
double asymptotic_gap(const ModelParams& params, double rho, double volume);

/// Coupled-block expectations at the solved mu_V, divided by V, together with
/// the free-mode density and the solution itself.
struct FiniteVolumeState {
  MuSolution solution;
  OccupationSet densities;
  /// Lower normal-mode energy at mu_V (the zero-mode energy for the free gas).
  double lowest_mode_energy;
};
FiniteVolumeState finite_volume_condensates(const ModelParams& params, double rho,
                                            const VolumeSpec& vol);

}  // namespace becrad

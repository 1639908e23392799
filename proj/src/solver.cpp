#include "becrad/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "becrad/errors.hpp"
#include "becrad/specfun.hpp"

namespace becrad {

namespace {

constexpr int kMaxIterations = 4000;
constexpr double kResidualTolerance = 1e-12;

double block_matter(const ModelParams& params, double gap) {
  return occupations_below_critical(params, gap).matter_mode;
}

// Bisection on a strictly decreasing function f of the gap with
// f(lo) > 0 > f(hi). Splits geometrically while the bracket spans more than
// a factor of two, then arithmetically.
struct BisectionResult {
  double gap;
  double residual;
  int iterations;
};

template <typename F>
BisectionResult bisect_gap(F f, double lo, double f_lo, double hi, double f_hi, int iterations,
                           double target_abs) {
  for (; iterations < kMaxIterations; ++iterations) {
    const double mid = (lo > 0.0 && hi > 2.0 * lo) ? std::sqrt(lo) * std::sqrt(hi)
                                                   : lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double f_mid = f(mid);
    if (std::abs(f_mid) <= target_abs) return {mid, f_mid, iterations + 1};
    if (f_mid > 0.0) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? BisectionResult{lo, f_lo, iterations}
                                          : BisectionResult{hi, f_hi, iterations};
}

}  // namespace

DensityConstraint::DensityConstraint(const ModelParams& params, const VolumeSpec& vol)
    : params_(params), free_(vol, params), mu_c_(critical_chemical_potential(params)) {
  diverges_ = !params.coupled() || block_threshold(params) <= 0.0;
}

double DensityConstraint::at_gap(double gap) const {
  return free_.density(mu_c_ - gap) + block_matter(params_, gap) / free_.volume();
}

double DensityConstraint::capacity() const {
  if (diverges_) return std::numeric_limits<double>::infinity();
  const OccupationSet at_edge =
      block_occupations(params_.variant(), CoupledBlock::below_critical(params_, 0.0),
                        params_.beta());
  return free_.density(mu_c_) + at_edge.matter_mode / free_.volume();
}

MuSolution solve_mu(const ModelParams& params, double rho, const VolumeSpec& vol) {
  return solve_mu(DensityConstraint(params, vol), rho);
}

MuSolution solve_mu(const DensityConstraint& constraint, double rho) {
  const ModelParams& params = constraint.params();
  if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("density must be positive");
  if (!constraint.diverges_at_critical() && rho >= constraint.capacity()) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density " << rho << " exceeds the finite-volume capacity "
        << constraint.capacity() << " below mu_c (eps_Q > g^2/(4 Omega))";
    throw DomainError(msg.str());
  }

  const double volume = constraint.volume();
  const double mu_c = critical_chemical_potential(params);
  auto excess = [&](double gap) { return constraint.at_gap(gap) - rho; };

  int iterations = 0;
  double lo = std::min(1.0, 1.0 / (params.beta() * volume));
  double f_lo = excess(lo);
  double hi = lo;
  double f_hi = f_lo;
  ++iterations;
  if (f_lo > 0.0) {
    // Too dense at this gap: move mu down until the constraint drops below rho.
    while (f_hi > 0.0) {
      lo = hi;
      f_lo = f_hi;
      hi *= 2.0;
      f_hi = excess(hi);
      if (++iterations > kMaxIterations || !std::isfinite(hi)) {
        throw ConvergenceError("solve_mu: failed to bracket the root from above");
      }
    }
  } else {
    // Too dilute: approach mu_c until the coupled block supplies the excess.
    while (f_lo <= 0.0) {
      if (f_lo == 0.0) {
        return {mu_c - lo, lo, volume, rho, 0.0, classify(params, rho), iterations};
      }
      hi = lo;
      f_hi = f_lo;
      lo *= 0.5;
      f_lo = excess(lo);
      if (++iterations > kMaxIterations || lo == 0.0) {
        throw ConvergenceError("solve_mu: failed to bracket the root near mu_c");
      }
    }
  }

  const BisectionResult root =
      bisect_gap(excess, lo, f_lo, hi, f_hi, iterations, 1e-15 * rho);
  if (!(std::abs(root.residual) <= kResidualTolerance * rho)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "solve_mu: residual " << root.residual << " above tolerance at gap " << root.gap
        << " after " << root.iterations << " iterations";
    throw ConvergenceError(msg.str());
  }
  return {mu_c - root.gap, root.gap, volume, rho, root.residual, classify(params, rho),
          root.iterations};
}

LimitingMu limiting_mu(const ModelParams& params, double rho) {
  const Regime regime = classify(params, rho);
  const double mu_c = regime.mu_c;
  if (regime.phase == Phase::Condensed) return {mu_c, regime};
  if (regime.rho_c.is_finite() && rho == regime.rho_c.value()) return {mu_c, regime};

  auto excess = [&](double gap) {
    return bose_density(params.beta(), mu_c - gap, params.dim(), params.c_kin()).value.value() -
           rho;
  };
  int iterations = 0;
  double lo = 0.0;
  double f_lo = regime.rho_c.is_finite() ? regime.rho_c.value() - rho : 1.0;
  double hi = 1.0;
  double f_hi = excess(hi);
  while (f_hi > 0.0) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    f_hi = excess(hi);
    if (++iterations > kMaxIterations) throw ConvergenceError("limiting_mu: no bracket");
  }
  if (regime.rho_c.is_infinite() && lo == 0.0) {
    // rho_0 diverges at mu_c: find a positive lower end.
    lo = hi;
    f_lo = f_hi;
    while (f_lo <= 0.0) {
      hi = lo;
      f_hi = f_lo;
      lo *= 0.5;
      f_lo = excess(lo);
      if (++iterations > kMaxIterations || lo == 0.0) {
        throw ConvergenceError("limiting_mu: no bracket near mu_c");
      }
    }
  }
  const BisectionResult root = bisect_gap(excess, lo, f_lo, hi, f_hi, iterations, 1e-15 * rho);
  return {mu_c - root.gap, regime};
}

double asymptotic_mu(const ModelParams& params, double rho, double volume) {
  const Regime regime = classify(params, rho);
  if (regime.phase != Phase::Condensed) {
    throw DomainError("asymptotic_mu requires rho above a finite critical density");
  }
  if (!(volume > 0.0)) throw DomainError("volume must be positive");
  return regime.mu_c - 1.0 / (params.beta() * volume * (rho - regime.rho_c.value()));
}

double asymptotic_gap(const ModelParams& params, double rho, double volume) {
  if (params.variant() != Variant::RotatingCoupling) {
    throw DomainError("asymptotic_gap is defined for the rotating coupling");
  }
  const Regime regime = classify(params, rho);
  if (regime.phase != Phase::Condensed) {
    throw DomainError("asymptotic_gap requires rho above a finite critical density");
  }
  if (!(volume > 0.0)) throw DomainError("volume must be positive");
  const double omega = params.omega();
  return (1.0 / volume) * (1.0 / (params.beta() * (rho - regime.rho_c.value()))) * omega /
         (omega - regime.mu_c + params.eps_q());
}

FiniteVolumeState finite_volume_condensates(const ModelParams& params, double rho,
                                            const VolumeSpec& vol) {
  const DensityConstraint constraint(params, vol);
  const MuSolution solution = solve_mu(constraint, rho);
  const double volume = constraint.volume();
  OccupationSet counts = occupations_below_critical(params, solution.gap);
  OccupationSet densities{counts.matter_mode / volume, counts.photon_mode / volume,
                          counts.correlation / volume,
                          constraint.free_modes().density(solution.mu)};
  double lowest = solution.gap;
  if (params.coupled()) {
    const SpectrumPair sp =
        block_spectrum(params.variant(), CoupledBlock::below_critical(params, solution.gap));
    lowest = std::min(sp.e_plus, sp.e_minus);
  }
  return {solution, densities, lowest};
}

}  // namespace becrad

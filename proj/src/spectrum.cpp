#include "becrad/spectrum.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "becrad/errors.hpp"

namespace becrad {

CoupledBlock CoupledBlock::at_mu(double eps_q, double mu, double omega, double g) {
  const double matter = eps_q - mu;
  return {matter, omega, g, 4.0 * matter * omega - g * g};
}

CoupledBlock CoupledBlock::below_critical(const ModelParams& params, double gap) {
  if (!(gap >= 0.0)) throw DomainError("gap below the critical chemical potential must be >= 0");
  const double mu_c = critical_chemical_potential(params);
  const double omega = params.omega();
  const double matter = (params.eps_q() - mu_c) + gap;
  const double margin = 4.0 * omega * (std::max(block_threshold(params), 0.0) + gap);
  return {matter, omega, params.g(), margin};
}

SpectrumPair model1_spectrum(const CoupledBlock& block) {
  const double a = block.matter;
  const double b = block.photon;
  const double split = std::hypot(a - b, block.g);
  // E+ >= max(A, B) > 0, so the lower root follows from E+ E- = margin / 4.
  const double e_plus = 0.5 * (a + b + split);
  const double e_minus = block.margin / (4.0 * e_plus);
  double angle = 0.0;
  if (block.g != 0.0) {
    const double detuning = b - a;
    angle = detuning == 0.0 ? 0.25 * std::numbers::pi : 0.5 * std::atan(-block.g / detuning);
  }
  return {e_plus, e_minus, angle, Variant::RotatingCoupling};
}

SpectrumPair model1_spectrum(double eps_q, double mu, double omega, double g) {
  return model1_spectrum(CoupledBlock::at_mu(eps_q, mu, omega, g));
}

SpectrumPair model2_spectrum(const CoupledBlock& block) {
  const double a = block.matter;
  const double b = block.photon;
  const double g = block.g;
  // (A + B)^2 - g^2 = (A - B)^2 + margin; the factored form is used past the
  // stability edge where the margin is negative.
  const double disc = block.margin >= 0.0 ? (a - b) * (a - b) + block.margin
                                          : (a + b - g) * (a + b + g);
  if (!(disc > 0.0)) {
    throw InstabilityError(
        "pair-coupled block has no Bogoliubov transformation: (eps - mu + Omega)^2 <= g^2 "
        "(squeezing divergence)");
  }
  const double root = std::sqrt(disc);
  double e_plus = 0.0;
  double e_minus = 0.0;
  // E+ E- = margin / 4; take the root that does not cancel and divide.
  if (a >= b) {
    e_plus = 0.5 * ((a - b) + root);
    e_minus = block.margin / (4.0 * e_plus);
  } else {
    e_minus = 0.5 * ((b - a) + root);
    e_plus = block.margin / (4.0 * e_minus);
  }
  const double rapidity = g == 0.0 ? 0.0 : 0.5 * std::atanh(-g / (a + b));
  return {e_plus, e_minus, rapidity, Variant::PairCoupling};
}

SpectrumPair model2_spectrum(double eps_q, double mu, double omega, double g) {
  return model2_spectrum(CoupledBlock::at_mu(eps_q, mu, omega, g));
}

SpectrumPair block_spectrum(Variant variant, const CoupledBlock& block) {
  switch (variant) {
    case Variant::RotatingCoupling: return model1_spectrum(block);
    case Variant::PairCoupling: return model2_spectrum(block);
    case Variant::PerfectBoseGas: break;
  }
  throw DomainError("the perfect Bose gas has no coupled block");
}

OraclePair numerical_spectrum_oracle(Variant variant, double matter, double photon, double g) {
  if (variant == Variant::RotatingCoupling) {
    Eigen::Matrix2d h;
    h << matter, 0.5 * g, 0.5 * g, photon;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(h, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();  // ascending
    return {ev(1), ev(0)};
  }
  if (variant == Variant::PairCoupling) {
    const double sum = matter + photon;
    if (!(sum * sum > g * g)) {
      throw InstabilityError("pair-coupled dynamical matrix has complex frequencies");
    }
    Eigen::Matrix2d dyn;
    dyn << matter, 0.5 * g, -0.5 * g, -photon;
    Eigen::EigenSolver<Eigen::Matrix2d> solver(dyn, false);
    const Eigen::Vector2cd ev = solver.eigenvalues();
    if (ev(0).imag() != 0.0 || ev(1).imag() != 0.0) {
      throw InstabilityError("pair-coupled dynamical matrix has complex frequencies");
    }
    const double hi = std::max(ev(0).real(), ev(1).real());
    const double lo = std::min(ev(0).real(), ev(1).real());
    // Spectrum is {E+, -E-}: hi - lo = E+ + E- > 0 and hi + lo = E+ - E- = A - B.
    return {hi, -lo};
  }
  throw DomainError("the perfect Bose gas has no coupled block");
}

StabilityVerdict stability_check(const ModelParams& params, double mu) {
  const double mu_c = critical_chemical_potential(params);
  if (!params.coupled()) return {mu <= mu_c, -mu};
  const CoupledBlock block = CoupledBlock::at_mu(params.eps_q(), mu, params.omega(), params.g());
  if (params.variant() == Variant::PairCoupling) {
    const double sum = block.matter + block.photon;
    if (!(sum * sum > block.g * block.g)) return {false, std::nullopt};
  }
  const SpectrumPair sp = block_spectrum(params.variant(), block);
  return {mu <= mu_c, std::min(sp.e_plus, sp.e_minus)};
}

}  // namespace becrad

#include "becrad/gibbs.hpp"

#include <cmath>

#include "becrad/errors.hpp"

namespace becrad {

namespace {

double bose_factor(double beta, double energy) { return 1.0 / std::expm1(beta * energy); }

OccupationSet rotating_block(const CoupledBlock& block, double beta) {
  const double a = block.matter;
  const double b = block.photon;
  const double g = block.g;
  if (g == 0.0) return {bose_factor(beta, a), bose_factor(beta, b), 0.0, std::nullopt};

  const SpectrumPair sp = model1_spectrum(block);
  const double n_hi = bose_factor(beta, sp.e_plus);
  const double n_lo = bose_factor(beta, sp.e_minus);
  const double split = sp.e_plus - sp.e_minus;  // sqrt((A - B)^2 + g^2)
  // Weight of the lower normal mode on a_Q is (1 + (B - A)/split) / 2; the
  // complementary weight is written without the difference when it is small.
  const double detuning = b - a;
  double w_lo = 0.0;
  double w_hi = 0.0;
  if (detuning >= 0.0) {
    w_lo = 0.5 * (1.0 + detuning / split);
    w_hi = 0.5 * g * g / (split * (split + detuning));
  } else {
    w_hi = 0.5 * (1.0 - detuning / split);
    w_lo = 0.5 * g * g / (split * (split - detuning));
  }
  const double matter = w_lo * n_lo + w_hi * n_hi;
  const double photon = w_hi * n_lo + w_lo * n_hi;
  const double correlation = -0.5 * g * (n_lo - n_hi) / split;
  return {matter, photon, correlation, std::nullopt};
}

OccupationSet pair_block(const CoupledBlock& block, double beta) {
  const double a = block.matter;
  const double b = block.photon;
  const double g = block.g;
  if (g == 0.0) return {bose_factor(beta, a), bose_factor(beta, b), 0.0, std::nullopt};

  const SpectrumPair sp = model2_spectrum(block);
  const double n_plus = bose_factor(beta, sp.e_plus);
  const double n_minus = bose_factor(beta, sp.e_minus);
  const double root = sp.e_plus + sp.e_minus;  // sqrt((A + B)^2 - g^2)
  // sinh^2(phi) = ((A + B)/root - 1)/2, written without the difference.
  const double sinh2 = 0.5 * g * g / (root * (a + b + root));
  const double cosh2 = 1.0 + sinh2;
  const double matter = cosh2 * n_plus + sinh2 * (n_minus + 1.0);
  const double photon = cosh2 * n_minus + sinh2 * (n_plus + 1.0);
  const double correlation = -0.5 * g * (n_plus + n_minus + 1.0) / root;
  return {matter, photon, correlation, std::nullopt};
}

void require_below_critical(const ModelParams& params, double mu) {
  if (std::isnan(mu) || !(mu < critical_chemical_potential(params))) {
    throw InstabilityError("chemical potential must lie strictly below mu_c");
  }
}

}  // namespace

OccupationSet block_occupations(Variant variant, const CoupledBlock& block, double beta) {
  if (!(block.margin > 0.0) || !(block.matter > 0.0)) {
    throw InstabilityError("coupled block is not thermodynamically stable");
  }
  switch (variant) {
    case Variant::RotatingCoupling: return rotating_block(block, beta);
    case Variant::PairCoupling: return pair_block(block, beta);
    case Variant::PerfectBoseGas: break;
  }
  throw DomainError("the perfect Bose gas has no coupled block");
}

OccupationSet model1_occupations(const ModelParams& params, double mu) {
  if (params.variant() != Variant::RotatingCoupling) {
    throw DomainError("model1_occupations requires the rotating coupling");
  }
  require_below_critical(params, mu);
  return block_occupations(Variant::RotatingCoupling,
                           CoupledBlock::at_mu(params.eps_q(), mu, params.omega(), params.g()),
                           params.beta());
}

OccupationSet model2_occupations(const ModelParams& params, double mu) {
  if (params.variant() != Variant::PairCoupling) {
    throw DomainError("model2_occupations requires the pair coupling");
  }
  require_below_critical(params, mu);
  return block_occupations(Variant::PairCoupling,
                           CoupledBlock::at_mu(params.eps_q(), mu, params.omega(), params.g()),
                           params.beta());
}

OccupationSet model1_occupations(const ModelParams& params, double mu, const FreeModes& free) {
  OccupationSet out = model1_occupations(params, mu);
  out.free_density = free.density(mu);
  return out;
}

OccupationSet model2_occupations(const ModelParams& params, double mu, const FreeModes& free) {
  OccupationSet out = model2_occupations(params, mu);
  out.free_density = free.density(mu);
  return out;
}

OccupationSet occupations(const ModelParams& params, double mu) {
  switch (params.variant()) {
    case Variant::RotatingCoupling: return model1_occupations(params, mu);
    case Variant::PairCoupling: return model2_occupations(params, mu);
    case Variant::PerfectBoseGas: break;
  }
  require_below_critical(params, mu);
  return {bose_factor(params.beta(), -mu), 0.0, 0.0, std::nullopt};
}

OccupationSet occupations(const ModelParams& params, double mu, const FreeModes& free) {
  OccupationSet out = occupations(params, mu);
  out.free_density = free.density(mu);
  return out;
}

OccupationSet occupations_below_critical(const ModelParams& params, double gap) {
  if (!(gap > 0.0)) throw InstabilityError("gap below mu_c must be positive");
  if (!params.coupled()) {
    // mu_c = 0: the zero-mode energy is the gap itself.
    return {bose_factor(params.beta(), gap), 0.0, 0.0, std::nullopt};
  }
  return block_occupations(params.variant(), CoupledBlock::below_critical(params, gap),
                           params.beta());
}

CondensateReport condensate_limits(const ModelParams& params, double rho, LimitForm form) {
  const Regime regime = classify(params, rho);
  if (regime.phase == Phase::Normal) return {0.0, 0.0, 0.0, 0.0, regime};

  const double excess = rho - regime.rho_c.value();
  if (!params.coupled()) return {excess, 0.0, 0.0, 0.0, regime};

  const double g = params.g();
  const double omega = params.omega();
  double photon = g * g / (4.0 * omega * omega) * excess;
  double correlation = -g / (2.0 * omega) * excess;
  if (params.variant() == Variant::PairCoupling && form == LimitForm::PositivePair) {
    correlation = -correlation;
    if (g > 0.0 && g * g < 4.0 * omega * omega) {
      photon = omega * omega / (4.0 * g * g) * excess;
      correlation = omega / (2.0 * g) * excess;
    }
  }
  return {excess, photon, correlation, g * correlation, regime};
}

double interaction_energy_density(const ModelParams& params, double rho, LimitForm form) {
  return condensate_limits(params, rho, form).interaction_energy_density;
}

}  // namespace becrad

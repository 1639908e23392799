#include "becrad/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "becrad/errors.hpp"
#include "becrad/specfun.hpp"

namespace becrad {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::PerfectBoseGas: return "pbg";
    case Variant::RotatingCoupling: return "1";
    case Variant::PairCoupling: return "2";
  }
  return "?";
}

Variant parse_variant(std::string_view text) {
  if (text == "pbg" || text == "PBG") return Variant::PerfectBoseGas;
  if (text == "1" || text == "model1") return Variant::RotatingCoupling;
  if (text == "2" || text == "model2") return Variant::PairCoupling;
  throw ConfigError("unknown model '" + std::string(text) + "' (expected pbg, 1 or 2)");
}

std::string_view to_string(Phase p) {
  return p == Phase::Normal ? "normal" : "condensed";
}

ModelParams::ModelParams(Variant variant, int dim, double beta, double omega, double g,
                         double eps_q, double c_kin)
    : variant_(variant), dim_(dim), beta_(beta), omega_(omega), g_(g), eps_q_(eps_q),
      c_kin_(c_kin) {
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("omega must be positive");
  if (!(g >= 0.0) || !std::isfinite(g)) throw DomainError("coupling g must be non-negative");
  if (!(eps_q >= 0.0) || !std::isfinite(eps_q)) throw DomainError("eps_q must be non-negative");
  if (!(c_kin > 0.0) || !std::isfinite(c_kin)) throw DomainError("c_kin must be positive");
  if (variant == Variant::PerfectBoseGas && g != 0.0) {
    throw DomainError("the perfect Bose gas carries no coupling; g must be 0");
  }
}

ModelParams ModelParams::perfect_bose_gas(int dim, double beta, double c_kin) {
  return {Variant::PerfectBoseGas, dim, beta, 1.0, 0.0, 0.0, c_kin};
}

ModelParams ModelParams::with_beta(double beta) const {
  return {variant_, dim_, beta, omega_, g_, eps_q_, c_kin_};
}
ModelParams ModelParams::with_omega(double omega) const {
  return {variant_, dim_, beta_, omega, g_, eps_q_, c_kin_};
}
ModelParams ModelParams::with_g(double g) const {
  return {variant_, dim_, beta_, omega_, g, eps_q_, c_kin_};
}
ModelParams ModelParams::with_eps_q(double eps_q) const {
  return {variant_, dim_, beta_, omega_, g_, eps_q, c_kin_};
}

Density Density::finite(double value) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    throw DomainError("finite density must be a non-negative number");
  }
  return {value, false};
}

Density Density::infinite() { return {0.0, true}; }

double Density::value() const {
  if (infinite_) throw DomainError("density is infinite");
  return value_;
}

double Density::to_double() const {
  return infinite_ ? std::numeric_limits<double>::infinity() : value_;
}

double block_threshold(const ModelParams& params) {
  if (!params.coupled()) return 0.0;
  return params.eps_q() - params.g() * params.g() / (4.0 * params.omega());
}

double critical_chemical_potential(const ModelParams& params) {
  if (!params.coupled()) return 0.0;
  return std::min(0.0, block_threshold(params));
}

Density critical_density(const ModelParams& params) {
  return bose_density(params.beta(), critical_chemical_potential(params), params.dim(),
                      params.c_kin())
      .value;
}

Regime classify(const ModelParams& params, double rho) {
  if (!(rho > 0.0)) throw DomainError("density must be positive");
  const Density rho_c = critical_density(params);
  const bool condensed = rho_c.is_finite() && rho > rho_c.value();
  return {condensed ? Phase::Condensed : Phase::Normal, rho_c,
          critical_chemical_potential(params)};
}

double effective_coupling(double lambda, double rho0) {
  if (!(lambda >= 0.0) || !(rho0 >= 0.0)) {
    throw DomainError("effective_coupling requires lambda >= 0 and rho0 >= 0");
  }
  return lambda * std::sqrt(rho0);
}

}  // namespace becrad

#pragma once

#include <string>
#include <string_view>

namespace becrad {

/// Which Hamiltonian is being solved.
///  - PerfectBoseGas: free bosons, k = 0 mode included in the particle number.
///  - RotatingCoupling: one matter mode a_Q exchanges quanta with the photon b
///    through (g/2)(a_Q* b + a_Q b*).
///  - PairCoupling: one matter mode a_Q' is created together with a photon
///    through (g/2)(a_Q'* b* + a_Q' b).
enum class Variant { PerfectBoseGas, RotatingCoupling, PairCoupling };

std::string_view to_string(Variant v);
Variant parse_variant(std::string_view text);

/// Full physical specification of one model. Energies are dimensionless,
/// with the kinetic coefficient c_kin standing for hbar^2/2m.
class ModelParams {
 public:
  /// Throws DomainError on invalid values.
  ModelParams(Variant variant, int dim, double beta, double omega, double g,
              double eps_q, double c_kin = 1.0);

  static ModelParams perfect_bose_gas(int dim, double beta, double c_kin = 1.0);

  Variant variant() const { return variant_; }
  int dim() const { return dim_; }
  double beta() const { return beta_; }
  double omega() const { return omega_; }
  double g() const { return g_; }
  double eps_q() const { return eps_q_; }
  double c_kin() const { return c_kin_; }

  bool coupled() const { return variant_ != Variant::PerfectBoseGas; }

  ModelParams with_beta(double beta) const;
  ModelParams with_omega(double omega) const;
  ModelParams with_g(double g) const;
  ModelParams with_eps_q(double eps_q) const;

 private:
  Variant variant_;
  int dim_;
  double beta_;
  double omega_;
  double g_;
  double eps_q_;
  double c_kin_;
};

/// A non-negative density that may be +infinity. The infinite case is an
/// explicit tag rather than a float sentinel.
class Density {
 public:
  static Density finite(double value);
  static Density infinite();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Throws DomainError when infinite.
  double value() const;
  /// IEEE value, +inf for the infinite tag. Intended for output only.
  double to_double() const;

  friend bool operator==(const Density&, const Density&) = default;

 private:
  Density(double value, bool infinite) : value_(value), infinite_(infinite) {}
  double value_;
  bool infinite_;
};

/// rho <= rho_c counts as Normal.
enum class Phase { Normal, Condensed };

std::string_view to_string(Phase p);

struct Regime {
  Phase phase;
  Density rho_c;
  double mu_c;
};

/// min{0, eps_Q - g^2/(4 Omega)} for the coupled models, 0 for the free gas.
double critical_chemical_potential(const ModelParams& params);

/// eps_Q - g^2/(4 Omega): the chemical potential at which the lower
/// normal-mode energy of the coupled block reaches zero.
double block_threshold(const ModelParams& params);

/// rho_0(mu_c). Infinite exactly when mu_c = 0 and d <= 2.
Density critical_density(const ModelParams& params);

/// Classifies a total density against the critical density.
Regime classify(const ModelParams& params, double rho);

/// g = lambda * sqrt(rho_0) for a c-number condensate of density rho_0.
double effective_coupling(double lambda, double rho0);

}  // namespace becrad

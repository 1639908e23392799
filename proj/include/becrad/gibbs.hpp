#pragma once

#include <optional>

#include "becrad/lattice.hpp"
#include "becrad/model.hpp"
#include "becrad/spectrum.hpp"

namespace becrad {

/// Grand-canonical expectations of the coupled block, as mode counts
/// (not divided by V), plus the free-mode density when a volume is supplied.
///  - matter_mode: <a_Q* a_Q> (the k = 0 mode for the free gas)
///  - photon_mode: <b* b>
///  - correlation: Re <a_Q* b> (rotating coupling) or Re <a_Q'* b*> (pair coupling)
struct OccupationSet {
  double matter_mode;
  double photon_mode;
  double correlation;
  std::optional<double> free_density;
};

/// Expectations of the coupled block at inverse temperature beta.
/// Requires a stable block (margin > 0).
OccupationSet block_occupations(Variant variant, const CoupledBlock& block, double beta);

/// Rotating coupling at chemical potential mu < mu_c. Throws InstabilityError
/// otherwise.
OccupationSet model1_occupations(const ModelParams& params, double mu);
OccupationSet model1_occupations(const ModelParams& params, double mu, const FreeModes& free);

/// Pair coupling at chemical potential mu < mu_c. The matter and photon
/// counts keep their zero-temperature (squeezed vacuum) part sinh^2(phi).
OccupationSet model2_occupations(const ModelParams& params, double mu);
OccupationSet model2_occupations(const ModelParams& params, double mu, const FreeModes& free);

/// Dispatches on the variant; the free gas reports its k = 0 occupation as
/// the matter mode.
OccupationSet occupations(const ModelParams& params, double mu);
OccupationSet occupations(const ModelParams& params, double mu, const FreeModes& free);

/// Same, with the chemical potential given as its distance gap = mu_c - mu > 0
/// below the critical value. Keeps full relative precision in the lower
/// normal-mode energy when mu is very close to mu_c.
OccupationSet occupations_below_critical(const ModelParams& params, double gap);

/// How condensate_limits treats the pair coupling.
///  - Uniform: the limits implied by the finite-volume expectations. The
///    photon/matter ratio is g^2/(4 Omega^2) for every g, and the correlation
///    carries the sign of the exact thermal state (negative for g > 0).
///  - PositivePair: positive pair correlation and interaction energy, and for
///    g^2 < 4 Omega^2 the closed forms with g and Omega interchanged.
/// The rotating coupling is the same in both.
enum class LimitForm { Uniform, PositivePair };

/// Thermodynamic-limit condensate densities at total density rho.
struct CondensateReport {
  double matter_condensate;
  double photon_condensate;
  double correlation_density;
  double interaction_energy_density;
  Regime regime;
};

CondensateReport condensate_limits(const ModelParams& params, double rho,
                                   LimitForm form = LimitForm::Uniform);

/// <U>/V in the thermodynamic limit: g times the correlation density.
double interaction_energy_density(const ModelParams& params, double rho,
                                  LimitForm form = LimitForm::Uniform);

}  // namespace becrad

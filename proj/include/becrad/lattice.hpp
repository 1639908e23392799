#pragma once

#include <optional>
#include <vector>

#include "becrad/model.hpp"

namespace becrad {

/// Periodic cubic box of side L in d dimensions; wavevectors k = 2 pi n / L.
struct VolumeSpec {
  double box_length;
  int dim;
  /// Radial wavenumber cutoff. Empty selects the automatic cutoff, placed
  /// where the Boltzmann factor has dropped by e^-60 relative to the first shell.
  std::optional<double> k_cut;

  /// Throws DomainError on a non-positive length or dimension outside 1..3.
  void validate() const;
  double volume() const;
  /// Kinetic energy of the |n|^2 = 1 shell: c_kin (2 pi / L)^2.
  double energy_unit(double c_kin) const;
};

struct Shell {
  long norm2;         // |n|^2
  long multiplicity;  // #{n in Z^d : |n|^2 = norm2}
};

/// Non-empty shells with 1 <= |n|^2 <= max_norm2, ascending.
struct ModeShells {
  std::vector<Shell> shells;
  long max_norm2;

  long mode_count() const;
};

/// Shells with |n|^2 <= max_norm2 (n = 0 excluded).
ModeShells enumerate_shells(int dim, long max_norm2);
/// Shells inside an explicit k_cut. Throws DomainError without one, or when
/// the cutoff contains no nonzero mode.
ModeShells enumerate_shells(const VolumeSpec& vol);

/// Largest |n|^2 retained for this volume and temperature.
long shell_limit(const VolumeSpec& vol, const ModelParams& params);

/// Finite-volume sum over the free modes k != 0 that are not part of the
/// coupled block. For the coupled models the one grid mode nearest eps_Q
/// (ties toward smaller |k|, k = 0 included as a candidate) is the coupled
/// mode and is removed; if that mode is k = 0 nothing further is removed.
class FreeModes {
 public:
  FreeModes(const VolumeSpec& vol, const ModelParams& params);

  /// V^-1 sum_k 1/(exp(beta (eps_k - mu)) - 1). Throws DivergenceError when
  /// mu reaches the lowest retained free-mode energy.
  double density(double mu) const;

  double lowest_energy() const;
  double volume() const { return volume_; }
  const ModeShells& shells() const { return shells_; }
  /// |n|^2 of the grid mode assigned to the coupled block; empty for the free gas.
  std::optional<long> coupled_slot() const { return coupled_slot_; }

 private:
  ModeShells shells_;
  std::vector<double> energies_;
  std::vector<double> weights_;
  std::optional<long> coupled_slot_;
  double beta_;
  double volume_;
};

/// One-shot convenience wrapper over FreeModes.
double free_mode_density(const VolumeSpec& vol, double mu, const ModelParams& params);

}  // namespace becrad

#include "becrad/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "becrad/errors.hpp"

namespace becrad {

namespace {

// Boltzmann suppression, in units of beta * eps_1, beyond which shells are dropped.
constexpr double kAutoCutoffExponent = 60.0;

// r_d(m) for 0 <= m <= max_norm2 by repeated convolution with the 1-D table.
std::vector<long> representation_counts(int dim, long max_norm2) {
  std::vector<long> one_dim(static_cast<size_t>(max_norm2) + 1, 0);
  one_dim[0] = 1;
  for (long j = 1; j * j <= max_norm2; ++j) one_dim[static_cast<size_t>(j * j)] = 2;

  std::vector<long> counts = one_dim;
  for (int step = 1; step < dim; ++step) {
    std::vector<long> next(counts.size(), 0);
    for (long m = 0; m <= max_norm2; ++m) {
      long total = 0;
      for (long j = 0; j * j <= m; ++j) {
        total += (j == 0 ? 1 : 2) * counts[static_cast<size_t>(m - j * j)];
      }
      next[static_cast<size_t>(m)] = total;
    }
    counts = std::move(next);
  }
  return counts;
}

}  // namespace

void VolumeSpec::validate() const {
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    throw DomainError("box length must be positive");
  }
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (k_cut && !(*k_cut > 0.0)) throw DomainError("k_cut must be positive");
}

double VolumeSpec::volume() const { return std::pow(box_length, dim); }

double VolumeSpec::energy_unit(double c_kin) const {
  const double dk = 2.0 * std::numbers::pi / box_length;
  return c_kin * dk * dk;
}

long ModeShells::mode_count() const {
  long total = 0;
  for (const Shell& s : shells) total += s.multiplicity;
  return total;
}

ModeShells enumerate_shells(int dim, long max_norm2) {
  if (dim < 1 || dim > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (max_norm2 < 1) throw DomainError("cutoff contains no nonzero lattice mode");
  const std::vector<long> counts = representation_counts(dim, max_norm2);
  ModeShells out{{}, max_norm2};
  for (long m = 1; m <= max_norm2; ++m) {
    if (counts[static_cast<size_t>(m)] > 0) out.shells.push_back({m, counts[static_cast<size_t>(m)]});
  }
  return out;
}

namespace {

long norm_limit_from_k_cut(const VolumeSpec& vol) {
  const double n_cut = *vol.k_cut * vol.box_length / (2.0 * std::numbers::pi);
  return static_cast<long>(std::floor(n_cut * n_cut * (1.0 + 1e-12)));
}

}  // namespace

ModeShells enumerate_shells(const VolumeSpec& vol) {
  vol.validate();
  if (!vol.k_cut) throw DomainError("enumerate_shells(vol) needs an explicit k_cut");
  return enumerate_shells(vol.dim, norm_limit_from_k_cut(vol));
}

long shell_limit(const VolumeSpec& vol, const ModelParams& params) {
  vol.validate();
  if (vol.k_cut) {
    const long m = norm_limit_from_k_cut(vol);
    if (m < 1) throw DomainError("cutoff contains no nonzero lattice mode");
    return m;
  }
  const double scaled = params.beta() * vol.energy_unit(params.c_kin());
  return 1 + static_cast<long>(std::ceil(kAutoCutoffExponent / scaled));
}

FreeModes::FreeModes(const VolumeSpec& vol, const ModelParams& params)
    : beta_(params.beta()), volume_(vol.volume()) {
  if (vol.dim != params.dim()) throw DomainError("volume and model dimensions differ");
  const double unit = vol.energy_unit(params.c_kin());
  long limit = shell_limit(vol, params);

  double target = 0.0;
  if (params.coupled()) {
    target = params.eps_q() / unit;
    // Keep a few shells above the target so the nearest mode is always present.
    const double above = std::ceil(std::sqrt(target)) + 2.0;
    if (above * above < 4e9) limit = std::max(limit, static_cast<long>(above * above));
  }
  shells_ = enumerate_shells(vol.dim, limit);

  if (params.coupled()) {
    long best = 0;
    double best_distance = target;  // distance to the k = 0 mode
    for (const Shell& s : shells_.shells) {
      const double distance = std::abs(static_cast<double>(s.norm2) - target);
      if (distance < best_distance) {
        best = s.norm2;
        best_distance = distance;
      }
    }
    coupled_slot_ = best;
  }

  energies_.reserve(shells_.shells.size());
  weights_.reserve(shells_.shells.size());
  for (const Shell& s : shells_.shells) {
    long weight = s.multiplicity;
    if (coupled_slot_ && *coupled_slot_ == s.norm2) --weight;
    energies_.push_back(unit * static_cast<double>(s.norm2));
    weights_.push_back(static_cast<double>(weight));
  }
}

double FreeModes::lowest_energy() const { return energies_.front(); }

double FreeModes::density(double mu) const {
  if (!(mu < lowest_energy())) {
    throw DivergenceError("chemical potential reaches the lowest free-mode energy");
  }
  // Terms decrease along the shells; summing from the tail keeps small terms.
  double sum = 0.0;
  for (size_t i = energies_.size(); i-- > 0;) {
    sum += weights_[i] / std::expm1(beta_ * (energies_[i] - mu));
  }
  return sum / volume_;
}

double free_mode_density(const VolumeSpec& vol, double mu, const ModelParams& params) {
  return FreeModes(vol, params).density(mu);
}

}  // namespace becrad

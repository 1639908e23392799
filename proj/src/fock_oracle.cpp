#include "becrad/fock_oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "becrad/errors.hpp"

namespace becrad {

namespace {

constexpr int kFirstCutoff = 8;
constexpr int kLastCutoff = 512;
// Sectors whose lowest level lies this many units of beta*E above the global
// ground state carry a relative weight below e^-45 per state and are skipped.
constexpr double kBoltzmannWindow = 45.0;

// One conserved-quantum-number sector of the truncated Hamiltonian.
struct Sector {
  std::vector<double> diag;
  std::vector<double> offdiag;   // Hamiltonian couplings, (g/2) * ladder factor
  std::vector<double> ladder;    // ladder factor alone
  std::vector<double> n_matter;  // n_a of each basis state
  double label;                  // conserved value
};

std::vector<Sector> build_sectors(Variant variant, double a, double b, double g, int n_max) {
  std::vector<Sector> sectors;
  if (variant == Variant::RotatingCoupling) {
    // |n_a, N - n_a>, coupled by a*b: sqrt((n_a + 1)(N - n_a)).
    for (int total = 0; total <= 2 * n_max; ++total) {
      Sector s;
      s.label = total;
      const int lo = std::max(0, total - n_max);
      const int hi = std::min(total, n_max);
      for (int na = lo; na <= hi; ++na) {
        const int nb = total - na;
        s.diag.push_back(a * na + b * nb);
        s.n_matter.push_back(na);
        if (na < hi) {
          const double f = std::sqrt(static_cast<double>(na + 1) * nb);
          s.ladder.push_back(f);
          s.offdiag.push_back(0.5 * g * f);
        }
      }
      sectors.push_back(std::move(s));
    }
  } else {
    // |n_a, n_a + k>, coupled by a*b*: sqrt((n_a + 1)(n_a + k + 1)).
    for (int k = -n_max; k <= n_max; ++k) {
      Sector s;
      s.label = k;
      const int lo = std::max(0, -k);
      const int hi = std::min(n_max, n_max - k);
      for (int na = lo; na <= hi; ++na) {
        const int nb = na + k;
        s.diag.push_back(a * na + b * nb);
        s.n_matter.push_back(na);
        if (na < hi) {
          const double f = std::sqrt(static_cast<double>(na + 1) * (nb + 1));
          s.ladder.push_back(f);
          s.offdiag.push_back(0.5 * g * f);
        }
      }
      sectors.push_back(std::move(s));
    }
  }
  return sectors;
}

struct Accumulator {
  double weight = 0.0;
  double matter = 0.0;
  double photon = 0.0;
  double correlation = 0.0;
  double conserved = 0.0;
};

double lowest_eigenvalue(const Sector& s) {
  const lapack_int n = static_cast<lapack_int>(s.diag.size());
  if (n == 1) return s.diag[0];
  std::vector<double> d = s.diag;
  std::vector<double> e = s.offdiag;
  e.push_back(0.0);
  lapack_int found = 0;
  std::vector<double> w(static_cast<size_t>(n));
  std::vector<lapack_int> support(2);
  double unused_z = 0.0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'I', n, d.data(), e.data(), 0.0,
                                         0.0, 1, 1, 0.0, &found, w.data(), &unused_z, 1,
                                         support.data());
  if (info != 0 || found != 1) throw ConvergenceError("LAPACK dstevr failed on a Fock sector");
  return w[0];
}

// Energy and expectation values of one eigenstate of a sector.
struct Eigenstate {
  double energy;
  double n_matter;
  double n_photon;
  double hop;
  double label;
};

void diagonalize_sector(Variant variant, const Sector& s, std::vector<Eigenstate>& out) {
  const lapack_int n = static_cast<lapack_int>(s.diag.size());
  auto photon_count = [&](size_t i) {
    return variant == Variant::RotatingCoupling ? s.label - s.n_matter[i]
                                                : s.n_matter[i] + s.label;
  };
  if (n == 1) {
    out.push_back({s.diag[0], s.n_matter[0], photon_count(0), 0.0, s.label});
    return;
  }
  std::vector<double> d = s.diag;
  std::vector<double> e = s.offdiag;
  e.push_back(0.0);
  std::vector<double> w(static_cast<size_t>(n));
  std::vector<double> z(static_cast<size_t>(n) * static_cast<size_t>(n));
  std::vector<lapack_int> support(2 * static_cast<size_t>(n));
  lapack_int found = 0;
  lapack_logical try_relative = 1;
  const lapack_int info =
      LAPACKE_dstemr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, &found,
                     w.data(), z.data(), n, n, support.data(), &try_relative);
  if (info != 0 || found != n) throw ConvergenceError("LAPACK dstemr failed on a Fock sector");

  for (lapack_int j = 0; j < found; ++j) {
    const double* v = z.data() + static_cast<size_t>(j) * static_cast<size_t>(n);
    double na = 0.0;
    double nb = 0.0;
    double hop = 0.0;
    for (lapack_int i = 0; i < n; ++i) {
      const double p = v[i] * v[i];
      na += s.n_matter[static_cast<size_t>(i)] * p;
      nb += photon_count(static_cast<size_t>(i)) * p;
      if (i + 1 < n) hop += s.ladder[static_cast<size_t>(i)] * v[i] * v[i + 1];
    }
    out.push_back({w[static_cast<size_t>(j)], na, nb, hop, s.label});
  }
}

}  // namespace

ThermalMoments thermal_expectations(Variant variant, double matter, double photon, double g,
                                    double beta, int n_max) {
  if (variant == Variant::PerfectBoseGas) {
    throw DomainError("the Fock oracle needs a coupled variant");
  }
  if (n_max < 1 || n_max > kFockMaxCutoff) {
    throw DomainError("n_max must satisfy 1 <= n_max and (n_max + 1)^2 <= 1e6");
  }
  if (!(beta > 0.0)) throw DomainError("beta must be positive");
  if (!(matter > 0.0) || !(photon > 0.0) || !(4.0 * matter * photon > g * g)) {
    throw InstabilityError(
        "coupled block is unstable; the thermal trace diverges with the cutoff");
  }

  std::vector<Eigenstate> states;
  states.reserve(static_cast<size_t>(n_max + 1) * static_cast<size_t>(n_max + 1));
  const std::vector<Sector> sectors = build_sectors(variant, matter, photon, g, n_max);
  std::vector<double> floors;
  floors.reserve(sectors.size());
  double ground = std::numeric_limits<double>::infinity();
  for (const Sector& s : sectors) {
    floors.push_back(lowest_eigenvalue(s));
    ground = std::min(ground, floors.back());
  }
  for (size_t i = 0; i < sectors.size(); ++i) {
    if (beta * (floors[i] - ground) > kBoltzmannWindow) continue;
    diagonalize_sector(variant, sectors[i], states);
  }

  // Sum from the highest states down so the small Boltzmann weights are not
  // swamped by the ground-state contribution.
  std::sort(states.begin(), states.end(),
            [](const Eigenstate& x, const Eigenstate& y) { return x.energy > y.energy; });
  Accumulator acc;
  for (const Eigenstate& st : states) {
    const double boltzmann = std::exp(-beta * (st.energy - ground));
    acc.weight += boltzmann;
    acc.matter += boltzmann * st.n_matter;
    acc.photon += boltzmann * st.n_photon;
    acc.correlation += boltzmann * st.hop;
    acc.conserved += boltzmann * st.label;
  }
  return {acc.matter / acc.weight,
          acc.photon / acc.weight,
          acc.correlation / acc.weight,
          acc.conserved / acc.weight,
          std::log(acc.weight) - beta * ground,
          n_max};
}

ThermalMoments converged_thermal_expectations(Variant variant, double matter, double photon,
                                              double g, double beta, double tol) {
  auto changed = [tol](double prev, double next) {
    return std::abs(next - prev) > tol * std::max(1.0, std::abs(next));
  };
  ThermalMoments prev = thermal_expectations(variant, matter, photon, g, beta, kFirstCutoff);
  for (int n_max = 2 * kFirstCutoff; n_max <= kLastCutoff; n_max *= 2) {
    const ThermalMoments next = thermal_expectations(variant, matter, photon, g, beta, n_max);
    if (!changed(prev.n_matter, next.n_matter) && !changed(prev.n_photon, next.n_photon) &&
        !changed(prev.correlation, next.correlation)) {
      return next;
    }
    prev = next;
  }
  std::ostringstream msg;
  msg.precision(17);
  msg << "Fock oracle not converged at n_max = " << kLastCutoff << " (tol " << tol
      << "): <a*a> = " << prev.n_matter << ", <b*b> = " << prev.n_photon
      << ", correlation = " << prev.correlation;
  throw ConvergenceError(msg.str());
}

}  // namespace becrad

#pragma once

// Reference computations for the test suites. Nothing here calls into the
// library's series, shell or closed-form code paths.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <numbers>

namespace oracle {

using real = long double;

// Adaptive Simpson with Richardson correction.
inline real simpson_step(const std::function<real(real)>& f, real a, real b, real fa, real fm,
                         real fb, real whole, real tol, int depth) {
  const real m = 0.5L * (a + b);
  const real lm = 0.5L * (a + m);
  const real rm = 0.5L * (m + b);
  const real flm = f(lm);
  const real frm = f(rm);
  const real left = (m - a) / 6.0L * (fa + 4.0L * flm + fm);
  const real right = (b - m) / 6.0L * (fm + 4.0L * frm + fb);
  const real delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0L * tol) return left + right + delta / 15.0L;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5L * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5L * tol, depth - 1);
}

inline real integrate(const std::function<real(real)>& f, real a, real b, real tol) {
  const real fa = f(a);
  const real fb = f(b);
  const real fm = f(0.5L * (a + b));
  const real whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 60);
}

inline real sphere_area(int d) {
  switch (d) {
    case 1: return 2.0L;
    case 2: return 2.0L * std::numbers::pi_v<real>;
    default: return 4.0L * std::numbers::pi_v<real>;
  }
}

// (2 pi)^-d  int d^dk 1/(exp(beta (c k^2 - mu)) - 1), mu < 0, as a radial
// integral split into pieces of one thermal wavenumber each.
inline real bose_integral(real beta, real mu, int d, real c) {
  auto f = [&](real k) -> real {
    const real x = beta * (c * k * k - mu);
    if (x == 0.0L) return d == 3 ? 1.0L / (beta * c) : 0.0L;  // k^2 / expm1(beta c k^2) at k = 0
    return (d == 1 ? 1.0L : std::pow(k, d - 1)) / std::expm1(x);
  };
  const real k_thermal = 1.0L / std::sqrt(beta * c);
  const real k_max = std::sqrt((90.0L / beta + mu) / c) + k_thermal;
  real sum = 0.0L;
  for (real a = 0.0L; a < k_max; a += 0.25L * k_thermal) {
    sum += integrate(f, a, std::min(a + 0.25L * k_thermal, k_max), 1e-19L);
  }
  return sum * sphere_area(d) / std::pow(2.0L * std::numbers::pi_v<real>, d);
}

// Number of lattice vectors n in Z^d with |n|^2 = m, for all m <= max_norm2,
// by visiting every point of the enclosing cube.
inline std::map<long, long> lattice_histogram(int d, long max_norm2) {
  const long r = static_cast<long>(std::floor(std::sqrt(static_cast<double>(max_norm2))));
  std::map<long, long> h;
  const long y_r = d >= 2 ? r : 0;
  const long z_r = d >= 3 ? r : 0;
  for (long x = -r; x <= r; ++x) {
    for (long y = -y_r; y <= y_r; ++y) {
      for (long z = -z_r; z <= z_r; ++z) {
        const long m = x * x + y * y + z * z;
        if (m <= max_norm2) ++h[m];
      }
    }
  }
  return h;
}

// V^-1 sum over n != 0 of 1/(exp(beta (c (2 pi/L)^2 |n|^2 - mu)) - 1), with
// one mode of squared norm `removed_norm2` taken out when it is positive.
inline real lattice_density(real box, int d, real beta, real mu, real c, long removed_norm2 = 0,
                            real exponent_cut = 60.0L) {
  const real unit = c * std::pow(2.0L * std::numbers::pi_v<real>, 2) / (box * box);
  const long max_norm2 = static_cast<long>(std::ceil((exponent_cut / beta + mu) / unit)) + 1;
  const std::map<long, long> h = lattice_histogram(d, max_norm2);
  real sum = 0.0L;
  for (auto it = h.rbegin(); it != h.rend(); ++it) {
    if (it->first == 0) continue;
    long count = it->second;
    if (it->first == removed_norm2) --count;
    sum += count / std::expm1(beta * (unit * it->first - mu));
  }
  return sum / std::pow(box, d);
}

// Gibbs expectations of a two-mode quadratic block from a numerical
// eigendecomposition of its coefficient matrix.
struct BlockMoments {
  real matter;
  real photon;
  real correlation;
};

inline real bose(real x) { return 1.0L / std::expm1(x); }

// A a*a + B b*b + (g/2)(a*b + b*a): photon and matter share the eigenvectors
// of the hermitian coefficient matrix.
inline BlockMoments rotating_block(real a, real b, real g, real beta) {
  Eigen::Matrix<real, 2, 2> h;
  h << a, g / 2, g / 2, b;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<real, 2, 2>> es(h);
  const auto& u = es.eigenvectors();
  BlockMoments m{0, 0, 0};
  for (int j = 0; j < 2; ++j) {
    const real n = bose(beta * es.eigenvalues()(j));
    m.matter += u(0, j) * u(0, j) * n;
    m.photon += u(1, j) * u(1, j) * n;
    m.correlation += u(0, j) * u(1, j) * n;
  }
  return m;
}

}  // namespace oracle

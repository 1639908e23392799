#include "becrad/specfun.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <numbers>

#include "becrad/errors.hpp"

namespace becrad {

namespace {

constexpr double kRelativeTarget = 1e-16;

// Neumaier-compensated accumulator.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

bool is_integer(double s) { return std::floor(s) == s; }

// Terms needed before the geometric tail bound t_N / (1 - z) drops below the
// relative target, assuming the sum is of order one term.
double estimated_terms(double w) {
  const double one_minus_z = -std::expm1(w);
  return (-std::log(kRelativeTarget) - std::log(one_minus_z)) / (-w);
}

PolylogSum direct_series(double s, double w) {
  const double one_minus_z = -std::expm1(w);
  CompensatedSum sum;
  for (long n = 1; n <= kPolylogTermCap; ++n) {
    const double nd = static_cast<double>(n);
    const double term = std::exp(nd * w - s * std::log(nd));
    sum.add(term);
    // Ratio of consecutive terms is at most z, so the remaining tail is
    // bounded by the next term over (1 - z).
    const double next = std::exp((nd + 1.0) * w - s * std::log(nd + 1.0));
    const double tail = next / one_minus_z;
    if (tail < kRelativeTarget * sum.value()) {
      return {sum.value(), n, tail};
    }
  }
  throw ConvergenceError("polylog series did not converge within the term cap");
}

// Li_s(e^w) = Gamma(1-s) (-w)^(s-1) + sum_k zeta(s-k) w^k / k!   (s not integer)
// Li_n(e^w) = w^(n-1)/(n-1)! (H_{n-1} - ln(-w)) + sum_{k != n-1} zeta(n-k) w^k/k!
// Both converge for |w| < 2 pi; only used here for |w| far below that.
PolylogSum expansion_about_one(double s, double w) {
  CompensatedSum sum;
  const bool integer_order = is_integer(s);
  const long n_order = static_cast<long>(s);
  if (!integer_order) {
    sum.add(std::tgamma(1.0 - s) * std::pow(-w, s - 1.0));
  }
  double wk_over_kfact = 1.0;
  double last = 0.0;
  for (long k = 0; k < 64; ++k) {
    if (k > 0) wk_over_kfact *= w / static_cast<double>(k);
    double term = 0.0;
    if (integer_order && k == n_order - 1) {
      double harmonic = 0.0;
      for (long j = 1; j <= n_order - 1; ++j) harmonic += 1.0 / static_cast<double>(j);
      term = wk_over_kfact * (harmonic - std::log(-w));
    } else {
      term = std::riemann_zeta(s - static_cast<double>(k)) * wk_over_kfact;
    }
    sum.add(term);
    last = std::abs(term);
    if (k > n_order && last < 1e-18 * std::abs(sum.value())) break;
  }
  return {sum.value(), 0, last};
}

}  // namespace

PolylogSum polylog_exp(double s, double w) {
  if (!(s > 0.0)) throw DomainError("polylog order must be positive");
  if (std::isnan(w) || w > 0.0) throw DomainError("polylog requires z <= 1");
  if (w == -std::numeric_limits<double>::infinity()) return {0.0, 0, 0.0};
  if (w == 0.0) {
    if (s <= 1.0) throw DivergenceError("polylog diverges at z = 1 for order <= 1");
    return {std::riemann_zeta(s), 0, 0.0};
  }
  if (estimated_terms(w) < 0.9 * static_cast<double>(kPolylogTermCap)) {
    return direct_series(s, w);
  }
  return expansion_about_one(s, w);
}

double polylog(double s, double z) {
  if (std::isnan(z) || z < 0.0 || z > 1.0) throw DomainError("polylog requires 0 <= z <= 1");
  if (z == 0.0) {
    if (!(s > 0.0)) throw DomainError("polylog order must be positive");
    return 0.0;
  }
  return polylog_exp(s, std::log(z)).value;
}

BoseDensityResult bose_density(double beta, double mu, int dim, double c_kin) {
  if (!(beta > 0.0) || !(c_kin > 0.0) || dim < 1) {
    throw DomainError("bose_density requires beta > 0, c_kin > 0, d >= 1");
  }
  if (std::isnan(mu) || mu > 0.0) throw DomainError("bose_density requires mu <= 0");
  const double order = 0.5 * dim;
  if (mu == 0.0 && order <= 1.0) return {Density::infinite(), 0, 0.0};
  const PolylogSum li = polylog_exp(order, beta * mu);
  const double prefactor =
      std::pow(4.0 * std::numbers::pi * beta * c_kin, -order);
  return {Density::finite(prefactor * li.value), li.terms_used,
          prefactor * li.truncation_bound};
}

double bose_density_quadrature(double beta, double mu, int dim, double c_kin) {
  if (!(beta > 0.0) || !(c_kin > 0.0) || dim < 1) {
    throw DomainError("bose_density_quadrature requires beta > 0, c_kin > 0, d >= 1");
  }
  if (std::isnan(mu) || mu > 0.0) throw DomainError("bose_density_quadrature requires mu <= 0");
  if (mu == 0.0 && dim <= 2) throw DivergenceError("Bose integral diverges at mu = 0 for d <= 2");

  using std::numbers::pi;
  const double sphere = 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim);
  const double prefactor = sphere / std::pow(2.0 * pi, dim);

  auto integrand = [&](double k) {
    const double x = beta * (c_kin * k * k - mu);
    if (x == 0.0) {
      // k -> 0 at mu = 0; k^(d-1)/(beta c k^2) has a finite limit only for d = 3.
      return dim == 3 ? 1.0 / (beta * c_kin) : 0.0;
    }
    return std::pow(k, dim - 1) / std::expm1(x);
  };

  // The thermal wavenumber separates the region where the Bose factor is
  // singular-looking (mu = 0) from the Gaussian tail.
  const double thermal_k = 1.0 / std::sqrt(beta * c_kin);
  const double k_max = std::sqrt(80.0 / (beta * c_kin));
  const double tol = 1e-14;
  constexpr unsigned max_depth = 20;
  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  double err_inner = 0.0;
  double err_outer = 0.0;
  const double inner = Quad::integrate(integrand, 0.0, thermal_k, max_depth, tol, &err_inner);
  const double outer = Quad::integrate(integrand, thermal_k, k_max, max_depth, tol, &err_outer);
  return prefactor * (inner + outer);
}

}  // namespace becrad

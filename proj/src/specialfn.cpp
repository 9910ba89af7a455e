#include "sphex/specialfn.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

namespace sphex::specialfn {

double clamp_unit(double t) {
  if (std::isnan(t) || std::abs(t) > 1.0 + kClampBand) {
    throw std::domain_error("argument " + std::to_string(t) + " outside [-1, 1]");
  }
  if (t > 1.0) return 1.0;
  if (t < -1.0) return -1.0;
  return t;
}

namespace {

void check_degree(int n) {
  if (n < 0) throw std::domain_error("polynomial degree must be nonnegative");
}

void check_lambda(double lambda) {
  if (!(lambda >= 0.0)) throw std::domain_error("Gegenbauer index must be nonnegative");
}

}  // namespace

double chebyshev_eval(int n, double t) {
  check_degree(n);
  t = clamp_unit(t);
  return std::cos(static_cast<double>(n) * std::acos(t));
}

double gegenbauer_eval(int n, double lambda, double t) {
  check_degree(n);
  check_lambda(lambda);
  if (lambda == 0.0) return chebyshev_eval(n, t);
  t = clamp_unit(t);
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * lambda * t;
  for (int k = 2; k <= n; ++k) {
    const double next =
        (2.0 * t * (k + lambda - 1.0) * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<double> gegenbauer_all(int max_degree, double lambda, double t) {
  check_degree(max_degree);
  check_lambda(lambda);
  t = clamp_unit(t);
  std::vector<double> p(static_cast<std::size_t>(max_degree) + 1);
  p[0] = 1.0;
  if (max_degree == 0) return p;
  if (lambda == 0.0) {
    // T_n through the same recurrence shape: T_n = 2 t T_{n-1} - T_{n-2}.
    p[1] = t;
    for (int k = 2; k <= max_degree; ++k) p[k] = 2.0 * t * p[k - 1] - p[k - 2];
    return p;
  }
  p[1] = 2.0 * lambda * t;
  for (int k = 2; k <= max_degree; ++k) {
    p[k] = (2.0 * t * (k + lambda - 1.0) * p[k - 1] - (k + 2.0 * lambda - 2.0) * p[k - 2]) / k;
  }
  return p;
}

double binomial(double x, int n) {
  check_degree(n);
  if (n == 0) return 1.0;
  // Direct product is exact to a few ulps for moderate n; the log-gamma route
  // takes over for large n where the product would overflow.
  if (n <= 128) {
    double value = 1.0;
    for (int k = 1; k <= n; ++k) value *= (x - n + k) / k;
    if (std::isfinite(value)) return value;
  }
  if (x - n + 1.0 <= 0.0) {
    throw std::domain_error("log-gamma binomial needs x - n + 1 > 0");
  }
  return std::exp(std::lgamma(x + 1.0) - std::lgamma(n + 1.0) - std::lgamma(x - n + 1.0));
}

double gegenbauer_at_one(int n, double lambda) {
  check_degree(n);
  check_lambda(lambda);
  if (lambda == 0.0) return 1.0;
  return binomial(n + 2.0 * lambda - 1.0, n);
}

double gegenbauer_derivative(int n, double lambda, double t) {
  check_degree(n);
  check_lambda(lambda);
  if (n == 0) return 0.0;
  if (lambda == 0.0) return n * gegenbauer_eval(n - 1, 1.0, t);
  return 2.0 * lambda * gegenbauer_eval(n - 1, lambda + 1.0, t);
}

double hermite(int j, double u) {
  check_degree(j);
  if (j == 0) return 1.0;
  double prev = 1.0;
  double cur = u;
  for (int k = 1; k < j; ++k) {
    const double next = u * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gauss_tail_psi(double u) {
  if (!(u > 0.0)) throw std::domain_error("Psi(u) requires u > 0");
  return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * kPi) * u);
}

double normal_upper_tail(double u) { return 0.5 * std::erfc(u / std::sqrt(2.0)); }

double ec_density(int j, double u) {
  check_degree(j);
  if (j == 0) return normal_upper_tail(u);
  return std::pow(2.0 * kPi, -0.5 * (j + 1)) * hermite(j - 1, u) * std::exp(-0.5 * u * u);
}

double sphere_area(int j) {
  check_degree(j);
  // omega_j = 2 pi / (j - 1) * omega_{j-2}, the Gamma-function formula unrolled.
  double area = (j % 2 == 0) ? 2.0 : 2.0 * kPi;
  for (int k = (j % 2 == 0) ? 2 : 3; k <= j; k += 2) area *= 2.0 * kPi / (k - 1);
  return area;
}

double chi_tail(int k, double u) {
  if (k < 1) throw std::domain_error("chi_tail requires k >= 1");
  if (!(u >= 0.0)) throw std::domain_error("chi_tail requires u >= 0");
  if (u == 0.0) return 1.0;
  return boost::math::gamma_q(0.5 * k, 0.5 * u * u);
}

}  // namespace sphex::specialfn

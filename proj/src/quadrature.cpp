#include "sphex/quadrature.hpp"

#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "sphex/errors.hpp"

namespace sphex::quadrature {

double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels) {
  if (a == b) return 0.0;
  if (panels < 1) panels = 1;
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double hi = (p + 1 == panels) ? b : lo + h;
    total += boost::math::quadrature::gauss<double, 10>::integrate(f, lo, hi);
  }
  return total;
}

double adaptive(const std::function<double(double)>& f, double a, double b, double rel_tol) {
  if (a == b) return 0.0;
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 30, rel_tol, &error);
  if (!std::isfinite(value) || error > 100.0 * rel_tol * std::max(std::abs(value), 1e-300)) {
    throw NumericalError("adaptive quadrature did not converge (error estimate " +
                         std::to_string(error) + ")");
  }
  return value;
}

}  // namespace sphex::quadrature

#pragma once

#include <functional>

namespace sphex::quadrature {

/// Composite Gauss-Legendre rule: `panels` equal panels, 10 nodes each.
double composite_gauss_legendre(const std::function<double(double)>& f, double a, double b,
                                int panels = 64);

/// Adaptive Gauss-Kronrod (15-point) to the given relative tolerance.
/// Throws NumericalError if the error estimate does not reach tolerance.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-12);

}  // namespace sphex::quadrature

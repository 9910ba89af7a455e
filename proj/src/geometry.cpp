#include "sphex/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sphex/errors.hpp"
#include "sphex/quadrature.hpp"
#include "sphex/specialfn.hpp"

namespace sphex {

namespace {

using specialfn::kPi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double upper_limit(int axis, int N) { return axis + 1 < N ? kPi : 2.0 * kPi; }

double integrate_sin_power(int power, double a, double b, int panels) {
  if (power == 0) return b - a;
  return quadrature::composite_gauss_legendre(
      [power](double t) { return std::pow(std::sin(t), power); }, a, b, panels);
}

}  // namespace

void check_point(const SphericalPoint& point) {
  const int N = point.dimension();
  if (N < 1) throw InputError("spherical point needs at least one coordinate");
  for (int i = 0; i < N; ++i) {
    const double th = point.theta[i];
    const bool last = i + 1 == N;
    if (!std::isfinite(th) || th < 0.0 || (last ? th >= 2.0 * kPi : th > kPi)) {
      throw InputError("spherical coordinate " + std::to_string(i + 1) + " out of range");
    }
  }
}

std::vector<double> embed(const SphericalPoint& point) {
  check_point(point);
  const int N = point.dimension();
  std::vector<double> x(static_cast<std::size_t>(N) + 1);
  double sin_product = 1.0;
  for (int i = 0; i < N; ++i) {
    x[i] = sin_product * std::cos(point.theta[i]);
    sin_product *= std::sin(point.theta[i]);
  }
  x[N] = sin_product;
  return x;
}

double spherical_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InputError("points live in different dimensions");
  const double t = std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
  return std::acos(std::clamp(t, -1.0, 1.0));
}

DistanceExpansion distance_expansion_check(const SphericalPoint& theta, const SphericalPoint& phi) {
  if (theta.dimension() != phi.dimension()) throw InputError("coordinate dimensions differ");
  const int N = theta.dimension();
  const auto x = embed(theta);
  const auto y = embed(phi);
  DistanceExpansion out;
  const double d = spherical_distance(x, y);
  out.lhs = d * d;
  double weight = 1.0;
  for (int i = 0; i < N; ++i) {
    double delta = phi.theta[i] - theta.theta[i];
    if (i + 1 == N) {
      delta = std::remainder(delta, 2.0 * kPi);
      if (delta <= -kPi) delta += 2.0 * kPi;
    }
    out.rhs += weight * delta * delta;
    const double s = std::sin(theta.theta[i]);
    weight *= s * s;
  }
  return out;
}

double AnisotropyMatrix::determinant() const {
  return std::accumulate(diagonal.begin(), diagonal.end(), 1.0, std::multiplies<>());
}

AnisotropyMatrix anisotropy_matrix(const SphericalPoint& theta, double c, double alpha) {
  check_point(theta);
  if (!(c > 0.0) || !(alpha > 0.0 && alpha <= 2.0)) {
    throw InputError("anisotropy matrix needs c > 0 and alpha in (0, 2]");
  }
  const int N = theta.dimension();
  const double scale = std::pow(c, 1.0 / alpha);
  AnisotropyMatrix m;
  m.diagonal.resize(static_cast<std::size_t>(N));
  double sin_product = 1.0;
  for (int i = 0; i < N; ++i) {
    m.diagonal[i] = scale * sin_product;
    sin_product *= std::sin(theta.theta[i]);
  }
  return m;
}

int domain_dimension(const SphericalDomain& domain) {
  return std::visit([](const auto& d) { return d.dimension; }, domain);
}

std::string domain_name(const SphericalDomain& domain) {
  return std::visit(overloaded{
                        [](const FullSphere&) { return std::string("sphere"); },
                        [](const CoordinateBox&) { return std::string("box"); },
                        [](const Cap&) { return std::string("cap"); },
                        [](const Semisphere&) { return std::string("semisphere"); },
                        [](const CustomDomain&) { return std::string("custom"); },
                    },
                    domain);
}

void check_domain(const SphericalDomain& domain) {
  if (domain_dimension(domain) < 1) throw InputError("domain dimension must be >= 1");
  std::visit(
      overloaded{
          [](const FullSphere&) {},
          [](const CoordinateBox& box) {
            const auto N = static_cast<std::size_t>(box.dimension);
            if (box.lower.size() != N || box.upper.size() != N) {
              throw InputError("box needs one [lower, upper] pair per coordinate");
            }
            for (std::size_t i = 0; i < N; ++i) {
              const double hi_limit = upper_limit(static_cast<int>(i), box.dimension);
              if (!(box.lower[i] >= 0.0 && box.lower[i] <= box.upper[i] &&
                    box.upper[i] <= hi_limit + 1e-12)) {
                throw InputError("box bounds for coordinate " + std::to_string(i + 1) +
                                 " outside the coordinate range");
              }
            }
          },
          [](const Cap& cap) {
            if (cap.center.size() != static_cast<std::size_t>(cap.dimension) + 1) {
              throw InputError("cap center must be a unit vector in R^{N+1}");
            }
            const double norm = std::sqrt(
                std::inner_product(cap.center.begin(), cap.center.end(), cap.center.begin(), 0.0));
            if (std::abs(norm - 1.0) > 1e-9) throw InputError("cap center is not a unit vector");
            if (!(cap.radius > 0.0 && cap.radius < kPi)) throw InputError("cap radius must lie in (0, pi)");
          },
          [](const Semisphere&) {},
          [](const CustomDomain& custom) {
            if (!(custom.area >= 0.0)) throw InputError("custom domain area must be >= 0");
            if (custom.lk && custom.lk->size() != static_cast<std::size_t>(custom.dimension) + 1) {
              throw InputError("custom L-K vector must have k + 1 entries");
            }
          },
      },
      domain);
}

double box_area_element_integral(const CoordinateBox& box, int panels) {
  check_domain(box);
  const int N = box.dimension;
  double total = 1.0;
  for (int i = 0; i < N; ++i) total *= integrate_sin_power(N - 1 - i, box.lower[i], box.upper[i], panels);
  return total;
}

double domain_area(const SphericalDomain& domain) {
  check_domain(domain);
  return std::visit(
      overloaded{
          [](const FullSphere& s) { return specialfn::sphere_area(s.dimension); },
          [](const CoordinateBox& box) { return box_area_element_integral(box); },
          [](const Cap& cap) {
            const int N = cap.dimension;
            if (N == 1) return 2.0 * cap.radius;
            if (N == 2) return 2.0 * kPi * (1.0 - std::cos(cap.radius));
            return specialfn::sphere_area(N - 1) * integrate_sin_power(N - 1, 0.0, cap.radius, 64);
          },
          [](const Semisphere& s) { return 0.5 * specialfn::sphere_area(s.dimension); },
          [](const CustomDomain& custom) { return custom.area; },
      },
      domain);
}

LKCurvatures lk_sphere(int N) {
  if (N < 1) throw InputError("sphere dimension N must be >= 1");
  LKCurvatures lk;
  lk.values.assign(static_cast<std::size_t>(N) + 1, 0.0);
  const double omega_n = specialfn::sphere_area(N);
  for (int j = 0; j <= N; ++j) {
    if ((N - j) % 2 != 0) continue;
    lk.values[j] = 2.0 * specialfn::binomial(N, j) * omega_n / specialfn::sphere_area(N - j);
  }
  return lk;
}

LKCurvatures lk_domain(const SphericalDomain& domain) {
  check_domain(domain);
  return std::visit(
      overloaded{
          [](const FullSphere& s) { return lk_sphere(s.dimension); },
          [](const Semisphere& s) -> LKCurvatures {
            if (s.dimension == 1) return {{1.0, kPi}};
            if (s.dimension == 2) return {{1.0, kPi, 2.0 * kPi}};
            throw MethodMismatch("L-K curvatures of semispheres are preset only for k = 1, 2; "
                                 "supply them with a custom domain");
          },
          [](const CustomDomain& custom) -> LKCurvatures {
            if (!custom.lk) throw MethodMismatch("custom domain carries no L-K curvatures");
            return {*custom.lk};
          },
          [](const auto& other) -> LKCurvatures {
            throw MethodMismatch("L-K curvatures for " + domain_name(SphericalDomain{other}) +
                                 " domains are not built in; supply them with a custom domain");
          },
      },
      domain);
}

}  // namespace sphex

#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

/// Spherical coordinates, parameter sets T on S^N, and their areas and
/// Lipschitz-Killing curvatures.
///
/// Coordinates follow x_1 = cos th_1, x_2 = sin th_1 cos th_2, ...,
/// x_{N+1} = sin th_1 ... sin th_N, with th_i in [0, pi] for i < N and
/// th_N in [0, 2 pi).
namespace sphex {

struct SphericalPoint {
  std::vector<double> theta;

  int dimension() const { return static_cast<int>(theta.size()); }
};

/// Throws InputError if a coordinate is out of range.
void check_point(const SphericalPoint& point);

/// Unit vector in R^{N+1}.
std::vector<double> embed(const SphericalPoint& point);

/// arccos of the clamped inner product.
double spherical_distance(std::span<const double> x, std::span<const double> y);

struct DistanceExpansion {
  double lhs = 0.0;  // d^2(x, y)
  double rhs = 0.0;  // sum_j (prod_{i<j} sin^2 th_i) (ph_j - th_j)^2
};

/// Both sides of the local expansion of d^2 in spherical coordinates.
/// ph_N - th_N is reduced into (-pi, pi] before forming the quadratic form.
DistanceExpansion distance_expansion_check(const SphericalPoint& theta, const SphericalPoint& phi);

/// M_th = c^{1/alpha} diag(1, sin th_1, ..., prod_{i<N} sin th_i).
struct AnisotropyMatrix {
  std::vector<double> diagonal;

  double determinant() const;
};

AnisotropyMatrix anisotropy_matrix(const SphericalPoint& theta, double c, double alpha);

struct FullSphere {
  int dimension = 2;
};

/// Product of coordinate intervals [lower_i, upper_i].
struct CoordinateBox {
  int dimension = 2;
  std::vector<double> lower;
  std::vector<double> upper;
};

/// Geodesic ball {x : d(x, center) <= radius}.
struct Cap {
  int dimension = 2;
  std::vector<double> center;  // unit vector in R^{N+1}
  double radius = 0.0;
};

/// Closed hemisphere of S^k.
struct Semisphere {
  int dimension = 2;
};

/// Caller-supplied area and (optionally) L-K curvatures L_0..L_k.
struct CustomDomain {
  int dimension = 2;
  double area = 0.0;
  std::optional<std::vector<double>> lk;
};

using SphericalDomain = std::variant<FullSphere, CoordinateBox, Cap, Semisphere, CustomDomain>;

int domain_dimension(const SphericalDomain& domain);
std::string domain_name(const SphericalDomain& domain);

/// Throws InputError on malformed domains.
void check_domain(const SphericalDomain& domain);

/// Spherical area (N-dimensional volume) of T.
double domain_area(const SphericalDomain& domain);

/// Lipschitz-Killing curvatures L_0 .. L_k.
struct LKCurvatures {
  std::vector<double> values;
};

LKCurvatures lk_sphere(int N);

/// Full sphere, semispheres of dimension 1 and 2, or custom domains carrying
/// curvatures. Other domains throw MethodMismatch.
LKCurvatures lk_domain(const SphericalDomain& domain);

/// Integral over the box of prod_{i<N} sin^{N-i} th_i, by composite
/// Gauss-Legendre per axis.
double box_area_element_integral(const CoordinateBox& box, int panels = 64);

}  // namespace sphex

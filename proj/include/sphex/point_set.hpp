#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace sphex {

enum class PointScheme { kFibonacci, kLatLong, kUniform };

std::string to_string(PointScheme s);
PointScheme parse_point_scheme(const std::string& name);

/// Unit vectors in R^{N+1}, one per row.
struct PointSet {
  int dimension = 2;
  PointScheme scheme = PointScheme::kFibonacci;
  std::optional<std::uint64_t> seed;
  Eigen::MatrixXd points;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
};

/// fibonacci: N = 2 only, z_i = 1 - (2i + 1)/count, golden-angle longitudes.
/// latlong: N = 1 circle points at angle 2 pi i / count; N = 2 a
///   colatitude-by-longitude grid with cell-centred colatitudes (no poles),
///   n_lat the largest divisor of count not above sqrt(count / 2).
/// uniform: point i is a normalized Gaussian vector drawn from the stream
///   replicate_seed(seed, i), so the first m points of a larger set equal the
///   m-point set with the same seed.
PointSet make_point_set(PointScheme scheme, std::size_t count, int N, std::optional<std::uint64_t> seed = {});

/// First m points of `set`.
PointSet prefix(const PointSet& set, std::size_t m);

double min_pairwise_distance(const PointSet& set);

/// Convex-hull triangulation of points on S^2.
struct SphereTriangulation {
  PointSet vertices;
  std::vector<std::array<int, 2>> edges;
  std::vector<std::array<int, 3>> faces;
};

/// Throws NumericalError on a degenerate hull or if the result is not a
/// closed genus-0 surface in which every edge borders two faces.
SphereTriangulation triangulate(const PointSet& set);

/// Triangulation of the fibonacci set with `count` >= 12 points.
SphereTriangulation triangulate_sphere(std::size_t count);

/// The 12 vertices of a regular icosahedron.
PointSet icosahedron_points();

/// chi of the subcomplex spanned by the vertices with value >= u.
int euler_characteristic(const SphereTriangulation& tri, std::span<const double> values, double u);

}  // namespace sphex

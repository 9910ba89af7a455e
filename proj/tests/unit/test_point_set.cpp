#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "sphex/errors.hpp"
#include "sphex/point_set.hpp"
#include "sphex/random.hpp"

using namespace sphex;
using oracle::kPi;

namespace {

void check_unit_rows(const PointSet& set) {
  for (Eigen::Index i = 0; i < set.points.rows(); ++i) CHECK(set.points.row(i).norm() == doctest::Approx(1.0).epsilon(1e-14));
}

// Every edge borders exactly two faces and the edge list matches the faces.
void check_closed_surface(const SphereTriangulation& tri) {
  std::map<std::pair<int, int>, int> count;
  for (const auto& f : tri.faces) {
    for (int k = 0; k < 3; ++k) {
      const int a = f[static_cast<std::size_t>(k)], b = f[static_cast<std::size_t>((k + 1) % 3)];
      ++count[{std::min(a, b), std::max(a, b)}];
    }
  }
  CHECK(count.size() == tri.edges.size());
  for (const auto& [e, c] : count) CHECK(c == 2);
  const auto V = static_cast<long>(tri.vertices.size());
  CHECK(V - static_cast<long>(tri.edges.size()) + static_cast<long>(tri.faces.size()) == 2);
}

}  // namespace

TEST_CASE("fibonacci points are unit vectors and well separated") {
  const auto set = make_point_set(PointScheme::kFibonacci, 4096, 2);
  REQUIRE(set.size() == 4096);
  check_unit_rows(set);
  CHECK(min_pairwise_distance(set) >= 0.7 * std::sqrt(4 * kPi / 4096));
  // Equal-area bands: z is uniform.
  CHECK(set.points.col(2).mean() == doctest::Approx(0.0).scale(1.0));
  CHECK_THROWS_AS(make_point_set(PointScheme::kFibonacci, 100, 1), InputError);
}

TEST_CASE("latlong grids") {
  const auto circle = make_point_set(PointScheme::kLatLong, 360, 1);
  REQUIRE(circle.size() == 360);
  check_unit_rows(circle);
  CHECK(min_pairwise_distance(circle) == doctest::Approx(2 * kPi / 360).epsilon(1e-10));
  CHECK(circle.points(0, 0) == doctest::Approx(1.0));
  const auto grid = make_point_set(PointScheme::kLatLong, 4096, 2);
  CHECK(grid.size() == 4096);
  check_unit_rows(grid);
  // No pole is sampled.
  CHECK(grid.points.col(2).cwiseAbs().maxCoeff() < 1.0);
}

TEST_CASE("uniform sets are deterministic and nested") {
  const auto a = make_point_set(PointScheme::kUniform, 500, 2, 17);
  const auto b = make_point_set(PointScheme::kUniform, 500, 2, 17);
  const auto c = make_point_set(PointScheme::kUniform, 200, 2, 17);
  CHECK(a.points == b.points);
  CHECK(prefix(a, 200).points == c.points);
  CHECK(a.points != make_point_set(PointScheme::kUniform, 500, 2, 18).points);
  check_unit_rows(make_point_set(PointScheme::kUniform, 100, 3, 1));
  CHECK_THROWS_AS(make_point_set(PointScheme::kUniform, 10, 2), InputError);
  // Mean of uniform unit vectors is near zero.
  const auto big = make_point_set(PointScheme::kUniform, 20000, 2, 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(big.points.col(k).mean()) < 5 * std::sqrt(1.0 / 3 / 20000));
}

TEST_CASE("scheme names") {
  for (auto s : {PointScheme::kFibonacci, PointScheme::kLatLong, PointScheme::kUniform}) CHECK(parse_point_scheme(to_string(s)) == s);
  CHECK_THROWS_AS(parse_point_scheme("grid"), InputError);
}

TEST_CASE("icosahedron hull") {
  const auto tri = triangulate(icosahedron_points());
  CHECK(tri.vertices.size() == 12);
  CHECK(tri.edges.size() == 30);
  CHECK(tri.faces.size() == 20);
  check_closed_surface(tri);
}

TEST_CASE("hull of larger sets is a closed sphere") {
  for (std::size_t n : {12u, 100u, 1001u, 4096u}) {
    const auto tri = triangulate_sphere(n);
    CHECK(tri.vertices.size() == n);
    CHECK(tri.faces.size() == 2 * n - 4);
    check_closed_surface(tri);
  }
  check_closed_surface(triangulate(make_point_set(PointScheme::kUniform, 3000, 2, 4)));
  check_closed_surface(triangulate(make_point_set(PointScheme::kLatLong, 1024, 2)));
  CHECK_THROWS_AS(triangulate_sphere(3), InputError);
}

TEST_CASE("euler characteristic of excursion subcomplexes") {
  const auto tri = triangulate_sphere(500);
  std::vector<double> values(500, 0.0);
  CHECK(euler_characteristic(tri, values, -1.0) == 2);
  CHECK(euler_characteristic(tri, values, 1.0) == 0);
  values[123] = 5.0;
  CHECK(euler_characteristic(tri, values, 1.0) == 1);
  // Height function: upper caps are discs, the band |z| <= 0.5 is an annulus.
  std::vector<double> z(500), zz(500);
  for (Eigen::Index i = 0; i < 500; ++i) {
    z[static_cast<std::size_t>(i)] = tri.vertices.points(i, 2);
    zz[static_cast<std::size_t>(i)] = -std::abs(z[static_cast<std::size_t>(i)]);
  }
  CHECK(euler_characteristic(tri, z, 0.3) == 1);
  CHECK(euler_characteristic(tri, zz, -0.5) == 0);
  CHECK(euler_characteristic(tri, zz, -1.5) == 2);
  // |z| >= 0.5: two discs.
  std::vector<double> az(500);
  for (std::size_t i = 0; i < 500; ++i) az[i] = std::abs(z[i]);
  CHECK(euler_characteristic(tri, az, 0.5) == 2);
}

TEST_CASE("euler characteristic is invariant under relabeling") {
  const auto set = make_point_set(PointScheme::kUniform, 400, 2, 8);
  std::vector<std::size_t> perm(400);
  std::iota(perm.begin(), perm.end(), 0);
  random::Stream rng(2);
  for (std::size_t i = perm.size() - 1; i > 0; --i) {
    std::swap(perm[i], perm[static_cast<std::size_t>(rng.uniform() * static_cast<double>(i + 1))]);
  }
  PointSet shuffled = set;
  for (std::size_t i = 0; i < 400; ++i) shuffled.points.row(static_cast<Eigen::Index>(i)) = set.points.row(static_cast<Eigen::Index>(perm[i]));
  const auto t1 = triangulate(set);
  const auto t2 = triangulate(shuffled);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(400), w(400);
    for (auto& x : v) x = rng.normal();
    for (std::size_t i = 0; i < 400; ++i) w[i] = v[perm[i]];
    for (double u : {-1.0, 0.0, 0.7, 1.5}) CHECK(euler_characteristic(t1, v, u) == euler_characteristic(t2, w, u));
  }
}

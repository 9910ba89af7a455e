#include <algorithm>
#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <unordered_set>

#include "sphex/errors.hpp"
#include "sphex/point_set.hpp"

// Incremental (beneath-beyond) convex hull. Every point of a set on S^2 is a
// hull vertex, so the hull is the triangulation.
namespace sphex {

namespace {

using Vec = Eigen::Vector3d;

std::uint64_t edge_key(int a, int b) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
}

struct Hull {
  const Eigen::MatrixXd& p;
  std::vector<std::array<int, 3>> faces;
  std::vector<Vec> normals;
  std::vector<double> offsets;
  std::vector<char> alive;
  std::unordered_map<std::uint64_t, int> edge_face;

  Vec point(int i) const { return p.row(i).transpose(); }

  void add_face(int a, int b, int c) {
    const int id = static_cast<int>(faces.size());
    faces.push_back({a, b, c});
    Vec n = (point(b) - point(a)).cross(point(c) - point(a));
    normals.push_back(n);
    offsets.push_back(n.dot(point(a)));
    alive.push_back(1);
    edge_face[edge_key(a, b)] = id;
    edge_face[edge_key(b, c)] = id;
    edge_face[edge_key(c, a)] = id;
  }

  double side(int f, int i) const { return normals[f].dot(point(i)) - offsets[f]; }

  void insert(int q) {
    std::vector<int> visible;
    int best = -1;
    double best_side = 0.0;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!alive[f]) continue;
      const double s = side(f, q);
      const double tol = 1e-13 * normals[f].norm();
      if (s > tol) visible.push_back(f);
      if (best < 0 || s > best_side) {
        best = f;
        best_side = s;
      }
    }
    // Numerically on a face plane: attach to the most nearly visible face.
    if (visible.empty()) {
      if (best < 0) throw NumericalError("convex hull has no faces");
      visible.push_back(best);
    }
    std::unordered_set<int> vis(visible.begin(), visible.end());
    std::vector<std::array<int, 2>> horizon;
    for (int f : visible) {
      const auto& t = faces[f];
      for (int k = 0; k < 3; ++k) {
        const int a = t[k];
        const int b = t[(k + 1) % 3];
        auto it = edge_face.find(edge_key(b, a));
        if (it == edge_face.end()) throw NumericalError("convex hull lost an edge twin");
        if (!vis.count(it->second)) horizon.push_back({a, b});
      }
    }
    for (int f : visible) {
      alive[f] = 0;
      const auto& t = faces[f];
      for (int k = 0; k < 3; ++k) {
        auto it = edge_face.find(edge_key(t[k], t[(k + 1) % 3]));
        if (it != edge_face.end() && it->second == f) edge_face.erase(it);
      }
    }
    for (const auto& e : horizon) add_face(e[0], e[1], q);
  }
};

std::array<int, 4> initial_simplex(const Eigen::MatrixXd& p) {
  const int n = static_cast<int>(p.rows());
  auto pt = [&](int i) -> Vec { return p.row(i).transpose(); };
  int a = 0;
  int b = 1;
  double far = -1.0;
  for (int i = 1; i < n; ++i) {
    const double d = (pt(i) - pt(a)).squaredNorm();
    if (d > far) far = d, b = i;
  }
  int c = -1;
  far = -1.0;
  for (int i = 0; i < n; ++i) {
    const double d = (pt(b) - pt(a)).cross(pt(i) - pt(a)).squaredNorm();
    if (d > far) far = d, c = i;
  }
  int d = -1;
  far = -1.0;
  const Vec normal = (pt(b) - pt(a)).cross(pt(c) - pt(a));
  for (int i = 0; i < n; ++i) {
    const double v = std::abs(normal.dot(pt(i) - pt(a)));
    if (v > far) far = v, d = i;
  }
  if (!(far > 1e-12)) throw NumericalError("point set is degenerate (coplanar); cannot build a hull");
  if (normal.dot(pt(d) - pt(a)) > 0.0) std::swap(b, c);
  return {a, b, c, d};
}

}  // namespace

SphereTriangulation triangulate(const PointSet& set) {
  if (set.dimension != 2) throw InputError("triangulation is implemented for S^2 only");
  const int n = static_cast<int>(set.size());
  if (n < 4) throw InputError("a sphere triangulation needs at least 4 points");
  const auto s = initial_simplex(set.points);
  Hull hull{set.points, {}, {}, {}, {}, {}};
  // (a, b, c) has d on its negative side; orient the other faces outward.
  hull.add_face(s[0], s[1], s[2]);
  hull.add_face(s[0], s[3], s[1]);
  hull.add_face(s[1], s[3], s[2]);
  hull.add_face(s[2], s[3], s[0]);
  for (int i = 0; i < n; ++i) {
    if (i == s[0] || i == s[1] || i == s[2] || i == s[3]) continue;
    hull.insert(i);
  }

  SphereTriangulation tri;
  tri.vertices = set;
  std::unordered_map<std::uint64_t, int> edge_count;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (std::size_t f = 0; f < hull.faces.size(); ++f) {
    if (!hull.alive[f]) continue;
    const auto& t = hull.faces[f];
    tri.faces.push_back(t);
    for (int k = 0; k < 3; ++k) {
      used[static_cast<std::size_t>(t[k])] = 1;
      const int a = std::min(t[k], t[(k + 1) % 3]);
      const int b = std::max(t[k], t[(k + 1) % 3]);
      if (edge_count[edge_key(a, b)]++ == 0) tri.edges.push_back({a, b});
    }
  }
  for (const auto& [key, count] : edge_count) {
    if (count != 2) throw NumericalError("triangulation is not a closed manifold (edge with " + std::to_string(count) + " faces)");
  }
  if (std::count(used.begin(), used.end(), 0) > 0) {
    throw NumericalError("triangulation dropped a vertex (points not in convex position)");
  }
  const long chi = static_cast<long>(n) - static_cast<long>(tri.edges.size()) + static_cast<long>(tri.faces.size());
  if (chi != 2) throw NumericalError("triangulation has Euler characteristic " + std::to_string(chi));
  return tri;
}

SphereTriangulation triangulate_sphere(std::size_t count) {
  if (count < 12) throw InputError("triangulate_sphere needs at least 12 points");
  return triangulate(make_point_set(PointScheme::kFibonacci, count, 2));
}

PointSet icosahedron_points() {
  const double g = 0.5 * (1.0 + std::sqrt(5.0));
  PointSet set;
  set.dimension = 2;
  set.scheme = PointScheme::kLatLong;
  set.points.resize(12, 3);
  int row = 0;
  for (double s1 : {-1.0, 1.0}) {
    for (double s2 : {-g, g}) {
      set.points.row(row++) << 0.0, s1, s2;
      set.points.row(row++) << s1, s2, 0.0;
      set.points.row(row++) << s2, 0.0, s1;
    }
  }
  set.points.rowwise().normalize();
  return set;
}

int euler_characteristic(const SphereTriangulation& tri, std::span<const double> values, double u) {
  if (values.size() != tri.vertices.size()) throw InputError("value count does not match vertex count");
  int chi = 0;
  for (double v : values) chi += v >= u;
  for (const auto& e : tri.edges) chi -= values[e[0]] >= u && values[e[1]] >= u;
  for (const auto& f : tri.faces) chi += values[f[0]] >= u && values[f[1]] >= u && values[f[2]] >= u;
  return chi;
}

}  // namespace sphex

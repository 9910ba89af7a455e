#include "sphex/point_set.hpp"

#include <cmath>
#include <limits>

#include "sphex/errors.hpp"
#include "sphex/random.hpp"
#include "sphex/specialfn.hpp"

namespace sphex {

std::string to_string(PointScheme s) {
  switch (s) {
    case PointScheme::kFibonacci: return "fibonacci";
    case PointScheme::kLatLong: return "latlong";
    case PointScheme::kUniform: return "uniform";
  }
  return "?";
}

PointScheme parse_point_scheme(const std::string& name) {
  if (name == "fibonacci") return PointScheme::kFibonacci;
  if (name == "latlong") return PointScheme::kLatLong;
  if (name == "uniform") return PointScheme::kUniform;
  throw InputError("unknown point scheme '" + name + "' (expected fibonacci, latlong or uniform)");
}

namespace {

using specialfn::kPi;

void fibonacci(PointSet& set, std::size_t n) {
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(n);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(i);
    set.points.row(static_cast<Eigen::Index>(i)) << r * std::cos(phi), r * std::sin(phi), z;
  }
}

void latlong(PointSet& set, std::size_t n) {
  if (set.dimension == 1) {
    for (std::size_t i = 0; i < n; ++i) {
      const double a = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
      set.points.row(static_cast<Eigen::Index>(i)) << std::cos(a), std::sin(a);
    }
    return;
  }
  std::size_t n_lat = 1;
  for (std::size_t d = 1; d * d * 2 <= n; ++d) {
    if (n % d == 0) n_lat = d;
  }
  const std::size_t n_lon = n / n_lat;
  std::size_t row = 0;
  for (std::size_t i = 0; i < n_lat; ++i) {
    const double theta = kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n_lat);
    for (std::size_t j = 0; j < n_lon; ++j) {
      const double phi = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(n_lon);
      set.points.row(static_cast<Eigen::Index>(row++)) << std::sin(theta) * std::cos(phi),
          std::sin(theta) * std::sin(phi), std::cos(theta);
    }
  }
}

void uniform(PointSet& set, std::size_t n, std::uint64_t seed) {
  const auto dim = set.points.cols();
  for (std::size_t i = 0; i < n; ++i) {
    random::Stream stream(random::replicate_seed(seed, i));
    Eigen::VectorXd v(dim);
    double norm = 0.0;
    while (!(norm > 1e-8)) {
      for (Eigen::Index k = 0; k < dim; ++k) v[k] = stream.normal();
      norm = v.norm();
    }
    set.points.row(static_cast<Eigen::Index>(i)) = v.transpose() / norm;
  }
}

}  // namespace

PointSet make_point_set(PointScheme scheme, std::size_t count, int N, std::optional<std::uint64_t> seed) {
  if (count < 2) throw InputError("a point set needs at least 2 points");
  if (N < 1) throw InputError("dimension must be at least 1");
  PointSet set;
  set.dimension = N;
  set.scheme = scheme;
  set.points.resize(static_cast<Eigen::Index>(count), N + 1);
  switch (scheme) {
    case PointScheme::kFibonacci:
      if (N != 2) throw InputError("the fibonacci scheme is defined for N = 2 only");
      fibonacci(set, count);
      break;
    case PointScheme::kLatLong:
      if (N > 2) throw InputError("the latlong scheme is defined for N = 1 and N = 2 only");
      latlong(set, count);
      break;
    case PointScheme::kUniform:
      if (!seed) throw InputError("the uniform scheme requires a seed");
      set.seed = seed;
      uniform(set, count, *seed);
      break;
  }
  return set;
}

PointSet prefix(const PointSet& set, std::size_t m) {
  if (m < 2 || m > set.size()) throw InputError("prefix size out of range");
  PointSet out = set;
  out.points = set.points.topRows(static_cast<Eigen::Index>(m));
  return out;
}

double min_pairwise_distance(const PointSet& set) {
  double best_dot = -1.0;
  const Eigen::Index n = set.points.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      best_dot = std::max(best_dot, set.points.row(i).dot(set.points.row(j)));
    }
  }
  // arccos loses accuracy near 1; use the chord for small angles.
  if (best_dot > 0.99) {
    double chord = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        chord = std::min(chord, (set.points.row(i) - set.points.row(j)).norm());
      }
    }
    return 2.0 * std::asin(0.5 * chord);
  }
  return std::acos(best_dot);
}

}  // namespace sphex

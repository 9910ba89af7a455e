#include "sphex/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sphex/errors.hpp"
#include "sphex/parallel.hpp"
#include "sphex/random.hpp"

namespace sphex {

namespace {

constexpr std::size_t kBatch = 64;
constexpr double kZ95 = 1.959963984540054;

void check_points(const PointSet& points) {
  if (points.size() > kMaxSimulationPoints) {
    throw InputError("simulation is limited to " + std::to_string(kMaxSimulationPoints) +
                     " points (dense factorization); use fewer points");
  }
  if (points.size() < 1) throw InputError("empty point set");
}

// Runs body(first, block) on consecutive batches of replicates, where column
// k of block is the field for replicate first + k.
template <class Body>
void for_each_batch(const FieldSampler& sampler, std::size_t replicates, std::uint64_t seed,
                    std::vector<std::uint64_t>& seeds, Body&& body) {
  seeds.resize(replicates);
  for (std::size_t r = 0; r < replicates; ++r) seeds[r] = random::replicate_seed(seed, r);
  const std::size_t batches = (replicates + kBatch - 1) / kBatch;
  const auto n = static_cast<Eigen::Index>(sampler.points().size());
  parallel_for(batches, [&](std::size_t b) {
    const std::size_t first = b * kBatch;
    const std::size_t last = std::min(replicates, first + kBatch);
    Eigen::MatrixXd block(n, static_cast<Eigen::Index>(last - first));
    sampler.gaussian().sample_batch(std::span(seeds).subspan(first, last - first), block);
    body(first, block);
  });
}

void check_replicates(std::size_t replicates, std::size_t minimum) {
  if (replicates < minimum) throw InputError("at least " + std::to_string(minimum) + " replicates are required");
}

}  // namespace

Eigen::MatrixXd covariance_matrix(const CovarianceModel& model, const PointSet& points) {
  check_model(model, points.dimension);
  const auto n = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd x = points.points.row(i).transpose();
    for (Eigen::Index j = 0; j <= i; ++j) {
      const Eigen::VectorXd y = points.points.row(j).transpose();
      cov(i, j) = cov(j, i) = covariance_between(model, std::span(x.data(), x.size()),
                                                 std::span(y.data(), y.size()), points.dimension);
    }
  }
  return cov;
}

FieldSampler::FieldSampler(const CovarianceModel& model, const PointSet& points) : model_(model), points_(points) {
  check_model(model_, points_.dimension);
  check_points(points_);
  const int N = points_.dimension;
  const Eigen::MatrixXd& P = points_.points;
  sampler_ = std::make_unique<GaussianSampler>(points_.size(), [&](std::size_t i, std::size_t j) {
    const auto a = P.row(static_cast<Eigen::Index>(i));
    const auto b = P.row(static_cast<Eigen::Index>(j));
    double x[16];
    double y[16];
    const auto dim = static_cast<std::size_t>(P.cols());
    if (dim > 16) throw InputError("simulation supports N <= 15");
    for (std::size_t k = 0; k < dim; ++k) {
      x[k] = a[static_cast<Eigen::Index>(k)];
      y[k] = b[static_cast<Eigen::Index>(k)];
    }
    return covariance_between(model_, std::span<const double>(x, dim), std::span<const double>(y, dim), N);
  });
}

FieldSample FieldSampler::sample(std::uint64_t seed) const {
  const Eigen::VectorXd v = sampler_->sample(seed);
  return FieldSample{std::vector<double>(v.data(), v.data() + v.size()), seed, model_name(model_)};
}

FieldSample sample_field(const CovarianceModel& model, const PointSet& points, std::uint64_t seed) {
  return FieldSampler(model, points).sample(seed);
}

std::string to_string(ExcursionKind k) {
  return k == ExcursionKind::kSupProbability ? "sup-probability" : "mean-euler-characteristic";
}

std::vector<std::size_t> strided_indices(std::size_t n, std::size_t stride) {
  if (stride == 0) throw InputError("stride must be positive");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; i += stride) out.push_back(i);
  return out;
}

ReplicateData replicate_sups(const FieldSampler& sampler, std::size_t replicates, std::uint64_t seed,
                             std::vector<std::vector<std::size_t>> subsets) {
  const std::size_t n = sampler.points().size();
  if (subsets.empty()) subsets.push_back(strided_indices(n, 1));
  for (const auto& subset : subsets) {
    if (subset.empty()) throw InputError("empty point subset");
    for (std::size_t i : subset) {
      if (i >= n) throw InputError("point subset index out of range");
    }
  }
  ReplicateData data;
  data.values.assign(subsets.size(), std::vector<double>(replicates));
  for_each_batch(sampler, replicates, seed, data.seeds, [&](std::size_t first, const Eigen::MatrixXd& block) {
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      const double* col = block.col(c).data();
      for (std::size_t k = 0; k < subsets.size(); ++k) {
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i : subsets[k]) best = std::max(best, col[i]);
        data.values[k][first + static_cast<std::size_t>(c)] = best;
      }
    }
  });
  return data;
}

ExcursionEstimate excursion_from_sups(std::span<const double> sups, double u) {
  const auto n = static_cast<double>(sups.size());
  if (sups.empty()) throw InputError("no replicates");
  const auto hits = static_cast<double>(std::count_if(sups.begin(), sups.end(), [u](double s) { return s >= u; }));
  const double p = hits / n;
  const double z2 = kZ95 * kZ95;
  const double denom = 1.0 + z2 / n;
  const double centre = (p + z2 / (2.0 * n)) / denom;
  const double half = kZ95 / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
  ExcursionEstimate e;
  e.u = u;
  e.kind = ExcursionKind::kSupProbability;
  e.estimate = p;
  e.ci_lo = std::max(0.0, centre - half);
  e.ci_hi = std::min(1.0, centre + half);
  e.std_error = half / kZ95;
  e.replicates = sups.size();
  e.note = "sup over a finite point set underestimates the continuous sup";
  return e;
}

std::vector<ExcursionEstimate> empirical_excursion(const FieldSampler& sampler, std::span<const double> levels,
                                                   std::size_t replicates, std::uint64_t seed,
                                                   ReplicateData* data) {
  if (levels.empty()) throw InputError("at least one level is required");
  check_replicates(replicates, 100);
  ReplicateData sups = replicate_sups(sampler, replicates, seed);
  std::vector<ExcursionEstimate> out;
  for (double u : levels) {
    auto e = excursion_from_sups(sups.values[0], u);
    std::ostringstream note;
    note << e.note << " (" << sampler.points().size() << " " << to_string(sampler.points().scheme) << " points)";
    e.note = note.str();
    out.push_back(e);
  }
  if (data) *data = std::move(sups);
  return out;
}

ExcursionEstimate empirical_excursion(const CovarianceModel& model, const PointSet& points, double u,
                                      std::size_t replicates, std::uint64_t seed) {
  const FieldSampler sampler(model, points);
  const double levels[] = {u};
  return empirical_excursion(sampler, levels, replicates, seed).front();
}

std::vector<ExcursionEstimate> mean_euler_characteristic(const CovarianceModel& model,
                                                         const SphereTriangulation& tri,
                                                         std::span<const double> levels,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         ReplicateData* data) {
  if (tri.vertices.dimension != 2) throw InputError("mean Euler characteristic is implemented on S^2 only");
  const auto report = validate_model(model, 2);
  if (!report.smooth()) {
    throw MethodMismatch("mean Euler characteristic requires a smooth model (finite C'); " + model_name(model) +
                         " is not smooth");
  }
  const FieldSampler sampler(model, tri.vertices);
  return mean_euler_characteristic(sampler, tri, levels, replicates, seed, data);
}

std::vector<ExcursionEstimate> mean_euler_characteristic(const FieldSampler& sampler,
                                                         const SphereTriangulation& tri,
                                                         std::span<const double> levels,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         ReplicateData* data) {
  if (levels.empty()) throw InputError("at least one level is required");
  check_replicates(replicates, 2);
  if (sampler.points().size() != tri.vertices.size()) {
    throw InputError("sampler points do not match the triangulation vertices");
  }
  ReplicateData chis;
  chis.values.assign(levels.size(), std::vector<double>(replicates));
  for_each_batch(sampler, replicates, seed, chis.seeds, [&](std::size_t first, const Eigen::MatrixXd& block) {
    for (Eigen::Index c = 0; c < block.cols(); ++c) {
      const auto col = block.col(c);
      const std::span<const double> values(col.data(), static_cast<std::size_t>(col.size()));
      for (std::size_t k = 0; k < levels.size(); ++k) {
        chis.values[k][first + static_cast<std::size_t>(c)] = euler_characteristic(tri, values, levels[k]);
      }
    }
  });
  std::vector<ExcursionEstimate> out;
  const auto n = static_cast<double>(replicates);
  for (std::size_t k = 0; k < levels.size(); ++k) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (double v : chis.values[k]) {
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    ExcursionEstimate e;
    e.u = levels[k];
    e.kind = ExcursionKind::kMeanEulerCharacteristic;
    e.estimate = mean;
    e.std_error = std::sqrt(var / n);
    e.ci_lo = mean - kZ95 * e.std_error;
    e.ci_hi = mean + kZ95 * e.std_error;
    e.replicates = replicates;
    e.note = "chi of the subcomplex induced on a " + std::to_string(tri.vertices.size()) + "-vertex mesh";
    out.push_back(e);
  }
  if (data) *data = std::move(chis);
  return out;
}

}  // namespace sphex

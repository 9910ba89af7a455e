#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sphex/covariance.hpp"
#include "sphex/gaussian_sampler.hpp"
#include "sphex/point_set.hpp"

/// Monte Carlo validation: exact Gaussian fields on point sets, empirical
/// excursion probabilities and mean Euler characteristics of excursion sets.
///
/// Replicate r of a run with master seed s uses the stream
/// replicate_seed(s, r), so results do not depend on the thread count.
namespace sphex {

/// Largest point count accepted for simulation.
inline constexpr std::size_t kMaxSimulationPoints = 8192;

Eigen::MatrixXd covariance_matrix(const CovarianceModel& model, const PointSet& points);

struct FieldSample {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string model;
};

/// Factorization of one (model, point set) pair, built once and shared.
class FieldSampler {
 public:
  FieldSampler(const CovarianceModel& model, const PointSet& points);

  const CovarianceModel& model() const { return model_; }
  const PointSet& points() const { return points_; }
  const GaussianSampler& gaussian() const { return *sampler_; }

  FieldSample sample(std::uint64_t seed) const;

 private:
  CovarianceModel model_;
  PointSet points_;
  std::unique_ptr<GaussianSampler> sampler_;
};

FieldSample sample_field(const CovarianceModel& model, const PointSet& points, std::uint64_t seed);

enum class ExcursionKind { kSupProbability, kMeanEulerCharacteristic };

std::string to_string(ExcursionKind k);

struct ExcursionEstimate {
  double u = 0.0;
  ExcursionKind kind = ExcursionKind::kSupProbability;
  double estimate = 0.0;
  double std_error = 0.0;
  /// 95% interval: Wilson for probabilities, mean +- 1.96 se for chi.
  double ci_lo = 0.0;
  double ci_hi = 0.0;
  std::size_t replicates = 0;
  std::string note;
};

/// Per-replicate statistic: the sup over the point set (or a prefix of it), or chi.
struct ReplicateData {
  std::vector<std::uint64_t> seeds;
  /// values[k][r]: statistic k for replicate r.
  std::vector<std::vector<double>> values;
};

/// Sup over each index subset (defaults to the whole set), from one sample on
/// the full set per replicate: sups over nested subsets are ordered
/// replicate by replicate.
ReplicateData replicate_sups(const FieldSampler& sampler, std::size_t replicates, std::uint64_t seed,
                             std::vector<std::vector<std::size_t>> subsets = {});

/// Indices 0, stride, 2 stride, ... below n.
std::vector<std::size_t> strided_indices(std::size_t n, std::size_t stride);

/// Fraction of sups >= u with the Wilson 95% interval; std_error is the
/// interval half-width divided by 1.96.
ExcursionEstimate excursion_from_sups(std::span<const double> sups, double u);

/// One estimate per level, all levels on the same replicates.
std::vector<ExcursionEstimate> empirical_excursion(const FieldSampler& sampler, std::span<const double> levels,
                                                   std::size_t replicates, std::uint64_t seed,
                                                   ReplicateData* data = nullptr);

ExcursionEstimate empirical_excursion(const CovarianceModel& model, const PointSet& points, double u,
                                      std::size_t replicates, std::uint64_t seed);

/// Mean and standard error of chi(A_u) on the triangulation, all levels on
/// the same replicates. Rejects models with infinite C' (MethodMismatch).
std::vector<ExcursionEstimate> mean_euler_characteristic(const CovarianceModel& model,
                                                         const SphereTriangulation& tri,
                                                         std::span<const double> levels,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         ReplicateData* data = nullptr);

/// As above with a prebuilt sampler whose points are the triangulation's vertices.
std::vector<ExcursionEstimate> mean_euler_characteristic(const FieldSampler& sampler,
                                                         const SphereTriangulation& tri,
                                                         std::span<const double> levels,
                                                         std::size_t replicates, std::uint64_t seed,
                                                         ReplicateData* data = nullptr);

}  // namespace sphex

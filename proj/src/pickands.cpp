#include "sphex/pickands.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sphex/errors.hpp"
#include "sphex/parallel.hpp"
#include "sphex/random.hpp"
#include "sphex/specialfn.hpp"

namespace sphex {

namespace {

constexpr double kOverflowGuard = 700.0;
constexpr std::size_t kBatch = 256;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 2.0)) throw InputError("alpha must lie in (0, 2]");
}

std::size_t grid_intervals(double K, double step) {
  if (!(K > 0.0) || !std::isfinite(K)) throw InputError("K must be positive and finite");
  if (!(step > 0.0) || step > K) throw InputError("grid step must lie in (0, K]");
  const double ratio = K / step;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw InputError("grid step must divide K");
  }
  if (rounded > 1e6) throw InputError("grid has more than 10^6 intervals");
  return static_cast<std::size_t>(rounded);
}

std::vector<double> make_grid(double K, double step, bool two_sided) {
  const std::size_t m = grid_intervals(K, step);
  std::vector<double> grid;
  const auto lo = two_sided ? -static_cast<long>(m) : 0L;
  for (long k = lo; k <= static_cast<long>(m); ++k) grid.push_back(static_cast<double>(k) * step);
  return grid;
}

}  // namespace

std::string to_string(PickandsEstimator e) {
  return e == PickandsEstimator::kTailIntegral ? "tail-integral" : "max-over-sum";
}

std::optional<double> pickands_known(double alpha, int N) {
  if (alpha == 2.0 && N >= 1) return std::pow(specialfn::kPi, -0.5 * N);
  return std::nullopt;
}

DriftedFieldSampler::DriftedFieldSampler(double alpha, double K, double step, bool two_sided)
    : alpha_((check_alpha(alpha), alpha)),
      step_(step),
      grid_(make_grid(K, step, two_sided)),
      sampler_(grid_.size(), [this](std::size_t i, std::size_t j) {
        const double s = grid_[i];
        const double v = grid_[j];
        return std::pow(std::abs(s), alpha_) + std::pow(std::abs(v), alpha_) -
               std::pow(std::abs(s - v), alpha_);
      }) {
  drift_.reserve(grid_.size());
  for (double s : grid_) drift_.push_back(-std::pow(std::abs(s), alpha_));
}

void DriftedFieldSampler::sample_into(std::uint64_t seed, std::span<double> values) const {
  const Eigen::VectorXd x = sampler_.sample(seed);
  for (std::size_t i = 0; i < grid_.size(); ++i) values[i] = drift_[i] + x[static_cast<Eigen::Index>(i)];
}

DriftedFieldSample DriftedFieldSampler::sample(std::uint64_t seed) const {
  DriftedFieldSample out{grid_, std::vector<double>(grid_.size()), seed};
  sample_into(seed, out.values);
  return out;
}

DriftedFieldSample sample_drifted_field(double alpha, double K, double grid_step, std::uint64_t seed) {
  return DriftedFieldSampler(alpha, K, grid_step).sample(seed);
}

std::optional<double> tail_integral_statistic(std::span<const double> values, double K) {
  const double M = std::max(0.0, *std::max_element(values.begin(), values.end()));
  if (M > kOverflowGuard) return std::nullopt;
  return std::expm1(M) / K;
}

double max_over_sum_statistic(std::span<const double> values, double step) {
  const double M = *std::max_element(values.begin(), values.end());
  double sum = 0.0;
  for (double z : values) sum += std::exp(z - M);
  return 1.0 / (step * sum);
}

PickandsEstimate estimate_pickands(double alpha, double K, double grid_step, std::size_t replicates,
                                   std::uint64_t seed, PickandsEstimator estimator, int N) {
  if (N != 1) {
    throw InputError(
        "Pickands constant estimation is implemented for N = 1 only; for N >= 2 the simulation "
        "cost and finite-box bias are prohibitive. Supply the constant explicitly.");
  }
  check_alpha(alpha);
  if (replicates < 100) throw InputError("at least 100 replicates are required");

  const bool ratio = estimator == PickandsEstimator::kMaxOverSum;
  const DriftedFieldSampler sampler(alpha, K, grid_step, ratio);
  const std::size_t n = sampler.grid().size();

  std::vector<double> stat(replicates, 0.0);
  std::vector<char> kept(replicates, 1);
  const std::size_t batches = (replicates + kBatch - 1) / kBatch;
  parallel_for(batches, [&](std::size_t b) {
    const std::size_t first = b * kBatch;
    const std::size_t last = std::min(replicates, first + kBatch);
    std::vector<std::uint64_t> seeds;
    for (std::size_t r = first; r < last; ++r) seeds.push_back(random::replicate_seed(seed, r));
    Eigen::MatrixXd block(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(seeds.size()));
    sampler.zero_mean_sampler().sample_batch(seeds, block);
    std::vector<double> values(n);
    for (std::size_t r = first; r < last; ++r) {
      const auto col = static_cast<Eigen::Index>(r - first);
      for (std::size_t i = 0; i < n; ++i) {
        values[i] = block(static_cast<Eigen::Index>(i), col) - std::pow(std::abs(sampler.grid()[i]), alpha);
      }
      if (ratio) {
        stat[r] = max_over_sum_statistic(values, grid_step);
      } else if (auto v = tail_integral_statistic(values, K)) {
        stat[r] = *v;
      } else {
        kept[r] = 0;
      }
    }
  });

  PickandsEstimate est;
  est.alpha = alpha;
  est.N = N;
  est.K = K;
  est.grid_step = grid_step;
  est.replicates = replicates;
  est.estimator = estimator;
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t used = 0;
  for (std::size_t r = 0; r < replicates; ++r) {
    if (!kept[r]) continue;
    sum += stat[r];
    sum_sq += stat[r] * stat[r];
    ++used;
  }
  est.rejected = replicates - used;
  if (used < 2) throw NumericalError("too few replicates survived the overflow guard");
  const double mean = sum / static_cast<double>(used);
  const double var = std::max(0.0, (sum_sq - static_cast<double>(used) * mean * mean) / static_cast<double>(used - 1));
  est.estimate = mean;
  est.std_error = std::sqrt(var / static_cast<double>(used));
  if (est.rejected > 0) {
    std::ostringstream msg;
    msg << est.rejected << " replicate(s) with max Z > " << kOverflowGuard << " rejected";
    est.diagnostics.push_back(msg.str());
  }
  const auto& info = sampler.zero_mean_sampler().info();
  est.diagnostics.push_back("factorization: " + info.method + ", rank " + std::to_string(info.rank));
  return est;
}

}  // namespace sphex

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include <Eigen/Dense>

namespace sphex {

/// Exact sampler for a centered Gaussian vector with a given covariance.
///
/// Factorization policy, in order:
///  1. Pivoted Cholesky built column by column from `entry`, stopped once the
///     largest remaining pivot is below rank_tolerance * max diagonal. This is
///     exact for semidefinite low-rank covariances (a rank-r matrix yields an
///     n x r factor) and never forms the full matrix.
///  2. If the rank exceeds the low-rank budget or the residual is clearly
///     indefinite: dense Cholesky of the full matrix, retried with diagonal
///     jitter 1e-12 * max diagonal, escalated x10 at most three times.
///  3. Otherwise NumericalError naming the smallest eigenvalue.
class GaussianSampler {
 public:
  using Entry = std::function<double(std::size_t, std::size_t)>;

  struct Options {
    double rank_tolerance = 1e-12;
    /// Largest rank the pivoted route may reach before switching to dense
    /// Cholesky. Sizes at or below `always_pivoted` never switch.
    std::size_t low_rank_budget = 512;
    std::size_t always_pivoted = 1024;
  };

  struct Info {
    std::string method;  // "pivoted-cholesky", "cholesky", "cholesky+jitter"
    std::size_t rank = 0;
    double jitter = 0.0;
  };

  GaussianSampler(std::size_t n, const Entry& entry);
  GaussianSampler(std::size_t n, const Entry& entry, Options options);

  std::size_t size() const { return static_cast<std::size_t>(factor_.rows()); }
  std::size_t latent_dimension() const { return static_cast<std::size_t>(factor_.cols()); }
  const Info& info() const { return info_; }

  /// F with F F^T equal to the covariance (up to the stated tolerances).
  /// Lower triangular when info().method starts with "cholesky".
  const Eigen::MatrixXd& factor() const { return factor_; }

  /// Draw the latent normals of one replicate from the stream keyed by `seed`.
  void latent(std::uint64_t seed, Eigen::Ref<Eigen::VectorXd> z) const;

  /// One sample from the stream keyed by `seed`.
  Eigen::VectorXd sample(std::uint64_t seed) const;

  /// Column k of `out` is the sample for seeds[k]. Thread-safe.
  void sample_batch(std::span<const std::uint64_t> seeds, Eigen::MatrixXd& out) const;

 private:
  bool try_pivoted(std::size_t n, const Entry& entry, const Options& options);
  void dense(std::size_t n, const Entry& entry);

  Eigen::MatrixXd factor_;
  bool triangular_ = false;
  Info info_;
};

}  // namespace sphex

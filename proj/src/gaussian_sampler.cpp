#include "sphex/gaussian_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "sphex/errors.hpp"
#include "sphex/random.hpp"

namespace sphex {

GaussianSampler::GaussianSampler(std::size_t n, const Entry& entry)
    : GaussianSampler(n, entry, Options{}) {}

GaussianSampler::GaussianSampler(std::size_t n, const Entry& entry, Options options) {
  if (n == 0) throw InputError("cannot sample an empty Gaussian vector");
  if (!try_pivoted(n, entry, options)) dense(n, entry);
}

bool GaussianSampler::try_pivoted(std::size_t n, const Entry& entry, const Options& options) {
  const std::size_t budget = n <= options.always_pivoted ? n : std::min(n, options.low_rank_budget);
  Eigen::VectorXd residual(static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) residual[i] = entry(i, i);
  const double max_diag = residual.maxCoeff();
  if (!(max_diag > 0.0)) throw NumericalError("covariance has no positive diagonal entry");
  const double tol = options.rank_tolerance * max_diag;

  std::vector<bool> chosen(n, false);
  Eigen::MatrixXd L(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(std::min<std::size_t>(budget, 64)));
  std::size_t rank = 0;
  Eigen::VectorXd column(static_cast<Eigen::Index>(n));
  while (true) {
    Eigen::Index pivot = -1;
    double best = tol;
    for (std::size_t i = 0; i < n; ++i) {
      if (!chosen[i] && residual[i] > best) {
        best = residual[i];
        pivot = static_cast<Eigen::Index>(i);
      }
    }
    if (pivot < 0) break;
    if (rank == budget) return false;
    if (static_cast<Eigen::Index>(rank) == L.cols()) {
      L.conservativeResize(Eigen::NoChange, std::min<Eigen::Index>(2 * L.cols(), budget));
    }
    for (std::size_t i = 0; i < n; ++i) column[i] = chosen[i] ? 0.0 : entry(i, pivot);
    const auto k = static_cast<Eigen::Index>(rank);
    if (k > 0) column.noalias() -= L.leftCols(k) * L.row(pivot).head(k).transpose();
    const double root = std::sqrt(best);
    for (std::size_t i = 0; i < n; ++i) {
      if (chosen[i]) {
        L(static_cast<Eigen::Index>(i), k) = 0.0;
        continue;
      }
      const double l = column[i] / root;
      L(static_cast<Eigen::Index>(i), k) = l;
      residual[i] -= l * l;
    }
    L(pivot, k) = root;
    residual[pivot] = 0.0;
    chosen[pivot] = true;
    ++rank;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!chosen[i] && residual[i] < -1e-8 * max_diag) return false;
  }
  factor_ = L.leftCols(static_cast<Eigen::Index>(rank));
  triangular_ = false;
  info_ = Info{"pivoted-cholesky", rank, 0.0};
  return true;
}

void GaussianSampler::dense(std::size_t n, const Entry& entry) {
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd cov(size, size);
  for (Eigen::Index j = 0; j < size; ++j) {
    for (Eigen::Index i = j; i < size; ++i) {
      cov(i, j) = entry(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    }
  }
  const double max_diag = cov.diagonal().maxCoeff();
  double jitter = 0.0;
  for (int attempt = 0; attempt <= 4; ++attempt) {
    if (attempt > 0) jitter = attempt == 1 ? 1e-12 * max_diag : jitter * 10.0;
    Eigen::MatrixXd work = cov;
    work.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(work);
    if (llt.info() == Eigen::Success) {
      factor_ = llt.matrixL();
      triangular_ = true;
      info_ = Info{jitter > 0.0 ? "cholesky+jitter" : "cholesky", n, jitter};
      return;
    }
  }
  cov.triangularView<Eigen::StrictlyUpper>() = cov.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov, Eigen::EigenvaluesOnly);
  std::ostringstream msg;
  msg << "covariance factorization failed after jitter " << jitter
      << "; smallest eigenvalue estimate " << eig.eigenvalues().minCoeff();
  throw NumericalError(msg.str());
}

void GaussianSampler::latent(std::uint64_t seed, Eigen::Ref<Eigen::VectorXd> z) const {
  random::Stream stream(seed);
  for (Eigen::Index i = 0; i < z.size(); ++i) z[i] = stream.normal();
}

Eigen::VectorXd GaussianSampler::sample(std::uint64_t seed) const {
  Eigen::VectorXd z(factor_.cols());
  latent(seed, z);
  if (triangular_) return factor_.triangularView<Eigen::Lower>() * z;
  return factor_ * z;
}

void GaussianSampler::sample_batch(std::span<const std::uint64_t> seeds, Eigen::MatrixXd& out) const {
  const auto batch = static_cast<Eigen::Index>(seeds.size());
  Eigen::MatrixXd z(factor_.cols(), batch);
  for (Eigen::Index k = 0; k < batch; ++k) latent(seeds[static_cast<std::size_t>(k)], z.col(k));
  if (triangular_) {
    out.noalias() = factor_.triangularView<Eigen::Lower>() * z;
  } else {
    out.noalias() = factor_ * z;
  }
}

}  // namespace sphex

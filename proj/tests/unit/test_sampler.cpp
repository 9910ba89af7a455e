#include <doctest.h>

#include <cmath>

#include "sphex/errors.hpp"
#include "sphex/gaussian_sampler.hpp"
#include "sphex/random.hpp"

using namespace sphex;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using random::philox4x32_10;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
        random::PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        random::PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        random::PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are deterministic and seed dependent") {
  random::Stream a(42), b(42), c(43);
  int differ = 0;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.normal();
    CHECK(x == b.normal());
    differ += x != c.normal();
  }
  CHECK(differ > 990);
  CHECK(random::replicate_seed(1, 0) != random::replicate_seed(1, 1));
  CHECK(random::replicate_seed(1, 5) != random::replicate_seed(2, 5));
  CHECK(random::replicate_seed(7, 3) == random::splitmix64(7 ^ random::splitmix64(3)));
}

TEST_CASE("uniforms lie in the open unit interval with the right moments") {
  random::Stream s(1);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  CHECK(std::abs(sum / n - 0.5) < 5 * std::sqrt(1.0 / 12 / n));
  CHECK(std::abs(sum2 / n - 1.0 / 3) < 5 * std::sqrt(4.0 / 45 / n));
}

TEST_CASE("normals have unit variance and no skew") {
  random::Stream s(2);
  const int n = 200000;
  double m1 = 0, m2 = 0, m3 = 0, m4 = 0;
  for (int i = 0; i < n; ++i) {
    const double z = s.normal();
    m1 += z;
    m2 += z * z;
    m3 += z * z * z;
    m4 += z * z * z * z;
  }
  CHECK(std::abs(m1 / n) < 5 / std::sqrt(n));
  CHECK(std::abs(m2 / n - 1) < 5 * std::sqrt(2.0 / n));
  CHECK(std::abs(m3 / n) < 5 * std::sqrt(15.0 / n));
  CHECK(std::abs(m4 / n - 3) < 5 * std::sqrt(96.0 / n));
}

TEST_CASE("low-rank covariance gives a factor of that rank") {
  // C_ij = <x_i, x_j> for unit vectors in R^3: rank 3.
  const std::size_t n = 60;
  Eigen::MatrixXd x(n, 3);
  random::Stream s(5);
  for (std::size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) x(static_cast<Eigen::Index>(i), k) = s.normal();
    x.row(static_cast<Eigen::Index>(i)).normalize();
  }
  const Eigen::MatrixXd cov = x * x.transpose();
  GaussianSampler g(n, [&](std::size_t i, std::size_t j) { return cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)); });
  CHECK(g.info().method == "pivoted-cholesky");
  CHECK(g.info().rank == 3);
  CHECK(g.latent_dimension() == 3);
  CHECK((g.factor() * g.factor().transpose() - cov).cwiseAbs().maxCoeff() < 1e-12);
  // Samples lie in the column space of x.
  const Eigen::VectorXd v = g.sample(9);
  const Eigen::VectorXd proj = x * (x.transpose() * x).ldlt().solve(x.transpose() * v);
  CHECK((v - proj).norm() < 1e-10);
}

TEST_CASE("full-rank covariance is reproduced") {
  const std::size_t n = 80;
  auto entry = [](std::size_t i, std::size_t j) {
    return std::exp(-std::abs(static_cast<double>(i) - static_cast<double>(j)) / 10.0);
  };
  GaussianSampler g(n, entry);
  Eigen::MatrixXd cov(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cov(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry(i, j);
  CHECK(g.info().rank == n);
  CHECK((g.factor() * g.factor().transpose() - cov).cwiseAbs().maxCoeff() < 1e-10);

  GaussianSampler dense(n, entry, {1e-12, 0, 0});
  CHECK(dense.info().method.rfind("cholesky", 0) == 0);
  CHECK((dense.factor() * dense.factor().transpose() - cov).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(dense.factor().isLowerTriangular());
}

TEST_CASE("sampling is reproducible and batch equals single") {
  GaussianSampler g(10, [](std::size_t i, std::size_t j) { return i == j ? 1.0 : 0.3; });
  CHECK(g.sample(77) == g.sample(77));
  CHECK(g.sample(77) != g.sample(78));
  const std::vector<std::uint64_t> seeds{5, 6, 7};
  Eigen::MatrixXd out;
  g.sample_batch(seeds, out);
  REQUIRE(out.cols() == 3);
  for (int k = 0; k < 3; ++k) CHECK(out.col(k) == g.sample(seeds[static_cast<std::size_t>(k)]));
}

TEST_CASE("empirical covariance of samples") {
  auto entry = [](std::size_t i, std::size_t j) { return std::pow(0.6, std::abs(static_cast<double>(i) - static_cast<double>(j))); };
  GaussianSampler g(4, entry);
  const int reps = 40000;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(4, 4);
  for (int r = 0; r < reps; ++r) {
    const Eigen::VectorXd v = g.sample(random::replicate_seed(3, static_cast<std::uint64_t>(r)));
    acc += v * v.transpose();
  }
  acc /= reps;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const double c = entry(i, j);
      const double se = std::sqrt((1 + c * c) / reps);
      CHECK(std::abs(acc(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - c) < 4 * se);
    }
  }
}

TEST_CASE("semidefinite matrices with round-off fall back to jitter") {
  // Rank-deficient matrix forced down the dense route.
  const std::size_t n = 30;
  auto entry = [](std::size_t i, std::size_t j) { return std::cos(0.1 * (static_cast<double>(i) - static_cast<double>(j))); };
  GaussianSampler g(n, entry, {1e-12, 0, 0});
  CHECK(g.info().method == "cholesky+jitter");
  CHECK(g.info().jitter > 0.0);
  CHECK(g.info().jitter <= 1e-9 * 1.0000001);
}

TEST_CASE("indefinite matrices are rejected") {
  auto entry = [](std::size_t i, std::size_t j) { return i == j ? 1.0 : -0.9; };
  CHECK_THROWS_AS(GaussianSampler(5, entry), NumericalError);
  CHECK_THROWS_AS(GaussianSampler(5, entry, {1e-12, 0, 0}), NumericalError);
}

// Acceptance checks. Prints one PASS/FAIL line per criterion plus "info"
// lines with the measured quantities. Exits nonzero if any criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "sphex/approx.hpp"
#include "sphex/cli/commands.hpp"
#include "sphex/cli/envelope.hpp"
#include "sphex/covariance.hpp"
#include "sphex/geometry.hpp"
#include "sphex/mcsim.hpp"
#include "sphex/pickands.hpp"
#include "sphex/random.hpp"
#include "sphex/specialfn.hpp"

using namespace sphex;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 2026;

int failures = 0;

void verdict(int id, bool ok, const std::string& what, double seconds) {
  std::printf("criterion %d: %s  %s (%.2f s)\n", id, ok ? "PASS" : "FAIL", what.c_str(), seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
void info(const char* fmt, Args... args) {
  std::printf("  info: ");
  std::printf(fmt, args...);
  std::printf("\n");
  std::fflush(stdout);
}

class Timer {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double rel_err(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<std::size_t> first_n(std::size_t m) {
  std::vector<std::size_t> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = i;
  return v;
}

void criterion1() {
  Timer t;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const double u = 0.5 + 7.5 * k / 49.0;
    worst = std::max(worst, rel_err(eec_sphere(1.0, 1, u).value, specialfn::chi_tail(2, u)));
    worst = std::max(worst, rel_err(eec_sphere(1.0, 2, u).value, specialfn::chi_tail(3, u)));
    worst = std::max(worst, rel_err(eec_sphere(1.0, 2, u).value, oracle::chi3_tail(u)));
  }
  const double s = t.seconds();
  char buf[160];
  std::snprintf(buf, sizeof buf, "EEC equals chi_2/chi_3 tails at 50 levels in [0.5, 8]: max rel err %.2e (tol 1e-12)", worst);
  verdict(1, worst <= 1e-12 && s < 1.0, buf, s);
}

void criterion2() {
  Timer t;
  const std::vector<double> levels{1.5, 2.0};
  std::vector<double> dev[2];
  bool within = true;
  for (int m = 0; m < 2; ++m) {
    const std::size_t n = m == 0 ? 4096 : 8192;
    const auto tri = triangulate_sphere(n);
    const auto est = mean_euler_characteristic(Canonical{}, tri, levels, 10000, kSeed);
    for (std::size_t k = 0; k < levels.size(); ++k) {
      const double u = levels[k];
      const double expected = 2 * specialfn::ec_density(0, u) + 4 * oracle::kPi * specialfn::ec_density(2, u);
      const double d = est[k].estimate - expected;
      const double z = d / est[k].std_error;
      dev[m].push_back(std::abs(d));
      info("%zu vertices, u=%.1f: mean chi %.5f se %.5f expected %.5f deviation %+.5f (z=%+.2f)", n, u,
           est[k].estimate, est[k].std_error, expected, d, z);
      if (m == 0) within = within && std::abs(z) <= 3.0;
    }
  }
  bool shrinks = true;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const bool ok = dev[1][k] <= dev[0][k];
    info("u=%.1f: |deviation| 4096 -> 8192: %.5f -> %.5f (%s)", levels[k], dev[0][k], dev[1][k],
         ok ? "not increased" : "increased");
    shrinks = shrinks && ok;
  }
  const double s = t.seconds();
  verdict(2, within && shrinks && s <= 600.0,
          std::string("mean Euler characteristic within 3 se at 4096 vertices: ") + (within ? "yes" : "no") +
              "; |deviation| not increased at 8192: " + (shrinks ? "yes" : "no"),
          s);
}

void criterion3() {
  Timer t;
  const double u = 2.0;
  const double analytic = specialfn::chi_tail(3, u);
  const auto fib = make_point_set(PointScheme::kFibonacci, 4096, 2);
  const FieldSampler sampler(Canonical{}, fib);
  const std::vector<double> level{u};
  const auto est = empirical_excursion(sampler, level, 20000, kSeed)[0];
  info("fibonacci 4096 points, 2e4 replicates: P{sup >= 2} = %.5f se %.5f, analytic %.5f", est.estimate,
       est.std_error, analytic);

  // Discretization bias from nested uniform sets 2048 < 4096 < 8192: one
  // sample on 8192 points per replicate, sups over prefixes.
  const auto uni = make_point_set(PointScheme::kUniform, 8192, 2, kSeed);
  const FieldSampler nested(Canonical{}, uni);
  const auto data = replicate_sups(nested, 1000000, kSeed + 1, {first_n(2048), first_n(4096), first_n(8192)});
  double p[3];
  for (int k = 0; k < 3; ++k) p[k] = excursion_from_sups(data.values[static_cast<std::size_t>(k)], u).estimate;
  const double b = p[1] - p[0];
  const double b_next = p[2] - p[1];
  info("nested uniform sets, 1e6 replicates: p2048 %.5f p4096 %.5f p8192 %.5f", p[0], p[1], p[2]);
  info("bias b = p4096 - p2048 = %.5f; next doubling %.5f (ratio %.3f, need <= 0.7)", b, b_next, b_next / b);
  const double lo = analytic - 3 * est.std_error - std::max(b, 0.0);
  const double hi = analytic + 3 * est.std_error;
  const bool inside = est.estimate >= lo && est.estimate <= hi;
  const bool shrinking = b > 0.0 && b_next <= 0.7 * b;
  const double s = t.seconds();
  char buf[200];
  std::snprintf(buf, sizeof buf, "empirical %.5f in [%.5f, %.5f]: %s; bias shrinks by >= 30%%: %s", est.estimate, lo, hi,
                inside ? "yes" : "no", shrinking ? "yes" : "no");
  verdict(3, inside && shrinking && s <= 600.0, buf, s);
}

void criterion4() {
  Timer t;
  const LocalExpansion canonical = local_expansion(Canonical{}, 2);
  bool ok = true;
  double lo_ratio = 1e300, hi_ratio = 0.0;
  for (int k = 0; k <= 40; ++k) {
    const double u = 4.0 + 4.0 * k / 40.0;
    const double r = pickands_sphere(canonical, FullSphere{2}, 2, u, pickands_h2(2)).value / eec_sphere(1.0, 2, u).value;
    ok = ok && r >= 1 - 5 / (u * u) && r <= 1 + 5 / (u * u);
    lo_ratio = std::min(lo_ratio, r);
    hi_ratio = std::max(hi_ratio, r);
  }
  const double s = t.seconds();
  char buf[160];
  std::snprintf(buf, sizeof buf, "pickands/eec ratio in [1 - 5/u^2, 1 + 5/u^2] for u in [4, 8]: range [%.5f, %.5f]", lo_ratio,
                hi_ratio);
  verdict(4, ok && s < 1.0, buf, s);
}

void criterion5() {
  Timer t;
  const double h2 = *pickands_known(2.0, 1);
  const auto est = estimate_pickands(2.0, 8.0, 0.05, 10000, kSeed);
  info("max-over-sum estimator: %.6f se %.2e, exact %.6f, relative error %+.2e", est.estimate, est.std_error, h2,
       (est.estimate - h2) / h2);
  const DriftedFieldSampler line(2.0, 8.0, 0.05);
  bool rank_one = line.zero_mean_sampler().info().rank == 1;
  for (std::uint64_t seed = 0; seed < 20 && rank_one; ++seed) {
    const auto sample = line.sample(random::replicate_seed(kSeed, seed));
    const double g = (sample.values[1] + sample.grid[1] * sample.grid[1]) / sample.grid[1];
    for (std::size_t i = 1; i < sample.grid.size(); ++i) {
      const double s = sample.grid[i];
      rank_one = rank_one && std::abs((sample.values[i] + s * s) / s - g) <= 1e-10 * std::max(1.0, std::abs(g));
    }
  }
  info("alpha=2 structure: factor rank %zu, (Z(s) + s^2)/s constant to 1e-10: %s", line.zero_mean_sampler().info().rank,
       rank_one ? "yes" : "no");
  const bool close = std::abs(est.estimate - h2) <= 0.2 * h2 && est.estimate < h2;
  const double s = t.seconds();
  Timer tail_timer;
  const auto tail = estimate_pickands(2.0, 8.0, 0.05, 10000, kSeed, PickandsEstimator::kTailIntegral);
  info("tail-integral estimator (for reference): %.4f se %.4f, %zu rejected (%.2f s)", tail.estimate, tail.std_error,
       tail.rejected, tail_timer.seconds());
  char buf[160];
  std::snprintf(buf, sizeof buf, "H_2 estimate %.6f within 20%% of pi^-1/2 and below it: %s; rank-1 structure: %s", est.estimate,
                close ? "yes" : "no", rank_one ? "yes" : "no");
  verdict(5, close && rank_one && s <= 60.0, buf, s);
}

void criterion6() {
  Timer t;
  const PoweredExponential model{1.0, 1.0};
  const auto circle = make_point_set(PointScheme::kLatLong, 4096, 1);
  const FieldSampler sampler(model, circle);
  info("factorization on 4096 points: %s, rank %zu", sampler.gaussian().info().method.c_str(),
       sampler.gaussian().info().rank);
  const auto data =
      replicate_sups(sampler, 20000, kSeed, {strided_indices(4096, 4), strided_indices(4096, 2), strided_indices(4096, 1)});
  const LocalExpansion local = local_expansion(model, 1);
  // H_1 = 1 (literature value; no closed form is asserted by the library).
  const double h1 = 1.0;
  bool ok = true;
  for (double u : {2.5, 3.0}) {
    const double analytic = pickands_sphere(local, FullSphere{1}, 1, u, h1).value;
    double prev_gap = 1e300;
    for (int k = 0; k < 3; ++k) {
      const auto e = excursion_from_sups(data.values[static_cast<std::size_t>(k)], u);
      const double ratio = e.estimate / analytic;
      const double gap = std::abs(ratio - 1.0);
      info("u=%.1f, %d points: empirical %.5f se %.5f, analytic %.5f, ratio %.4f", u, 1024 << k, e.estimate, e.std_error,
           analytic, ratio);
      ok = ok && std::isfinite(ratio) && ratio > 0.0 && gap < prev_gap;
      prev_gap = gap;
    }
  }
  const double s = t.seconds();
  verdict(6, ok, std::string("PowExp(1,1) on S^1: ratio positive, finite and moving toward 1 over 1024->2048->4096: ") +
                     (ok ? "yes" : "no") + " (trend only; no absolute tolerance)",
          s);
}

void criterion7() {
  Timer t;
  bool all = true;
  auto item = [&](const char* name, bool ok, double worst) {
    info("%-44s %s (worst %.2e)", name, ok ? "ok" : "FAILED", worst);
    all = all && ok;
  };

  double worst = 0.0;
  for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    for (int n = 1; n <= 20; ++n) {
      for (double x : {-0.9, -0.5, -0.1, 0.3, 0.6, 0.85}) {
        const double fd = oracle::five_point_difference(
            [&](double y) { return specialfn::gegenbauer_eval(n, lambda, y); }, x, 1e-3 / n);
        const double d = specialfn::gegenbauer_derivative(n, lambda, x);
        worst = std::max(worst, std::abs(d - fd) / std::max(1.0, std::abs(fd)));
      }
    }
  }
  item("Gegenbauer derivative vs finite differences", worst <= 1e-7, worst);

  worst = 0.0;
  for (double lambda : {0.3, 0.5, 1.0, 1.5, 2.0}) {
    for (int n = 0; n <= 30; ++n) {
      const double direct = std::exp(std::lgamma(n + 2 * lambda) - std::lgamma(n + 1.0) - std::lgamma(2 * lambda));
      worst = std::max(worst, rel_err(specialfn::gegenbauer_at_one(n, lambda), direct));
    }
  }
  item("P_n(1) equals the binomial coefficient", worst <= 1e-12, worst);

  worst = 0.0;
  for (double lambda : {0.5, 1.0, 1.5, 2.0}) {
    for (int n = 0; n <= 30; ++n) {
      for (int k = 0; k <= 200; ++k) {
        worst = std::max(worst, std::abs(specialfn::gegenbauer_eval(n, lambda, -1.0 + k / 100.0)) /
                                    specialfn::gegenbauer_at_one(n, lambda) - 1.0);
      }
    }
  }
  item("|P_n(t)| <= P_n(1)", worst <= 1e-12, std::max(worst, 0.0));

  worst = 0.0;
  random::Stream rng(kSeed);
  for (int trial = 0; trial < 100; ++trial) {
    const int N = 2 + trial % 3;
    SphericalPoint theta, phi;
    double norm = 0.0;
    std::vector<double> delta(static_cast<std::size_t>(N));
    for (auto& d : delta) norm += (d = rng.normal()) * d;
    for (int i = 0; i < N; ++i) {
      const double hi = i + 1 < N ? oracle::kPi : 2 * oracle::kPi;
      theta.theta.push_back(0.2 + (hi - 0.4) * rng.uniform());
      phi.theta.push_back(theta.theta.back() + 1e-3 * delta[static_cast<std::size_t>(i)] / std::sqrt(norm));
    }
    const auto e = distance_expansion_check(theta, phi);
    worst = std::max(worst, std::abs(e.lhs / e.rhs - 1.0));
  }
  item("distance expansion ratio at |delta| = 1e-3", worst <= 1e-3, worst);

  worst = 0.0;
  for (int j = 0; j <= 8; ++j) {
    const auto c = oracle::hermite_symbolic(j);
    for (double u : {-2.5, -1.0, 0.0, 0.3, 1.0, 2.0, 4.5}) {
      const double ref = oracle::poly_eval(c, u);
      worst = std::max(worst, std::abs(specialfn::hermite(j, u) - ref) / std::max(1.0, std::abs(ref)));
    }
  }
  item("Hermite recurrence vs derivative definition", worst <= 1e-13, worst);

  worst = 0.0;
  for (auto [a, b] : {std::pair{0.1, 1.0}, std::pair{0.5, 3.0}, std::pair{1.0, oracle::kPi}, std::pair{0.01, 0.02}}) {
    const auto s = sfbm_integral(CoordinateBox{1, {a}, {b}});
    worst = std::max(worst, rel_err(s.quadrature, std::log(b / a)));
  }
  item("SFBM N=1 quadrature vs closed-form log", worst <= 1e-10, worst);

  worst = 0.0;
  for (const LocalExpansion local : {LocalExpansion{0.5, 2.0}, LocalExpansion{1.3, 1.0}, LocalExpansion{0.8, 0.6}}) {
    for (int N = 1; N <= 3; ++N) {
      CoordinateBox box{N, std::vector<double>(static_cast<std::size_t>(N), 0.0),
                        std::vector<double>(static_cast<std::size_t>(N), oracle::kPi)};
      box.upper.back() = 2 * oracle::kPi;
      worst = std::max(worst, rel_err(chan_lai_box(local, box, N, 2.5, 0.9).value,
                                      pickands_sphere(local, FullSphere{N}, N, 2.5, 0.9).value));
    }
  }
  item("full-range box quadrature vs sphere formula", worst <= 1e-10, worst);

  worst = 0.0;
  random::Stream coeffs(kSeed + 7);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> b(static_cast<std::size_t>(2 + trial % 9));
    double total = 0.0;
    for (auto& x : b) total += (x = coeffs.uniform());
    for (auto& x : b) x /= total;
    for (int N : {1, 2, 3, 4}) {
      const MonomialSeries m{b};
      const double direct = *cprime(m, N).cprime;
      const double via = *cprime(schoenberg_from_monomial(m, N).series, N).cprime;
      worst = std::max(worst, rel_err(via, direct));
    }
  }
  item("C' monomial route vs Gegenbauer route", worst <= 1e-10, worst);

  const double s = t.seconds();
  verdict(7, all && s < 10.0, std::string("identity suites: ") + (all ? "all hold" : "some failed"), s);
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(SPHEX_TOOL) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion8() {
  Timer t;
  const fs::path dir = fs::temp_directory_path() / ("sphex_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const auto can = (dir / "canonical.json").string();
  const auto pe = (dir / "powexp.json").string();
  std::ofstream(can) << R"({"version": 1, "kind": "canonical", "dimension": 2})";
  std::ofstream(pe) << R"({"version": 1, "kind": "powered-exponential", "dimension": 2, "c": 1.0, "alpha": 0.5})";

  bool ok = true;
  struct Case {
    std::string model, statistic, scheme;
  };
  for (const auto& c : {Case{can, "sup", "fibonacci"}, Case{can, "ec", "fibonacci"}, Case{pe, "sup", "uniform"}}) {
    cli::SimulateOptions o;
    o.model_path = c.model;
    o.levels = {1.0, 2.0, 3.0};
    o.replicates = 500;
    o.seed = kSeed;
    o.points = 1024;
    o.scheme = c.scheme;
    o.statistic = c.statistic;
    const auto d1 = cli::payload_digest(cli::run_simulate(o));
    const auto d2 = cli::payload_digest(cli::run_simulate(o));
    info("in-process simulate (%s, %s): %s %s", c.statistic.c_str(), c.scheme.c_str(), d1.substr(0, 16).c_str(),
         d1 == d2 ? "identical" : "DIFFERENT");
    ok = ok && d1 == d2;
  }
  // Two separate processes.
  std::string digests[2];
  for (int k = 0; k < 2; ++k) {
    const auto out = (dir / ("run" + std::to_string(k) + ".json")).string();
    const int code = run_tool("simulate --model " + can + " --levels 1,2 --replicates 500 --points 1024 --seed " +
                              std::to_string(kSeed) + " --out " + out);
    std::ifstream in(out);
    std::stringstream ss;
    ss << in.rdbuf();
    digests[k] = code == 0 ? cli::payload_digest(cli::json::parse(ss.str())) : "exit " + std::to_string(code);
  }
  info("separate processes: %s / %s", digests[0].substr(0, 16).c_str(), digests[1].substr(0, 16).c_str());
  ok = ok && digests[0] == digests[1] && digests[0].size() == 64;
  fs::remove_all(dir);
  verdict(8, ok, std::string("repeated simulate runs give identical payload digests: ") + (ok ? "yes" : "no"), t.seconds());
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8};
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    try {
      criteria[k]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(k) + 1, false, std::string("error: ") + e.what(), 0.0);
    }
  }
  std::printf("%d criterion failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

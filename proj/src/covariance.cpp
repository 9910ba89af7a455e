#include "sphex/covariance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sphex/errors.hpp"
#include "sphex/specialfn.hpp"

namespace sphex {

namespace {

using specialfn::kPi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr int kMaxBasisChangeDegree = 64;

void check_coefficients(const std::vector<double>& coefficients, const char* what) {
  if (coefficients.empty()) throw InputError(std::string(what) + ": no coefficients");
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    const double a = coefficients[n];
    if (!std::isfinite(a)) {
      throw InputError(std::string(what) + ": coefficient " + std::to_string(n) + " is not finite");
    }
    if (a < 0.0) {
      std::ostringstream msg;
      msg << what << ": coefficient " << n << " = " << a << " is negative";
      throw InputError(msg.str());
    }
  }
}

double schoenberg_value(const SchoenbergSeries& s, double t) {
  const auto p = specialfn::gegenbauer_all(static_cast<int>(s.coefficients.size()) - 1,
                                           s.lambda(), t);
  double value = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) value += s.coefficients[n] * p[n];
  return value;
}

double monomial_value(const MonomialSeries& s, double t) {
  double value = 0.0;
  for (auto it = s.coefficients.rbegin(); it != s.coefficients.rend(); ++it) value = value * t + *it;
  return value;
}

// Isotropic C(t) without parameter validation.
double isotropic_value(const CovarianceModel& model, double t) {
  return std::visit(
      overloaded{
          [&](const SchoenbergSeries& s) { return schoenberg_value(s, t); },
          [&](const MonomialSeries& s) { return monomial_value(s, t); },
          [&](const PoweredExponential& m) { return std::exp(-m.c * std::pow(std::acos(t), m.alpha)); },
          [&](const SineModel& m) {
            const double d = std::acos(t);
            const double scale = std::pow(m.c, 1.0 / m.alpha);
            if (d > kPi * scale) return 1.0;
            return 1.0 - std::pow(std::sin(d / scale), m.alpha);
          },
          [&](const Canonical&) { return t; },
          [&](const ArccosLinear&) { return 1.0 - (2.0 / kPi) * std::acos(t); },
          [&](const StandardizedSfbm&) -> double {
            throw MethodMismatch("standardized SFBM covariance is not a function of <x, y> alone");
          },
      },
      model);
}

double dot(std::span<const double> x, std::span<const double> y) {
  return std::inner_product(x.begin(), x.end(), y.begin(), 0.0);
}

double schoenberg_cprime(const SchoenbergSeries& s) {
  const int N = s.dimension;
  double total = 0.0;
  for (std::size_t n = 1; n < s.coefficients.size(); ++n) {
    const double a = s.coefficients[n];
    if (a == 0.0) continue;
    if (N == 1) {
      total += static_cast<double>(n) * static_cast<double>(n) * a;
    } else {
      total += specialfn::binomial(static_cast<double>(n) + N - 1, N) * a;
    }
  }
  return N == 1 ? total : (N - 1) * total;
}

double monomial_cprime(const MonomialSeries& s) {
  double total = 0.0;
  for (std::size_t n = 1; n < s.coefficients.size(); ++n) total += static_cast<double>(n) * s.coefficients[n];
  return total;
}

}  // namespace

std::string to_string(Smoothness s) {
  switch (s) {
    case Smoothness::kA1Satisfied: return "A1-satisfied";
    case Smoothness::kA1PrimeSatisfied: return "A1prime-satisfied";
    case Smoothness::kNotSmooth: return "not-smooth";
  }
  return "unknown";
}

std::string model_name(const CovarianceModel& model) {
  return std::visit(overloaded{
                        [](const SchoenbergSeries&) { return std::string("schoenberg"); },
                        [](const MonomialSeries&) { return std::string("monomial"); },
                        [](const PoweredExponential&) { return std::string("powered-exponential"); },
                        [](const SineModel&) { return std::string("sine"); },
                        [](const Canonical&) { return std::string("canonical"); },
                        [](const ArccosLinear&) { return std::string("arccos-linear"); },
                        [](const StandardizedSfbm&) { return std::string("sfbm"); },
                    },
                    model);
}

bool is_isotropic(const CovarianceModel& model) {
  return !std::holds_alternative<StandardizedSfbm>(model);
}

void check_model(const CovarianceModel& model, int N) {
  if (N < 1) throw InputError("sphere dimension N must be >= 1");
  std::visit(overloaded{
                 [&](const SchoenbergSeries& s) {
                   if (s.dimension != N) {
                     throw InputError("Schoenberg series built for S^" + std::to_string(s.dimension) +
                                      " used on S^" + std::to_string(N));
                   }
                   check_coefficients(s.coefficients, "Schoenberg series");
                 },
                 [&](const MonomialSeries& s) { check_coefficients(s.coefficients, "monomial series"); },
                 [&](const PoweredExponential& m) {
                   if (!(m.c > 0.0) || !(m.alpha > 0.0 && m.alpha <= 1.0)) {
                     throw InputError("powered exponential needs c > 0 and alpha in (0, 1]");
                   }
                 },
                 [&](const SineModel& m) {
                   if (!(m.c > 0.0) || !(m.alpha > 0.0 && m.alpha < 2.0)) {
                     throw InputError("sine model needs c > 0 and alpha in (0, 2)");
                   }
                 },
                 [&](const Canonical&) {},
                 [&](const ArccosLinear&) {},
                 [&](const StandardizedSfbm& m) {
                   if (!(m.beta > 0.0 && m.beta <= 0.5)) {
                     throw InputError("standardized SFBM needs beta in (0, 1/2]");
                   }
                 },
             },
             model);
  if (!(model_variance(model, N) > 0.0)) throw InputError("model has zero variance");
}

double model_variance(const CovarianceModel& model, int N) {
  return std::visit(overloaded{
                        [&](const SchoenbergSeries& s) {
                          double v = 0.0;
                          for (std::size_t n = 0; n < s.coefficients.size(); ++n) {
                            v += s.coefficients[n] *
                                 specialfn::gegenbauer_at_one(static_cast<int>(n), 0.5 * (N - 1));
                          }
                          return v;
                        },
                        [&](const MonomialSeries& s) {
                          return std::accumulate(s.coefficients.begin(), s.coefficients.end(), 0.0);
                        },
                        [&](const auto&) { return 1.0; },
                    },
                    model);
}

double covariance_eval(const CovarianceModel& model, double cos_angle, int N) {
  check_model(model, N);
  return isotropic_value(model, specialfn::clamp_unit(cos_angle));
}

double covariance_between(const CovarianceModel& model, std::span<const double> x,
                          std::span<const double> y, int N) {
  if (x.size() != static_cast<std::size_t>(N + 1) || y.size() != x.size()) {
    throw InputError("point dimension does not match S^" + std::to_string(N));
  }
  const double t = std::clamp(dot(x, y), -1.0, 1.0);
  if (const auto* sfbm = std::get_if<StandardizedSfbm>(&model)) {
    const double dx = std::acos(std::clamp(x[0], -1.0, 1.0));
    const double dy = std::acos(std::clamp(y[0], -1.0, 1.0));
    if (dx == 0.0 || dy == 0.0) throw InputError("standardized SFBM is undefined at the pole");
    const double h = 2.0 * sfbm->beta;
    const double dxy = std::acos(t);
    return (std::pow(dx, h) + std::pow(dy, h) - std::pow(dxy, h)) /
           (2.0 * std::pow(dx, sfbm->beta) * std::pow(dy, sfbm->beta));
  }
  return isotropic_value(model, t);
}

NormalizedModel normalize(const CovarianceModel& model, int N) {
  check_model(model, N);
  NormalizedModel out{model, model_variance(model, N), {}};
  const double v = out.original_variance;
  if (std::abs(v - 1.0) <= 1e-12) return out;
  auto scale = [v](std::vector<double>& c) {
    for (double& a : c) a /= v;
  };
  if (auto* s = std::get_if<SchoenbergSeries>(&out.model)) scale(s->coefficients);
  if (auto* s = std::get_if<MonomialSeries>(&out.model)) scale(s->coefficients);
  std::ostringstream msg;
  msg << "model variance " << v << " rescaled to 1";
  out.warnings.push_back(msg.str());
  return out;
}

SmoothnessReport cprime(const CovarianceModel& model, int N) {
  const auto normalized = normalize(model, N);
  SmoothnessReport report;
  report.diagnostics = normalized.warnings;
  std::visit(overloaded{
                 [&](const SchoenbergSeries& s) {
                   report.condition = Smoothness::kA1Satisfied;
                   report.cprime = schoenberg_cprime(s);
                   report.diagnostics.push_back("finite Schoenberg series: coefficient summability (A1) holds");
                 },
                 [&](const MonomialSeries& s) {
                   report.condition = Smoothness::kA1PrimeSatisfied;
                   report.cprime = monomial_cprime(s);
                   report.diagnostics.push_back("finite monomial series: coefficient summability (A1prime) holds");
                 },
                 [&](const Canonical&) {
                   report.condition = Smoothness::kA1PrimeSatisfied;
                   report.cprime = 1.0;
                   report.diagnostics.push_back("canonical field: monomial series b_1 = 1");
                 },
                 [&](const PoweredExponential& m) {
                   report.local = LocalExpansion{m.c, m.alpha};
                   report.diagnostics.push_back("powered exponential with alpha <= 1 is not differentiable");
                 },
                 [&](const SineModel& m) {
                   report.local = LocalExpansion{1.0 / m.c, m.alpha};
                   report.diagnostics.push_back("sine model with alpha < 2 is not differentiable");
                 },
                 [&](const ArccosLinear&) {
                   report.local = LocalExpansion{2.0 / kPi, 1.0};
                   report.diagnostics.push_back(
                       "arccos-linear: monomial series has sum n b_n = infinity, summability (A1prime) fails");
                 },
                 [&](const StandardizedSfbm&) {
                   report.diagnostics.push_back(
                       "standardized SFBM: local structure depends on theta_1, use the sfbm route");
                 },
             },
             normalized.model);
  return report;
}

LocalExpansion local_expansion(const CovarianceModel& model, int N) {
  if (std::holds_alternative<StandardizedSfbm>(model)) {
    throw MethodMismatch("standardized SFBM has position-dependent local structure");
  }
  const auto report = cprime(model, N);
  if (report.local) return *report.local;
  if (!report.cprime || !(*report.cprime > 0.0)) {
    throw MethodMismatch("model has C' = 0: local behavior is not of the form 1 - c d^alpha");
  }
  return LocalExpansion{*report.cprime / 2.0, 2.0};
}

SmoothnessReport validate_model(const CovarianceModel& model, int N) {
  auto report = cprime(model, N);
  if (report.smooth() && !report.local && *report.cprime > 0.0) {
    report.local = LocalExpansion{*report.cprime / 2.0, 2.0};
  }
  return report;
}

std::vector<double> gegenbauer_monomial_coefficients(int n, double lambda) {
  if (n < 0) throw InputError("degree must be nonnegative");
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{0.0, lambda == 0.0 ? 1.0 : 2.0 * lambda};
  for (int k = 2; k <= n; ++k) {
    std::vector<double> next(static_cast<std::size_t>(k) + 1, 0.0);
    if (lambda == 0.0) {
      for (int i = 0; i < k; ++i) next[i + 1] += 2.0 * cur[i];
      for (int i = 0; i < k - 1; ++i) next[i] -= prev[i];
    } else {
      const double a = 2.0 * (k + lambda - 1.0) / k;
      const double b = (k + 2.0 * lambda - 2.0) / k;
      for (int i = 0; i < k; ++i) next[i + 1] += a * cur[i];
      for (int i = 0; i < k - 1; ++i) next[i] -= b * prev[i];
    }
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BasisChange schoenberg_from_monomial(const MonomialSeries& series, int N) {
  if (N < 1) throw InputError("sphere dimension N must be >= 1");
  check_coefficients(series.coefficients, "monomial series");
  const int degree = static_cast<int>(series.coefficients.size()) - 1;
  if (degree > kMaxBasisChangeDegree) {
    throw InputError("basis change supports degree <= " + std::to_string(kMaxBasisChangeDegree));
  }
  const double lambda = 0.5 * (N - 1);
  std::vector<std::vector<double>> basis;
  basis.reserve(static_cast<std::size_t>(degree) + 1);
  for (int n = 0; n <= degree; ++n) basis.push_back(gegenbauer_monomial_coefficients(n, lambda));

  // Back substitution against the triangular (degree-graded) basis.
  std::vector<double> residual = series.coefficients;
  BasisChange out;
  out.series.dimension = N;
  out.series.coefficients.assign(static_cast<std::size_t>(degree) + 1, 0.0);
  for (int n = degree; n >= 0; --n) {
    const double a = residual[n] / basis[n][n];
    out.series.coefficients[n] = a;
    for (int i = 0; i <= n; ++i) residual[i] -= a * basis[n][i];
  }
  const double scale = *std::max_element(series.coefficients.begin(), series.coefficients.end());
  for (int n = 0; n <= degree; ++n) {
    double& a = out.series.coefficients[n];
    // Exact zeros get smeared into round-off; snap them back.
    if (std::abs(a) < 1e-14 * scale) a = 0.0;
    if (a < 0.0) out.negative_indices.push_back(n);
  }
  return out;
}

}  // namespace sphex

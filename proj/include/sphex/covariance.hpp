#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

/// Covariance models of Gaussian fields on the unit sphere S^N.
///
/// Isotropic models are functions of t = <x, y> = cos d(x, y). Series models
/// accept only finite truncations, so the coefficient summability conditions
/// that make the field smooth hold automatically whenever the coefficients
/// are valid; infinite families enter only as closed forms with hand-coded
/// smoothness metadata.
namespace sphex {

/// C(t) = sum_n a_n P_n^lambda(t), lambda = (N - 1) / 2, a_n >= 0.
struct SchoenbergSeries {
  int dimension = 1;
  std::vector<double> coefficients;

  double lambda() const { return 0.5 * (dimension - 1); }
};

/// C(t) = sum_n b_n t^n, b_n >= 0. Valid on every S^N.
struct MonomialSeries {
  std::vector<double> coefficients;
};

/// C = exp(-c d^alpha), c > 0, alpha in (0, 1].
struct PoweredExponential {
  double c = 1.0;
  double alpha = 1.0;
};

/// C = 1 - sin(d / c^{1/alpha})^alpha on d <= pi c^{1/alpha}, 1 beyond; c > 0, alpha in (0, 2).
struct SineModel {
  double c = 1.0;
  double alpha = 1.0;
};

/// C(x, y) = <x, y>, the field X(x) = <x, xi> with xi ~ N(0, I).
struct Canonical {};

/// C = 1 - (2 / pi) d.
struct ArccosLinear {};

/// Standardized spherical fractional Brownian motion B_beta(x) / d^beta(x, o)
/// with pole o = e_1 = (1, 0, ..., 0). Not isotropic.
struct StandardizedSfbm {
  double beta = 0.5;
};

using CovarianceModel = std::variant<SchoenbergSeries, MonomialSeries, PoweredExponential,
                                     SineModel, Canonical, ArccosLinear, StandardizedSfbm>;

/// 1 - C ~ c d^alpha as d -> 0.
struct LocalExpansion {
  double c = 1.0;
  double alpha = 2.0;
};

/// A1: summability of the Gegenbauer coefficients with polynomial weights.
/// A1prime: the same for inner-product power coefficients, which needs
/// sum n b_n < infinity at least.
enum class Smoothness { kA1Satisfied, kA1PrimeSatisfied, kNotSmooth };

std::string to_string(Smoothness s);

struct SmoothnessReport {
  Smoothness condition = Smoothness::kNotSmooth;
  /// C' of the unit-variance model; empty means infinite (non-smooth).
  std::optional<double> cprime;
  /// Local (c, alpha); absent for position-dependent models (SFBM).
  std::optional<LocalExpansion> local;
  std::vector<std::string> diagnostics;

  bool smooth() const { return cprime.has_value(); }
};

std::string model_name(const CovarianceModel& model);
bool is_isotropic(const CovarianceModel& model);

/// Throws InputError on out-of-range parameters, negative coefficients, or a
/// Schoenberg series whose dimension differs from N.
void check_model(const CovarianceModel& model, int N);

/// C(x, x). Closed forms are unit variance by construction.
double model_variance(const CovarianceModel& model, int N);

/// C as a function of cos_angle = <x, y>. Throws MethodMismatch for SFBM.
double covariance_eval(const CovarianceModel& model, double cos_angle, int N);

/// C(x, y) for unit vectors in R^{N+1}; handles non-isotropic models.
double covariance_between(const CovarianceModel& model, std::span<const double> x,
                          std::span<const double> y, int N);

struct NormalizedModel {
  CovarianceModel model;
  double original_variance = 1.0;
  std::vector<std::string> warnings;
};

/// Divide by C(x, x) so the model has unit variance; records a warning when
/// the input was not already normalized.
NormalizedModel normalize(const CovarianceModel& model, int N);

/// C' (second spectral moment) of the normalized model, with the applicable
/// smoothness condition. Non-smooth is a valid report, not an error.
SmoothnessReport cprime(const CovarianceModel& model, int N);

/// Local expansion (c, alpha) of the normalized model.
/// Throws MethodMismatch for SFBM and for degenerate series (C' = 0).
LocalExpansion local_expansion(const CovarianceModel& model, int N);

/// check_model + normalization record + smoothness classification.
SmoothnessReport validate_model(const CovarianceModel& model, int N);

struct BasisChange {
  SchoenbergSeries series;
  /// Indices n with a_n < 0: the monomial input is not a valid Schoenberg
  /// series on S^N if this is nonempty.
  std::vector<int> negative_indices;
};

/// Re-expand sum b_n t^n in the P_n^lambda basis. Degree <= 64.
BasisChange schoenberg_from_monomial(const MonomialSeries& series, int N);

/// Monomial coefficients of P_n^lambda (lambda = 0: Chebyshev T_n).
std::vector<double> gegenbauer_monomial_coefficients(int n, double lambda);

}  // namespace sphex

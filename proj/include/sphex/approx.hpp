#pragma once

#include <map>
#include <string>
#include <vector>

#include "sphex/covariance.hpp"
#include "sphex/geometry.hpp"

/// Analytic approximations to P{sup_T X >= u} as u -> infinity.
///
/// - pickands: non-smooth locally isotropic fields, 1 - C ~ c d^alpha.
/// - sfbm:     standardized spherical fractional Brownian motion.
/// - eec:      smooth isotropic fields via the expected Euler characteristic.
///
/// All three are asymptotic statements. Every result records the validity
/// threshold u_min = 1 below which the formulas are not meaningful; the
/// remainder terms are never estimated.
namespace sphex {

enum class ApproxMethod { kPickands, kSfbm, kEec };

std::string to_string(ApproxMethod m);

struct ApproxTerm {
  std::string name;
  double value = 0.0;
};

struct ApproxResult {
  double u = 0.0;
  double value = 0.0;
  ApproxMethod method = ApproxMethod::kEec;
  /// eec: the summands (C')^{j/2} L_j rho_j(u), whose sum is `value`.
  /// pickands/sfbm: the factors, whose product is `value`.
  std::vector<ApproxTerm> terms;
  std::map<std::string, double> parameters;
  std::map<std::string, std::string> notes;
  double validity_threshold = 1.0;

  bool below_validity() const { return u < validity_threshold; }
};

/// Pickands' constant H_2 = pi^{-N/2}.
double pickands_h2(int N);

/// c^{N/alpha} Area(T) H_alpha u^{2N/alpha} Psi(u).
ApproxResult pickands_sphere(const LocalExpansion& local, const SphericalDomain& domain, int N,
                             double u, double pickands_constant);

/// u^{2N/alpha} Psi(u) H_alpha int_D |det M_th| dth, the box integral done by
/// tensor-product quadrature of the anisotropy determinant.
ApproxResult chan_lai_box(const LocalExpansion& local, const CoordinateBox& box, int N, double u,
                          double pickands_constant);

/// int_D th_1^{-N} prod_{i<N} sin^{N-i} th_i dth for the SFBM formula.
struct SfbmIntegral {
  double value = 0.0;
  double quadrature = 0.0;
  /// ln(b / a); only for N = 1.
  std::optional<double> closed_form;
};

SfbmIntegral sfbm_integral(const CoordinateBox& box);

/// u^{N/beta} Psi(u) 2^{-N/(2 beta)} H_{2 beta} int_D th_1^{-N} (...) dth.
/// The box must keep th_1 > 0 (pole excluded); N = 1 also needs th_1 <= pi.
ApproxResult sfbm_pickands(double beta, const CoordinateBox& box, int N, double u,
                           double pickands_constant);

/// sum_{j=0}^{N} (C')^{j/2} L_j(S^N) rho_j(u).
ApproxResult eec_sphere(double cprime, int N, double u);

/// sum_{j=0}^{k} (C')^{j/2} L_j(T) rho_j(u).
ApproxResult eec_domain(double cprime, const LKCurvatures& lk, double u);

}  // namespace sphex

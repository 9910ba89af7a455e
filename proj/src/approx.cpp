#include "sphex/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss.hpp>

#include "sphex/errors.hpp"
#include "sphex/quadrature.hpp"
#include "sphex/specialfn.hpp"

namespace sphex {

namespace {

using specialfn::kPi;

constexpr double kValidityThreshold = 1.0;

void check_level(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw InputError("level u must be positive and finite");
}

void check_pickands_constant(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw InputError("a positive Pickands constant is required (only H_2 is known in closed form)");
  }
}

void check_local(const LocalExpansion& local) {
  if (!(local.c > 0.0) || !(local.alpha > 0.0 && local.alpha <= 2.0)) {
    throw InputError("local expansion needs c > 0 and alpha in (0, 2]");
  }
}

double product_of_terms(const std::vector<ApproxTerm>& terms) {
  double p = 1.0;
  for (const auto& t : terms) p *= t.value;
  return p;
}

// Tensor-product 10-point Gauss-Legendre over a box, `panels` panels per axis.
template <class F>
double tensor_quadrature(const std::vector<double>& lower, const std::vector<double>& upper,
                         int panels, F&& f) {
  using Rule = boost::math::quadrature::gauss<double, 10>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();
  const std::size_t dims = lower.size();
  std::vector<std::vector<double>> nodes(dims), node_weights(dims);
  for (std::size_t d = 0; d < dims; ++d) {
    const double h = (upper[d] - lower[d]) / panels;
    for (int p = 0; p < panels; ++p) {
      const double mid = lower[d] + (p + 0.5) * h;
      for (std::size_t k = 0; k < abscissa.size(); ++k) {
        for (int sign : {-1, 1}) {
          if (abscissa[k] == 0.0 && sign < 0) continue;
          nodes[d].push_back(mid + sign * 0.5 * h * abscissa[k]);
          node_weights[d].push_back(0.5 * h * weights[k]);
        }
      }
    }
  }
  std::vector<std::size_t> index(dims, 0);
  std::vector<double> point(dims);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (std::size_t d = 0; d < dims; ++d) {
      point[d] = nodes[d][index[d]];
      w *= node_weights[d][index[d]];
    }
    total += w * f(point);
    std::size_t d = 0;
    for (; d < dims; ++d) {
      if (++index[d] < nodes[d].size()) break;
      index[d] = 0;
    }
    if (d == dims) break;
  }
  return total;
}

}  // namespace

std::string to_string(ApproxMethod m) {
  switch (m) {
    case ApproxMethod::kPickands: return "pickands";
    case ApproxMethod::kSfbm: return "sfbm";
    case ApproxMethod::kEec: return "eec";
  }
  return "unknown";
}

double pickands_h2(int N) { return std::pow(kPi, -0.5 * N); }

ApproxResult pickands_sphere(const LocalExpansion& local, const SphericalDomain& domain, int N,
                             double u, double pickands_constant) {
  check_level(u);
  check_local(local);
  check_pickands_constant(pickands_constant);
  if (domain_dimension(domain) != N) throw InputError("domain dimension differs from N");
  const double area = domain_area(domain);

  ApproxResult r;
  r.u = u;
  r.method = ApproxMethod::kPickands;
  r.terms = {
      {"c^(N/alpha)", std::pow(local.c, N / local.alpha)},
      {"area", area},
      {"H_alpha", pickands_constant},
      {"u^(2N/alpha)", std::pow(u, 2.0 * N / local.alpha)},
      {"Psi(u)", specialfn::gauss_tail_psi(u)},
  };
  r.value = product_of_terms(r.terms);
  r.parameters = {{"c", local.c}, {"alpha", local.alpha}, {"N", N}};
  r.notes = {{"domain", domain_name(domain)}, {"error_order", "relative o(1) as u -> infinity"}};
  r.validity_threshold = kValidityThreshold;
  return r;
}

ApproxResult chan_lai_box(const LocalExpansion& local, const CoordinateBox& box, int N, double u,
                          double pickands_constant) {
  check_level(u);
  check_local(local);
  check_pickands_constant(pickands_constant);
  check_domain(box);
  if (box.dimension != N) throw InputError("box dimension differs from N");

  double integral = 0.0;
  bool empty = false;
  for (int i = 0; i < N; ++i) empty = empty || box.lower[i] == box.upper[i];
  if (!empty) {
    // Keep the tensor grid near four million nodes.
    const double per_axis = std::pow(4.0e6, 1.0 / N);
    const int panels = std::clamp(static_cast<int>(per_axis / 10.0), 1, 64);
    integral = tensor_quadrature(box.lower, box.upper, panels, [&](const std::vector<double>& th) {
      return std::abs(anisotropy_matrix(SphericalPoint{th}, local.c, local.alpha).determinant());
    });
  }

  ApproxResult r;
  r.u = u;
  r.method = ApproxMethod::kPickands;
  r.terms = {
      {"int_D |det M|", integral},
      {"H_alpha", pickands_constant},
      {"u^(2N/alpha)", std::pow(u, 2.0 * N / local.alpha)},
      {"Psi(u)", specialfn::gauss_tail_psi(u)},
  };
  r.value = product_of_terms(r.terms);
  r.parameters = {{"c", local.c}, {"alpha", local.alpha}, {"N", N}};
  r.notes = {{"domain", "box"}, {"error_order", "relative o(1) as u -> infinity"}};
  r.validity_threshold = kValidityThreshold;
  return r;
}

SfbmIntegral sfbm_integral(const CoordinateBox& box) {
  check_domain(box);
  const int N = box.dimension;
  if (!(box.lower[0] > 0.0)) {
    throw MethodMismatch("standardized SFBM needs a domain whose closure excludes the pole (theta_1 > 0)");
  }
  if (N == 1 && box.upper[0] > kPi) {
    throw InputError("on S^1 the SFBM box must satisfy theta_1 <= pi so that d(x, o) = theta_1");
  }
  SfbmIntegral out;
  const double a = box.lower[0];
  const double b = box.upper[0];
  double first = 0.0;
  if (a < b) {
    first = quadrature::adaptive(
        [N](double th) { return std::pow(th, -N) * std::pow(std::sin(th), N - 1); }, a, b);
  }
  double rest = 1.0;
  for (int i = 1; i < N; ++i) {
    const int power = N - 1 - i;
    const double lo = box.lower[i];
    const double hi = box.upper[i];
    rest *= power == 0 ? hi - lo
                       : (lo == hi ? 0.0
                                   : quadrature::adaptive(
                                         [power](double th) { return std::pow(std::sin(th), power); },
                                         lo, hi));
  }
  out.quadrature = first * rest;
  out.value = out.quadrature;
  if (N == 1) {
    out.closed_form = std::log(b / a);
    out.value = *out.closed_form;
  }
  return out;
}

ApproxResult sfbm_pickands(double beta, const CoordinateBox& box, int N, double u,
                           double pickands_constant) {
  check_level(u);
  check_pickands_constant(pickands_constant);
  if (!(beta > 0.0 && beta <= 0.5)) throw InputError("SFBM needs beta in (0, 1/2]");
  if (box.dimension != N) throw InputError("box dimension differs from N");
  const auto integral = sfbm_integral(box);

  ApproxResult r;
  r.u = u;
  r.method = ApproxMethod::kSfbm;
  r.terms = {
      {"u^(N/beta)", std::pow(u, N / beta)},
      {"Psi(u)", specialfn::gauss_tail_psi(u)},
      {"2^(-N/(2 beta))", std::pow(2.0, -N / (2.0 * beta))},
      {"H_(2 beta)", pickands_constant},
      {"int_D theta_1^-N (...)", integral.value},
  };
  r.value = product_of_terms(r.terms);
  r.parameters = {{"beta", beta}, {"N", N}, {"integral_quadrature", integral.quadrature}};
  if (integral.closed_form) r.parameters["integral_closed_form"] = *integral.closed_form;
  r.notes = {{"domain", "box"}, {"error_order", "relative o(1) as u -> infinity"}};
  r.validity_threshold = kValidityThreshold;
  return r;
}

ApproxResult eec_domain(double cprime, const LKCurvatures& lk, double u) {
  if (std::isinf(cprime)) {
    throw MethodMismatch("C' is infinite (non-smooth field): use the Pickands approximation");
  }
  if (!(cprime > 0.0)) throw InputError("C' must be positive");
  if (std::isnan(u)) throw InputError("level u is NaN");
  if (lk.values.empty()) throw InputError("empty L-K curvature vector");

  ApproxResult r;
  r.u = u;
  r.method = ApproxMethod::kEec;
  r.value = 0.0;
  for (std::size_t j = 0; j < lk.values.size(); ++j) {
    const double L = lk.values[j];
    const double term =
        L == 0.0 ? 0.0 : std::pow(cprime, 0.5 * j) * L * specialfn::ec_density(static_cast<int>(j), u);
    r.terms.push_back({"j=" + std::to_string(j), term});
    r.value += term;
  }
  r.parameters = {{"cprime", cprime}, {"k", static_cast<double>(lk.values.size() - 1)}};
  r.notes = {{"error_order", "o(exp(-alpha0 u^2 - u^2/2)), alpha0 unspecified"}};
  r.validity_threshold = kValidityThreshold;
  return r;
}

ApproxResult eec_sphere(double cprime, int N, double u) {
  auto r = eec_domain(cprime, lk_sphere(N), u);
  r.notes["domain"] = "sphere";
  return r;
}

}  // namespace sphex

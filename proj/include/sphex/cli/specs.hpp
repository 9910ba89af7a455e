#pragma once

#include <string>

#include <json.hpp>

#include "sphex/covariance.hpp"
#include "sphex/geometry.hpp"

namespace sphex::cli {

using nlohmann::json;

inline constexpr const char* kToolName = "sphex";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct ModelSpec {
  int dimension = 2;
  CovarianceModel model;
};

/// Model file schema v1:
///   {"version": 1, "kind": K, "dimension": N, ...}
/// with, per kind,
///   schoenberg, monomial:        "coefficients": [a0, a1, ...]
///   powered-exponential, sine:   "c", "alpha"
///   sfbm:                        "beta"
///   canonical, arccos-linear:    nothing else
/// Unknown keys are rejected. Throws InputError.
ModelSpec parse_model_spec(const json& doc);
ModelSpec load_model_spec(const std::string& path);
json model_to_json(const ModelSpec& spec);

/// Domain specification, inline or as JSON (a file path or a literal
/// starting with '{'):
///   sphere                      {"type": "sphere"}
///   semisphere:K                {"type": "semisphere", "dimension": K}
///   box:a1:b1,a2:b2,...         {"type": "box", "lower": [...], "upper": [...]}
///   cap:R                       {"type": "cap", "radius": R, "center": [...]}
///   custom:K:AREA[:L0;L1;...]   {"type": "custom", "dimension": K, "area": A, "lk": [...]}
/// `sphere` and `cap` take their dimension from `N`; a cap's centre
/// defaults to the last coordinate axis.
SphericalDomain parse_domain(const std::string& spec, int N);
SphericalDomain domain_from_json(const json& doc, int N);
json domain_to_json(const SphericalDomain& domain);

/// Comma-separated list of reals.
std::vector<double> parse_levels(const std::string& csv);

}  // namespace sphex::cli

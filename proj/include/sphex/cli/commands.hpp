#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sphex/approx.hpp"
#include "sphex/cli/specs.hpp"
#include "sphex/mcsim.hpp"
#include "sphex/pickands.hpp"

namespace sphex::cli {

struct ApproxOptions {
  std::string model_path;
  std::string domain = "sphere";
  std::vector<double> levels;
  std::string method = "auto";  // auto, pickands, eec, sfbm
  std::optional<double> pickands_constant;
};

struct SimulateOptions {
  std::string model_path;
  std::vector<double> levels;
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  std::size_t points = 4096;
  std::string scheme = "fibonacci";
  std::string statistic = "sup";  // sup, ec
  std::string csv_path;           // replicate-level rows
};

struct ValidateOptions {
  std::string model_path;
  std::string domain = "sphere";
  std::vector<double> levels;
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  std::size_t points = 4096;
  std::string scheme = "fibonacci";
  std::optional<double> pickands_constant;
  std::string csv_path;  // plot data
};

struct PickandsOptions {
  double alpha = 2.0;
  int dimension = 1;
  double K = 8.0;
  double step = 0.05;
  std::size_t replicates = 10000;
  std::uint64_t seed = 1;
  bool exact = false;
  std::string estimator = "max-over-sum";  // max-over-sum, tail-integral
};

struct CurvatureOptions {
  std::string domain = "sphere";
  int dimension = 2;
};

/// Each command returns the full result envelope.
json run_approx(const ApproxOptions& options);
json run_simulate(const SimulateOptions& options);
json run_validate(const ValidateOptions& options);
json run_pickands(const PickandsOptions& options);
json run_curvatures(const CurvatureOptions& options);

/// The analytic route chosen for a model: "eec", "pickands" or "sfbm".
std::string resolve_method(const ModelSpec& spec, const std::string& requested);

json to_json(const ApproxResult& r);
json to_json(const ExcursionEstimate& e);
json to_json(const PickandsEstimate& e);

/// Results table of an envelope as CSV (one row per result object, columns
/// from the union of scalar fields, sorted).
std::string results_csv(const json& envelope);

}  // namespace sphex::cli

// sphex: excursion probabilities of Gaussian fields on spheres.
//
// Exit codes: 0 success, 2 invalid input, 3 method/model mismatch,
// 4 numerical failure, 1 anything else.

#include <fstream>
#include <iostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "sphex/cli/commands.hpp"
#include "sphex/errors.hpp"

namespace {

using sphex::cli::json;

struct Output {
  std::string path;
  std::string format = "json";
};

void emit(const json& envelope, const Output& out) {
  std::string text;
  if (out.format == "json") {
    text = envelope.dump(2) + "\n";
  } else if (out.format == "csv") {
    text = sphex::cli::results_csv(envelope);
  } else {
    throw sphex::InputError("unknown format '" + out.format + "' (expected json or csv)");
  }
  if (out.path.empty() || out.path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out.path);
  if (!file) throw sphex::InputError("cannot write '" + out.path + "'");
  file << text;
}

void add_output(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Result file (default: stdout)");
  cmd->add_option("--format", out.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Excursion probabilities of Gaussian random fields on spheres"};
  app.require_subcommand(1);
  app.set_version_flag("--version", sphex::cli::kToolVersion);

  Output out;
  std::string levels;
  std::optional<double> pickands_constant;

  sphex::cli::ApproxOptions approx;
  auto* approx_cmd = app.add_subcommand("approx", "Analytic approximations of P{sup X >= u}");
  approx_cmd->add_option("--model", approx.model_path, "Model spec file (JSON)")->required();
  approx_cmd->add_option("--domain", approx.domain, "Domain spec (default: sphere)");
  approx_cmd->add_option("--levels", levels, "Comma-separated levels u")->required();
  approx_cmd->add_option("--method", approx.method, "auto, pickands, eec or sfbm");
  approx_cmd->add_option("--pickands-constant", pickands_constant, "H_alpha for the Pickands and sfbm routes");
  add_output(approx_cmd, out);

  sphex::cli::SimulateOptions simulate;
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo excursion estimates on a point set");
  simulate_cmd->add_option("--model", simulate.model_path, "Model spec file (JSON)")->required();
  simulate_cmd->add_option("--levels", levels, "Comma-separated levels u")->required();
  simulate_cmd->add_option("--replicates", simulate.replicates, "Number of replicates");
  simulate_cmd->add_option("--seed", simulate.seed, "Master seed");
  simulate_cmd->add_option("--points", simulate.points, "Number of points");
  simulate_cmd->add_option("--scheme", simulate.scheme, "fibonacci, latlong or uniform");
  simulate_cmd->add_option("--statistic", simulate.statistic, "sup or ec");
  simulate_cmd->add_option("--csv", simulate.csv_path, "Replicate-level CSV output");
  add_output(simulate_cmd, out);

  sphex::cli::ValidateOptions validate;
  auto* validate_cmd = app.add_subcommand("validate", "Compare analytic values with simulation");
  validate_cmd->add_option("--model", validate.model_path, "Model spec file (JSON)")->required();
  validate_cmd->add_option("--domain", validate.domain, "Domain spec (default: sphere)");
  validate_cmd->add_option("--levels", levels, "Comma-separated levels u")->required();
  validate_cmd->add_option("--replicates", validate.replicates, "Number of replicates");
  validate_cmd->add_option("--seed", validate.seed, "Master seed");
  validate_cmd->add_option("--points", validate.points, "Number of points");
  validate_cmd->add_option("--scheme", validate.scheme, "fibonacci, latlong or uniform");
  validate_cmd->add_option("--pickands-constant", pickands_constant, "H_alpha for the Pickands route");
  validate_cmd->add_option("--csv", validate.csv_path, "Plot-data CSV output");
  add_output(validate_cmd, out);

  sphex::cli::PickandsOptions pickands;
  auto* pickands_cmd = app.add_subcommand("pickands", "Pickands' constant H_alpha");
  pickands_cmd->add_option("--alpha", pickands.alpha, "alpha in (0, 2]");
  pickands_cmd->add_option("--dimension", pickands.dimension, "N");
  pickands_cmd->add_option("--K", pickands.K, "Box size");
  pickands_cmd->add_option("--step", pickands.step, "Grid step");
  pickands_cmd->add_option("--replicates", pickands.replicates, "Number of replicates");
  pickands_cmd->add_option("--seed", pickands.seed, "Master seed");
  pickands_cmd->add_option("--estimator", pickands.estimator, "max-over-sum or tail-integral");
  pickands_cmd->add_flag("--exact", pickands.exact, "Return the exact value (alpha = 2 only)");
  add_output(pickands_cmd, out);

  sphex::cli::CurvatureOptions curvatures;
  auto* curvatures_cmd = app.add_subcommand("curvatures", "Lipschitz-Killing curvatures of a domain");
  curvatures_cmd->add_option("--domain", curvatures.domain, "Domain spec (default: sphere)");
  curvatures_cmd->add_option("--dimension", curvatures.dimension, "N for sphere and cap");
  add_output(curvatures_cmd, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    json envelope;
    if (*approx_cmd) {
      approx.levels = sphex::cli::parse_levels(levels);
      approx.pickands_constant = pickands_constant;
      envelope = sphex::cli::run_approx(approx);
    } else if (*simulate_cmd) {
      simulate.levels = sphex::cli::parse_levels(levels);
      envelope = sphex::cli::run_simulate(simulate);
    } else if (*validate_cmd) {
      validate.levels = sphex::cli::parse_levels(levels);
      validate.pickands_constant = pickands_constant;
      envelope = sphex::cli::run_validate(validate);
    } else if (*pickands_cmd) {
      envelope = sphex::cli::run_pickands(pickands);
    } else {
      envelope = sphex::cli::run_curvatures(curvatures);
    }
    emit(envelope, out);
    return 0;
  } catch (const sphex::MethodMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const sphex::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

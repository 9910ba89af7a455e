#include "sphex/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <fstream>
#include <set>
#include <sstream>

#include "sphex/cli/envelope.hpp"
#include "sphex/errors.hpp"

namespace sphex::cli {

namespace {

void check_levels(const std::vector<double>& levels) {
  if (levels.empty()) throw InputError("at least one level is required (--levels)");
  for (double u : levels) {
    if (!std::isfinite(u)) throw InputError("levels must be finite");
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out.precision(17);
  return out;
}

double pickands_constant_for(double alpha, int N, const std::optional<double>& supplied) {
  if (supplied) {
    if (!(*supplied > 0.0) || !std::isfinite(*supplied)) throw InputError("the Pickands constant must be positive");
    return *supplied;
  }
  if (auto known = pickands_known(alpha, N)) return *known;
  std::ostringstream msg;
  msg << "the Pickands route needs H_alpha for alpha = " << alpha
      << "; pass --pickands-constant (see `sphex pickands` for an estimate)";
  throw InputError(msg.str());
}

ApproxResult approximate(const ModelSpec& spec, const SphericalDomain& domain, const std::string& method,
                         double u, const std::optional<double>& constant) {
  const int N = spec.dimension;
  const int k = domain_dimension(domain);
  if (method == "eec") {
    const auto report = validate_model(spec.model, N);
    if (!report.smooth()) {
      throw MethodMismatch("the expected-Euler-characteristic route needs a smooth model (finite C'); " +
                           model_name(spec.model) + " is not smooth, use --method pickands");
    }
    if (k > N) throw InputError("domain dimension exceeds the model dimension");
    if (std::holds_alternative<FullSphere>(domain)) return eec_sphere(*report.cprime, N, u);
    return eec_domain(*report.cprime, lk_domain(domain), u);
  }
  if (k != N) throw InputError("the domain dimension must equal the model dimension for this route");
  if (method == "sfbm") {
    const auto* sfbm = std::get_if<StandardizedSfbm>(&spec.model);
    if (!sfbm) throw MethodMismatch("the sfbm route needs an sfbm model");
    const auto* box = std::get_if<CoordinateBox>(&domain);
    if (!box) throw MethodMismatch("the sfbm route needs a coordinate box away from the pole");
    return sfbm_pickands(sfbm->beta, *box, N, u, pickands_constant_for(2.0 * sfbm->beta, N, constant));
  }
  if (method == "pickands") {
    const auto local = local_expansion(spec.model, N);
    const double H = pickands_constant_for(local.alpha, N, constant);
    if (const auto* box = std::get_if<CoordinateBox>(&domain)) return chan_lai_box(local, *box, N, u, H);
    return pickands_sphere(local, domain, N, u, H);
  }
  throw InputError("unknown method '" + method + "' (expected auto, pickands, eec or sfbm)");
}

PointSet simulation_points(const std::string& scheme, std::size_t count, int N, std::uint64_t seed) {
  if (count > kMaxSimulationPoints) {
    throw InputError("at most " + std::to_string(kMaxSimulationPoints) + " points can be simulated");
  }
  const auto s = parse_point_scheme(scheme);
  return make_point_set(s, count, N, s == PointScheme::kUniform ? std::optional(seed) : std::nullopt);
}

json base_config(const ModelSpec& spec, const std::vector<double>& levels) {
  return json{{"model", model_to_json(spec)}, {"levels", levels}};
}

}  // namespace

std::string resolve_method(const ModelSpec& spec, const std::string& requested) {
  if (requested != "auto") {
    if (requested != "eec" && requested != "pickands" && requested != "sfbm") {
      throw InputError("unknown method '" + requested + "' (expected auto, pickands, eec or sfbm)");
    }
    return requested;
  }
  if (std::holds_alternative<StandardizedSfbm>(spec.model)) return "sfbm";
  return validate_model(spec.model, spec.dimension).smooth() ? "eec" : "pickands";
}

json to_json(const ApproxResult& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back({{"name", t.name}, {"value", t.value}});
  return {{"u", r.u},
          {"value", r.value},
          {"method", to_string(r.method)},
          {"terms", terms},
          {"parameters", r.parameters},
          {"notes", r.notes},
          {"validity_threshold", r.validity_threshold},
          {"below_validity", r.below_validity()}};
}

json to_json(const ExcursionEstimate& e) {
  return {{"u", e.u},           {"kind", to_string(e.kind)}, {"estimate", e.estimate},
          {"std_error", e.std_error}, {"ci_lo", e.ci_lo},   {"ci_hi", e.ci_hi},
          {"replicates", e.replicates}, {"note", e.note}};
}

json to_json(const PickandsEstimate& e) {
  return {{"alpha", e.alpha},
          {"N", e.N},
          {"K", e.K},
          {"grid_step", e.grid_step},
          {"replicates", e.replicates},
          {"estimator", to_string(e.estimator)},
          {"estimate", e.estimate},
          {"std_error", e.std_error},
          {"rejected", e.rejected},
          {"diagnostics", e.diagnostics}};
}

json run_approx(const ApproxOptions& options) {
  check_levels(options.levels);
  const auto spec = load_model_spec(options.model_path);
  const auto domain = parse_domain(options.domain, spec.dimension);
  const auto method = resolve_method(spec, options.method);
  json results = json::array();
  for (double u : options.levels) {
    results.push_back(to_json(approximate(spec, domain, method, u, options.pickands_constant)));
  }
  json config = base_config(spec, options.levels);
  config["domain"] = domain_to_json(domain);
  config["method"] = options.method;
  config["resolved_method"] = method;
  if (options.pickands_constant) config["pickands_constant"] = *options.pickands_constant;
  return make_envelope("approx", config, results);
}

json run_simulate(const SimulateOptions& options) {
  check_levels(options.levels);
  if (options.replicates < 1) throw InputError("replicates must be at least 1");
  const auto spec = load_model_spec(options.model_path);
  const int N = spec.dimension;
  const auto normalized = normalize(spec.model, N);
  const auto points = simulation_points(options.scheme, options.points, N, options.seed);
  const FieldSampler sampler(normalized.model, points);

  ReplicateData data;
  std::vector<ExcursionEstimate> estimates;
  if (options.statistic == "sup") {
    estimates = empirical_excursion(sampler, options.levels, options.replicates, options.seed, &data);
  } else if (options.statistic == "ec") {
    if (N != 2) throw InputError("the ec statistic needs N = 2");
    if (!validate_model(normalized.model, N).smooth()) {
      throw MethodMismatch("the ec statistic needs a smooth model (finite C')");
    }
    const auto tri = triangulate(points);
    estimates = mean_euler_characteristic(sampler, tri, options.levels, options.replicates, options.seed, &data);
  } else {
    throw InputError("unknown statistic '" + options.statistic + "' (expected sup or ec)");
  }

  json results = json::array();
  const bool smooth = validate_model(normalized.model, N).smooth();
  for (const auto& e : estimates) {
    json r = to_json(e);
    if (!smooth) r["note"] = e.note + "; non-smooth model: grid-sup bias is severe, compare trends only";
    results.push_back(r);
  }

  if (!options.csv_path.empty()) {
    auto out = open_output(options.csv_path);
    const char* column = options.statistic == "sup" ? "sup" : "chi";
    out << "replicate,seed," << column << ",u\n";
    for (std::size_t k = 0; k < options.levels.size(); ++k) {
      const auto& values = data.values[options.statistic == "sup" ? 0 : k];
      for (std::size_t r = 0; r < values.size(); ++r) {
        out << r << ',' << data.seeds[r] << ',' << values[r] << ',' << options.levels[k] << '\n';
      }
    }
  }

  json config = base_config(spec, options.levels);
  config["replicates"] = options.replicates;
  config["seed"] = options.seed;
  config["points"] = options.points;
  config["scheme"] = options.scheme;
  config["statistic"] = options.statistic;
  config["factorization"] = {{"method", sampler.gaussian().info().method},
                             {"rank", sampler.gaussian().info().rank},
                             {"jitter", sampler.gaussian().info().jitter}};
  config["warnings"] = normalized.warnings;
  return make_envelope("simulate", config, results);
}

json run_validate(const ValidateOptions& options) {
  check_levels(options.levels);
  const auto spec = load_model_spec(options.model_path);
  const int N = spec.dimension;
  const auto domain = parse_domain(options.domain, N);
  if (!std::holds_alternative<FullSphere>(domain)) {
    throw MethodMismatch("validate simulates the full sphere only; use approx for other domains");
  }
  const auto method = resolve_method(spec, "auto");
  const auto normalized = normalize(spec.model, N);
  const bool smooth = validate_model(normalized.model, N).smooth();
  const auto points = simulation_points(options.scheme, options.points, N, options.seed);
  const FieldSampler sampler(normalized.model, points);
  const auto sups = empirical_excursion(sampler, options.levels, options.replicates, options.seed);
  std::vector<ExcursionEstimate> chis;
  if (smooth && N == 2) {
    const auto tri = triangulate(points);
    chis = mean_euler_characteristic(sampler, tri, options.levels, options.replicates, options.seed);
  }

  json results = json::array();
  std::ostringstream plot;
  plot.precision(17);
  plot << "u,statistic,analytic,empirical,ci_lo,ci_hi\n";
  for (std::size_t k = 0; k < options.levels.size(); ++k) {
    const double u = options.levels[k];
    const auto analytic = approximate(spec, domain, method, u, options.pickands_constant);
    const auto& s = sups[k];
    json row{{"u", u}, {"analytic", analytic.value}, {"analytic_method", method}};
    json sup{{"estimate", s.estimate}, {"std_error", s.std_error}, {"ci_lo", s.ci_lo}, {"ci_hi", s.ci_hi},
             {"note", s.note}};
    sup["z"] = s.std_error > 0.0 ? json((s.estimate - analytic.value) / s.std_error) : json(nullptr);
    sup["comparison"] = smooth ? "asymptotic approximation vs grid sup" : "trend-only";
    row["sup"] = sup;
    plot << u << ",sup," << analytic.value << ',' << s.estimate << ',' << s.ci_lo << ',' << s.ci_hi << '\n';
    if (!chis.empty()) {
      const auto& c = chis[k];
      const double expected = eec_sphere(*validate_model(normalized.model, N).cprime, N, u).value;
      json ec{{"expected", expected}, {"estimate", c.estimate}, {"std_error", c.std_error},
              {"ci_lo", c.ci_lo},     {"ci_hi", c.ci_hi},       {"note", c.note}};
      ec["z"] = c.std_error > 0.0 ? json((c.estimate - expected) / c.std_error) : json(nullptr);
      ec["comparison"] = "exact expectation vs mesh Euler characteristic";
      row["ec"] = ec;
      plot << u << ",ec," << expected << ',' << c.estimate << ',' << c.ci_lo << ',' << c.ci_hi << '\n';
    }
    results.push_back(row);
  }
  if (!options.csv_path.empty()) open_output(options.csv_path) << plot.str();

  json config = base_config(spec, options.levels);
  config["domain"] = domain_to_json(domain);
  config["replicates"] = options.replicates;
  config["seed"] = options.seed;
  config["points"] = options.points;
  config["scheme"] = options.scheme;
  if (options.pickands_constant) config["pickands_constant"] = *options.pickands_constant;
  config["warnings"] = normalized.warnings;
  return make_envelope("validate", config, results);
}

json run_pickands(const PickandsOptions& options) {
  if (!(options.alpha > 0.0 && options.alpha <= 2.0)) throw InputError("alpha must lie in (0, 2]");
  if (options.dimension < 1) throw InputError("dimension must be at least 1");
  json config{{"alpha", options.alpha}, {"dimension", options.dimension}, {"exact", options.exact}};
  json results = json::array();
  const auto known = pickands_known(options.alpha, options.dimension);
  if (options.exact) {
    if (!known) throw InputError("no exact Pickands constant is known for this alpha; drop --exact to estimate");
    results.push_back({{"alpha", options.alpha}, {"N", options.dimension}, {"estimate", *known},
                       {"std_error", 0.0}, {"exact", true}});
    return make_envelope("pickands", config, results);
  }
  PickandsEstimator estimator;
  if (options.estimator == "max-over-sum") {
    estimator = PickandsEstimator::kMaxOverSum;
  } else if (options.estimator == "tail-integral") {
    estimator = PickandsEstimator::kTailIntegral;
  } else {
    throw InputError("unknown estimator '" + options.estimator + "' (expected max-over-sum or tail-integral)");
  }
  const auto est = estimate_pickands(options.alpha, options.K, options.step, options.replicates, options.seed,
                                     estimator, options.dimension);
  json r = to_json(est);
  r["exact"] = false;
  if (known) {
    r["known_value"] = *known;
    r["relative_error"] = (est.estimate - *known) / *known;
  }
  results.push_back(r);
  config["K"] = options.K;
  config["step"] = options.step;
  config["replicates"] = options.replicates;
  config["seed"] = options.seed;
  config["estimator"] = options.estimator;
  return make_envelope("pickands", config, results);
}

json run_curvatures(const CurvatureOptions& options) {
  const auto domain = parse_domain(options.domain, options.dimension);
  const auto lk = lk_domain(domain);
  json results = json::array();
  results.push_back({{"domain", domain_to_json(domain)}, {"lk", lk.values}});
  return make_envelope("curvatures", json{{"domain", domain_to_json(domain)}}, results);
}

std::string results_csv(const json& envelope) {
  // Scalars become columns; numeric arrays become key_0, key_1, ...
  std::vector<std::map<std::string, json>> rows;
  std::set<std::string> columns;
  for (const auto& r : envelope.at("results")) {
    std::map<std::string, json> row;
    for (const auto& [key, value] : r.items()) {
      if (value.is_primitive()) {
        row[key] = value;
      } else if (value.is_array() && std::all_of(value.begin(), value.end(), [](const json& v) { return v.is_number(); })) {
        for (std::size_t i = 0; i < value.size(); ++i) row[key + "_" + std::to_string(i)] = value[i];
      }
    }
    for (const auto& [key, value] : row) columns.insert(key);
    rows.push_back(std::move(row));
  }
  std::ostringstream out;
  bool first = true;
  for (const auto& c : columns) {
    out << (first ? "" : ",") << c;
    first = false;
  }
  out << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& c : columns) {
      out << (first ? "" : ",");
      first = false;
      auto it = row.find(c);
      if (it == row.end() || it->second.is_null()) continue;
      if (it->second.is_string()) {
        std::string s = it->second.get<std::string>();
        if (s.find_first_of(",\"\n") != std::string::npos) {
          std::string quoted = "\"";
          for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
          s = quoted + "\"";
        }
        out << s;
      } else {
        out << it->second.dump();
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace sphex::cli

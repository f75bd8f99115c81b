#include "nwv/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nwv/pointer_wv.hpp"

namespace nwv {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

std::string join_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

const json& require(const json& j, const std::string& parent,
                    const char* key) {
  if (!j.contains(key)) fail(join_path(parent, key), "missing required field");
  return j.at(key);
}

void check_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void check_known_keys(const json& j, const std::string& path,
                      std::initializer_list<const char*> keys) {
  for (const auto& item : j.items()) {
    const bool known =
        std::any_of(keys.begin(), keys.end(),
                    [&](const char* k) { return item.key() == k; });
    if (!known) fail(join_path(path, item.key()), "unknown field");
  }
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "expected a finite number");
  return v;
}

int as_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::int64_t as_int64(const json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_uint64(const json& j, const std::string& path) {
  if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() &&
                                 j.get<std::int64_t>() < 0)) {
    fail(path, "expected a nonnegative integer");
  }
  return j.get<std::uint64_t>();
}

Complex as_complex(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) {
    fail(path, "expected a [re, im] pair");
  }
  return {as_number(j.at(0), path + "[0]"), as_number(j.at(1), path + "[1]")};
}

std::vector<double> as_number_list(const json& j, const std::string& path,
                                   int expected_size) {
  if (!j.is_array()) fail(path, "expected an array");
  if (static_cast<int>(j.size()) != expected_size) {
    std::ostringstream msg;
    msg << "expected " << expected_size << " entries, got " << j.size();
    fail(path, msg.str());
  }
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    out.push_back(as_number(j.at(k), path + "[" + std::to_string(k) + "]"));
  }
  return out;
}

StateVector parse_state(const json& j, const std::string& path, int dim) {
  if (!j.is_array()) fail(path, "expected an array of [re, im] pairs");
  if (static_cast<int>(j.size()) != dim) {
    std::ostringstream msg;
    msg << "expected " << dim << " amplitudes, got " << j.size();
    fail(path, msg.str());
  }
  std::vector<Complex> amps;
  amps.reserve(j.size());
  for (std::size_t k = 0; k < j.size(); ++k) {
    amps.push_back(as_complex(j.at(k), path + "[" + std::to_string(k) + "]"));
  }
  try {
    return StateVector::normalized(amps);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

PartialCollapseConfig parse_tunneling(const json& root, int dim,
                                      std::vector<double> phases) {
  const json& j = require(root, "", "tunneling");
  check_object(j, "tunneling");
  check_known_keys(j, "tunneling", {"probs", "rates", "time"});
  const bool has_probs = j.contains("probs");
  const bool has_rates = j.contains("rates");
  if (has_probs == has_rates) {
    fail("tunneling", "exactly one of 'probs' or 'rates' must be given");
  }
  try {
    if (has_probs) {
      if (j.contains("time")) {
        fail("tunneling.time", "only valid together with 'rates'");
      }
      return PartialCollapseConfig(
          as_number_list(j.at("probs"), "tunneling.probs", dim),
          std::move(phases));
    }
    const double time =
        as_number(require(j, "tunneling", "time"), "tunneling.time");
    return PartialCollapseConfig::from_rates(
        as_number_list(j.at("rates"), "tunneling.rates", dim), time,
        std::move(phases));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    fail("tunneling", e.what());
  }
}

Unitary parse_unitary(const json& root, int dim,
                      std::optional<double>& qubit_gamma) {
  const json& j = require(root, "", "unitary");
  check_object(j, "unitary");
  check_known_keys(j, "unitary", {"qubit_gamma", "matrix"});
  const bool has_gamma = j.contains("qubit_gamma");
  const bool has_matrix = j.contains("matrix");
  if (has_gamma == has_matrix) {
    fail("unitary", "exactly one of 'qubit_gamma' or 'matrix' must be given");
  }
  if (has_gamma) {
    if (dim != 2) fail("unitary.qubit_gamma", "only valid for dim = 2");
    const double gamma = as_number(j.at("qubit_gamma"), "unitary.qubit_gamma");
    qubit_gamma = gamma;
    return qubit_rotation(gamma);
  }
  const json& m = j.at("matrix");
  if (!m.is_array() || static_cast<int>(m.size()) != dim) {
    fail("unitary.matrix", "expected " + std::to_string(dim) + " rows");
  }
  CMatrix matrix(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = m.at(static_cast<std::size_t>(r));
    const std::string row_path =
        "unitary.matrix[" + std::to_string(r) + "]";
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      fail(row_path, "expected " + std::to_string(dim) + " entries");
    }
    for (int c = 0; c < dim; ++c) {
      matrix(r, c) = as_complex(row.at(static_cast<std::size_t>(c)),
                                row_path + "[" + std::to_string(c) + "]");
    }
  }
  try {
    return Unitary(std::move(matrix));
  } catch (const Error& e) {
    fail("unitary.matrix", e.what());
  }
}

CalibrationSpec parse_calibration(const json& root, int dim) {
  const json& j = require(root, "", "calibration");
  check_object(j, "calibration");
  check_known_keys(j, "calibration", {"mode", "level", "k", "scale", "offset"});
  const json& mode = require(j, "calibration", "mode");
  if (!mode.is_string()) fail("calibration.mode", "expected a string");
  const std::string kind = mode.get<std::string>();

  CalibrationSpec spec;
  if (kind == "dominant") {
    spec.kind = CalibrationSpec::Kind::kDominant;
    spec.index = as_int(require(j, "calibration", "level"), "calibration.level");
    if (spec.index < 0 || spec.index >= dim) {
      fail("calibration.level", "index out of range for dim " +
                                    std::to_string(dim));
    }
  } else if (kind == "subspace") {
    spec.kind = CalibrationSpec::Kind::kSubspace;
    spec.index = as_int(require(j, "calibration", "k"), "calibration.k");
    if (spec.index < 0 || spec.index >= dim - 1) {
      fail("calibration.k", "must satisfy 0 <= k < dim - 1");
    }
  } else if (kind == "explicit") {
    spec.kind = CalibrationSpec::Kind::kExplicit;
    spec.scale = as_number(require(j, "calibration", "scale"),
                           "calibration.scale");
    if (spec.scale == 0.0) fail("calibration.scale", "must be nonzero");
    spec.offset =
        j.contains("offset") ? as_number(j.at("offset"), "calibration.offset")
                             : 0.0;
  } else {
    fail("calibration.mode", "expected 'dominant', 'subspace' or 'explicit'");
  }
  return spec;
}

SweepSpec parse_sweep(const json& j, int dim, bool has_qubit_gamma) {
  check_object(j, "sweep");
  check_known_keys(j, "sweep", {"parameter", "from", "to", "steps"});
  SweepSpec spec;
  const json& parameter = require(j, "sweep", "parameter");
  if (!parameter.is_string() || parameter.get<std::string>() != "gamma") {
    fail("sweep.parameter", "only 'gamma' sweeps are supported");
  }
  spec.parameter = "gamma";
  if (!has_qubit_gamma || dim != 2) {
    fail("sweep", "only valid with a qubit_gamma unitary");
  }
  spec.from = as_number(require(j, "sweep", "from"), "sweep.from");
  spec.to = as_number(require(j, "sweep", "to"), "sweep.to");
  spec.steps = as_int(require(j, "sweep", "steps"), "sweep.steps");
  if (spec.steps < 1) fail("sweep.steps", "must be >= 1");
  return spec;
}

MonteCarloSpec parse_montecarlo(const json& j) {
  check_object(j, "montecarlo");
  check_known_keys(j, "montecarlo", {"n_samples", "seed"});
  MonteCarloSpec spec;
  spec.n_samples = as_int64(require(j, "montecarlo", "n_samples"),
                            "montecarlo.n_samples");
  if (spec.n_samples < 1) fail("montecarlo.n_samples", "must be >= 1");
  spec.seed = j.contains("seed") ? as_uint64(j.at("seed"), "montecarlo.seed")
                                 : 0;
  return spec;
}

OutputFormat parse_format(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected 'csv' or 'json'");
  const std::string v = j.get<std::string>();
  if (v == "csv") return OutputFormat::kCsv;
  if (v == "json") return OutputFormat::kJson;
  fail(path, "expected 'csv' or 'json'");
}

OutputSpec parse_outputs(const json& j) {
  check_object(j, "outputs");
  check_known_keys(j, "outputs", {"format", "path"});
  OutputSpec spec;
  spec.format =
      parse_format(require(j, "outputs", "format"), "outputs.format");
  const json& path = require(j, "outputs", "path");
  if (!path.is_string()) fail("outputs.path", "expected a string");
  spec.path = path.get<std::string>();
  if (spec.path.empty()) fail("outputs.path", "must not be empty");
  return spec;
}

// 17 significant digits: enough to reproduce any double exactly.
std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::string format_optional(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void append_probabilities(ordered_json& j, const ProtocolProbabilities& p) {
  j["p_click1"] = p.p_click1;
  j["p_null1"] = p.p_null1;
  j["p_nofail_given_null"] = p.p_nofail_given_null;
  j["p_postselect_total"] = p.p_postselect_total;
  j["p_click1_given_postselect"] = p.p_click1_given_postselect;
}

void append_probabilities_csv(std::ostringstream& out, const std::string& prefix,
                              const ProtocolProbabilities& p) {
  out << prefix << "p_click1," << format_double(p.p_click1) << "\n";
  out << prefix << "p_null1," << format_double(p.p_null1) << "\n";
  out << prefix << "p_nofail_given_null,"
      << format_double(p.p_nofail_given_null) << "\n";
  out << prefix << "p_postselect_total,"
      << format_double(p.p_postselect_total) << "\n";
  out << prefix << "p_click1_given_postselect,"
      << format_double(p.p_click1_given_postselect) << "\n";
}

}  // namespace

Calibration resolve_calibration(const CalibrationSpec& spec,
                                const PartialCollapseConfig& tunneling) {
  switch (spec.kind) {
    case CalibrationSpec::Kind::kDominant:
      return calibration_for(tunneling, DominantState{spec.index});
    case CalibrationSpec::Kind::kSubspace:
      return calibration_for(tunneling, Subspace{spec.index});
    case CalibrationSpec::Kind::kExplicit:
      return Calibration{spec.scale, spec.offset};
  }
  throw DomainError("unknown calibration kind");
}

ExperimentConfig parse_config(const json& j) {
  check_object(j, "(config)");
  check_known_keys(j, "",
                   {"dim", "initial_state", "tunneling", "phases", "unitary",
                    "postselect_index", "calibration", "sweep", "montecarlo",
                    "outputs"});

  const int dim = as_int(require(j, "", "dim"), "dim");
  if (dim < 2) fail("dim", "must be >= 2");

  std::vector<double> phases;
  if (j.contains("phases")) {
    phases = as_number_list(j.at("phases"), "phases", dim);
  }

  StateVector initial_state =
      parse_state(require(j, "", "initial_state"), "initial_state", dim);
  PartialCollapseConfig tunneling = parse_tunneling(j, dim, std::move(phases));

  std::optional<double> qubit_gamma;
  Unitary unitary = parse_unitary(j, dim, qubit_gamma);

  const int postselect_index = as_int(require(j, "", "postselect_index"),
                                      "postselect_index");
  if (postselect_index < 0 || postselect_index >= dim) {
    fail("postselect_index", "index out of range for dim " +
                                 std::to_string(dim));
  }

  CalibrationSpec calibration = parse_calibration(j, dim);
  try {
    resolve_calibration(calibration, tunneling);
  } catch (const Error& e) {
    fail("calibration", e.what());
  }

  ExperimentConfig config{
      dim,
      std::move(initial_state),
      std::move(tunneling),
      std::move(unitary),
      qubit_gamma,
      postselect_index,
      calibration,
      std::nullopt,
      std::nullopt,
      std::nullopt,
  };
  if (j.contains("sweep")) {
    config.sweep = parse_sweep(j.at("sweep"), dim, qubit_gamma.has_value());
  }
  if (j.contains("montecarlo")) {
    config.montecarlo = parse_montecarlo(j.at("montecarlo"));
  }
  if (j.contains("outputs")) {
    config.outputs = parse_outputs(j.at("outputs"));
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file '" + path + "'");
  }
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": invalid JSON: " + e.what());
  }
  try {
    return parse_config(j);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

ordered_json config_to_json(const ExperimentConfig& config) {
  ordered_json j;
  j["dim"] = config.dim;
  ordered_json amps = ordered_json::array();
  for (int m = 0; m < config.dim; ++m) {
    const Complex a = config.initial_state.amplitude(m);
    amps.push_back({a.real(), a.imag()});
  }
  j["initial_state"] = std::move(amps);
  j["tunneling"] = {{"probs", config.tunneling.probs()}};
  j["phases"] = config.tunneling.phases();
  if (config.qubit_gamma) {
    j["unitary"] = {{"qubit_gamma", *config.qubit_gamma}};
  } else {
    ordered_json rows = ordered_json::array();
    for (int r = 0; r < config.dim; ++r) {
      ordered_json row = ordered_json::array();
      for (int c = 0; c < config.dim; ++c) {
        const Complex u = config.unitary.matrix()(r, c);
        row.push_back({u.real(), u.imag()});
      }
      rows.push_back(std::move(row));
    }
    j["unitary"] = {{"matrix", std::move(rows)}};
  }
  j["postselect_index"] = config.postselect_index;
  switch (config.calibration.kind) {
    case CalibrationSpec::Kind::kDominant:
      j["calibration"] = {{"mode", "dominant"}, {"level", config.calibration.index}};
      break;
    case CalibrationSpec::Kind::kSubspace:
      j["calibration"] = {{"mode", "subspace"}, {"k", config.calibration.index}};
      break;
    case CalibrationSpec::Kind::kExplicit:
      j["calibration"] = {{"mode", "explicit"},
                          {"scale", config.calibration.scale},
                          {"offset", config.calibration.offset}};
      break;
  }
  if (config.sweep) {
    j["sweep"] = {{"parameter", config.sweep->parameter},
                  {"from", config.sweep->from},
                  {"to", config.sweep->to},
                  {"steps", config.sweep->steps}};
  }
  if (config.montecarlo) {
    j["montecarlo"] = {{"n_samples", config.montecarlo->n_samples},
                       {"seed", config.montecarlo->seed}};
  }
  if (config.outputs) {
    j["outputs"] = {
        {"format",
         config.outputs->format == OutputFormat::kCsv ? "csv" : "json"},
        {"path", config.outputs->path}};
  }
  return j;
}

namespace {

double grid_gamma(const SweepSpec& spec, int k) {
  if (spec.steps == 1) return spec.from;
  return spec.from + (spec.to - spec.from) *
                         (static_cast<double>(k) /
                          static_cast<double>(spec.steps - 1));
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const RunOptions& options) {
  if (!config.sweep) {
    throw ConfigError("sweep: block required to run a sweep");
  }
  if (config.dim != 2 || !config.qubit_gamma) {
    throw ConfigError("sweep: only valid with a qubit_gamma unitary");
  }
  const Calibration cal =
      resolve_calibration(config.calibration, config.tunneling);
  const Observable system_obs = cal.system_observable(config.tunneling);
  const StateVector no_click_state =
      StateVector::basis(2, 1 - config.postselect_index);

  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(config.sweep->steps));
  for (int k = 0; k < config.sweep->steps; ++k) {
    SweepRow row;
    row.gamma = grid_gamma(*config.sweep, k);
    const Unitary U = qubit_rotation(row.gamma);
    const StateVector f = apply_unitary(U.adjoint(), no_click_state);
    const double overlap = std::abs(inner(f, config.initial_state));
    row.diverged = overlap < kSweepDivergenceFloor;

    const NwvResult result = nwv_exact(config.tunneling, cal,
                                       config.initial_state, U,
                                       config.postselect_index);
    row.nwv_exact = result.nwv_exact;
    row.p_click1 = result.probabilities.p_click1;
    row.p_postselect_total = result.probabilities.p_postselect_total;

    if (!row.diverged) {
      const Complex wv = standard_wv(system_obs, config.initial_state, f);
      row.wv_re = wv.real();
      row.wv_im = wv.imag();
      row.nwv_weak_limit = nwv_weak_limit_qubit(config.initial_state, f);
    }

    if (config.montecarlo) {
      const std::uint64_t seed =
          options.seed_override.value_or(config.montecarlo->seed);
      const EstimateWithError estimate = estimate_nwv(
          config.tunneling, cal, config.initial_state, U,
          config.postselect_index, config.montecarlo->n_samples,
          derive_seed(seed, static_cast<std::uint64_t>(k)), options.jobs);
      row.mc_estimate = estimate.value;
      row.mc_std_error = estimate.std_error;
    }
    rows.push_back(row);
  }
  return rows;
}

DiscriminationReport run_discrimination(const ExperimentConfig& reference,
                                        const ExperimentConfig& perturbed,
                                        const RunOptions& options) {
  std::vector<std::string> diffs;
  if (reference.dim != perturbed.dim) diffs.push_back("dim");
  if (reference.tunneling.probs() != perturbed.tunneling.probs()) {
    diffs.push_back("tunneling.probs");
  }
  if (reference.tunneling.phases() != perturbed.tunneling.phases()) {
    diffs.push_back("phases");
  }
  if (reference.dim == perturbed.dim &&
      !reference.unitary.matrix()
           .cwiseEqual(perturbed.unitary.matrix())
           .all()) {
    diffs.push_back("unitary");
  }
  if (reference.postselect_index != perturbed.postselect_index) {
    diffs.push_back("postselect_index");
  }
  const CalibrationSpec& ca = reference.calibration;
  const CalibrationSpec& cb = perturbed.calibration;
  if (ca.kind != cb.kind || ca.index != cb.index || ca.scale != cb.scale ||
      ca.offset != cb.offset) {
    diffs.push_back("calibration");
  }
  if (!diffs.empty()) {
    std::string joined;
    for (const std::string& d : diffs) {
      if (!joined.empty()) joined += ", ";
      joined += d;
    }
    throw ConfigMismatch(
        "configs must differ only in initial_state; differing fields: " +
        joined);
  }

  const Calibration cal =
      resolve_calibration(reference.calibration, reference.tunneling);

  DiscriminationReport report;
  report.reference =
      run_analytic(reference.tunneling, reference.initial_state,
                   reference.unitary, reference.postselect_index);
  report.perturbed =
      run_analytic(reference.tunneling, perturbed.initial_state,
                   reference.unitary, reference.postselect_index);
  report.s_tilde = report.perturbed.p_click1_given_postselect -
                   report.reference.p_click1_given_postselect;
  report.s_tilde_calibrated = report.s_tilde / cal.scale;
  report.nwv_reference = cal.apply(report.reference.p_click1_given_postselect);
  report.nwv_perturbed = cal.apply(report.perturbed.p_click1_given_postselect);

  if (reference.montecarlo) {
    DiscriminationReport::MonteCarlo mc;
    mc.n_samples = reference.montecarlo->n_samples;
    mc.seed = options.seed_override.value_or(reference.montecarlo->seed);
    mc.reference = estimate_conditional(
        reference.tunneling, reference.initial_state, reference.unitary,
        reference.postselect_index, mc.n_samples, derive_seed(mc.seed, 0),
        options.jobs);
    mc.perturbed = estimate_conditional(
        reference.tunneling, perturbed.initial_state, reference.unitary,
        reference.postselect_index, mc.n_samples, derive_seed(mc.seed, 1),
        options.jobs);
    mc.s_tilde = mc.perturbed.value - mc.reference.value;
    mc.std_error = std::hypot(mc.reference.std_error, mc.perturbed.std_error);
    report.montecarlo = mc;
  }
  return report;
}

TrajectoriesReport run_trajectories(const ExperimentConfig& config,
                                    const RunOptions& options) {
  if (!config.montecarlo) {
    throw ConfigError("montecarlo: block required to run trajectories");
  }
  const Calibration cal =
      resolve_calibration(config.calibration, config.tunneling);

  TrajectoriesReport report;
  const NwvResult result =
      nwv_exact(config.tunneling, cal, config.initial_state, config.unitary,
                config.postselect_index);
  report.analytic = result.probabilities;
  report.nwv_exact = result.nwv_exact;
  report.nwv_weak_limit = result.nwv_weak_limit;
  report.n_samples = config.montecarlo->n_samples;
  report.seed = options.seed_override.value_or(config.montecarlo->seed);
  report.conditional = estimate_conditional(
      config.tunneling, config.initial_state, config.unitary,
      config.postselect_index, report.n_samples, report.seed, options.jobs);
  report.nwv = report.conditional;
  report.nwv.value = cal.apply(report.conditional.value);
  report.nwv.std_error = report.conditional.std_error / std::abs(cal.scale);
  return report;
}

const char* const kSweepCsvHeader =
    "gamma,wv_re,wv_im,nwv_weak_limit,nwv_exact,p_click1,p_postselect_total,"
    "mc_estimate,mc_std_error,diverged";

std::string rows_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepCsvHeader << "\n";
  for (const SweepRow& row : rows) {
    out << format_double(row.gamma) << ',' << format_optional(row.wv_re) << ','
        << format_optional(row.wv_im) << ','
        << format_optional(row.nwv_weak_limit) << ','
        << format_double(row.nwv_exact) << ',' << format_double(row.p_click1)
        << ',' << format_double(row.p_postselect_total) << ','
        << format_optional(row.mc_estimate) << ','
        << format_optional(row.mc_std_error) << ','
        << (row.diverged ? "true" : "false") << "\n";
  }
  return out.str();
}

namespace {

ordered_json optional_to_json(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

}  // namespace

ordered_json rows_to_json(const std::vector<SweepRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const SweepRow& row : rows) {
    ordered_json j;
    j["gamma"] = row.gamma;
    j["wv_re"] = optional_to_json(row.wv_re);
    j["wv_im"] = optional_to_json(row.wv_im);
    j["nwv_weak_limit"] = optional_to_json(row.nwv_weak_limit);
    j["nwv_exact"] = row.nwv_exact;
    j["p_click1"] = row.p_click1;
    j["p_postselect_total"] = row.p_postselect_total;
    j["mc_estimate"] = optional_to_json(row.mc_estimate);
    j["mc_std_error"] = optional_to_json(row.mc_std_error);
    j["diverged"] = row.diverged;
    out.push_back(std::move(j));
  }
  return out;
}

std::string discrimination_to_csv(const DiscriminationReport& report) {
  std::ostringstream out;
  out << "key,value\n";
  out << "s_tilde," << format_double(report.s_tilde) << "\n";
  out << "s_tilde_calibrated," << format_double(report.s_tilde_calibrated)
      << "\n";
  append_probabilities_csv(out, "reference_", report.reference);
  out << "reference_nwv_exact," << format_double(report.nwv_reference) << "\n";
  append_probabilities_csv(out, "perturbed_", report.perturbed);
  out << "perturbed_nwv_exact," << format_double(report.nwv_perturbed) << "\n";
  if (report.montecarlo) {
    const auto& mc = *report.montecarlo;
    out << "mc_n_samples," << mc.n_samples << "\n";
    out << "mc_seed," << mc.seed << "\n";
    out << "mc_reference_estimate," << format_double(mc.reference.value)
        << "\n";
    out << "mc_reference_std_error," << format_double(mc.reference.std_error)
        << "\n";
    out << "mc_reference_n_conditioning," << mc.reference.n_conditioning
        << "\n";
    out << "mc_perturbed_estimate," << format_double(mc.perturbed.value)
        << "\n";
    out << "mc_perturbed_std_error," << format_double(mc.perturbed.std_error)
        << "\n";
    out << "mc_perturbed_n_conditioning," << mc.perturbed.n_conditioning
        << "\n";
    out << "mc_s_tilde," << format_double(mc.s_tilde) << "\n";
    out << "mc_s_tilde_std_error," << format_double(mc.std_error) << "\n";
  }
  return out.str();
}

ordered_json discrimination_to_json(const DiscriminationReport& report) {
  ordered_json j;
  j["s_tilde"] = report.s_tilde;
  j["s_tilde_calibrated"] = report.s_tilde_calibrated;
  ordered_json reference;
  append_probabilities(reference, report.reference);
  reference["nwv_exact"] = report.nwv_reference;
  j["reference"] = std::move(reference);
  ordered_json perturbed;
  append_probabilities(perturbed, report.perturbed);
  perturbed["nwv_exact"] = report.nwv_perturbed;
  j["perturbed"] = std::move(perturbed);
  if (report.montecarlo) {
    const auto& mc = *report.montecarlo;
    ordered_json m;
    m["n_samples"] = mc.n_samples;
    m["seed"] = mc.seed;
    m["reference"] = {{"value", mc.reference.value},
                      {"std_error", mc.reference.std_error},
                      {"n_conditioning", mc.reference.n_conditioning}};
    m["perturbed"] = {{"value", mc.perturbed.value},
                      {"std_error", mc.perturbed.std_error},
                      {"n_conditioning", mc.perturbed.n_conditioning}};
    m["s_tilde"] = mc.s_tilde;
    m["std_error"] = mc.std_error;
    j["montecarlo"] = std::move(m);
  }
  return j;
}

std::string trajectories_to_csv(const TrajectoriesReport& report) {
  std::ostringstream out;
  out << "key,value\n";
  append_probabilities_csv(out, "", report.analytic);
  out << "nwv_exact," << format_double(report.nwv_exact) << "\n";
  out << "nwv_weak_limit," << format_optional(report.nwv_weak_limit) << "\n";
  out << "mc_n_samples," << report.n_samples << "\n";
  out << "mc_seed," << report.seed << "\n";
  out << "mc_conditional," << format_double(report.conditional.value) << "\n";
  out << "mc_conditional_std_error,"
      << format_double(report.conditional.std_error) << "\n";
  out << "mc_n_conditioning," << report.conditional.n_conditioning << "\n";
  out << "mc_nwv," << format_double(report.nwv.value) << "\n";
  out << "mc_nwv_std_error," << format_double(report.nwv.std_error) << "\n";
  return out.str();
}

ordered_json trajectories_to_json(const TrajectoriesReport& report) {
  ordered_json j;
  ordered_json analytic;
  append_probabilities(analytic, report.analytic);
  analytic["nwv_exact"] = report.nwv_exact;
  analytic["nwv_weak_limit"] = optional_to_json(report.nwv_weak_limit);
  j["analytic"] = std::move(analytic);
  j["montecarlo"] = {
      {"n_samples", report.n_samples},
      {"seed", report.seed},
      {"conditional",
       {{"value", report.conditional.value},
        {"std_error", report.conditional.std_error},
        {"n_conditioning", report.conditional.n_conditioning}}},
      {"nwv",
       {{"value", report.nwv.value}, {"std_error", report.nwv.std_error}}}};
  return j;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw IoError("cannot open '" + path + "' for writing");
  }
  out << content;
  out.flush();
  if (!out) {
    throw IoError("failed writing to '" + path + "'");
  }
}

std::string render_json(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

void emit(const std::vector<SweepRow>& rows, OutputFormat format,
          const std::string& path) {
  write_file(path, format == OutputFormat::kCsv
                       ? rows_to_csv(rows)
                       : render_json(rows_to_json(rows)));
}

void emit(const DiscriminationReport& report, OutputFormat format,
          const std::string& path) {
  write_file(path, format == OutputFormat::kCsv
                       ? discrimination_to_csv(report)
                       : render_json(discrimination_to_json(report)));
}

void emit(const TrajectoriesReport& report, OutputFormat format,
          const std::string& path) {
  write_file(path, format == OutputFormat::kCsv
                       ? trajectories_to_csv(report)
                       : render_json(trajectories_to_json(report)));
}

}  // namespace nwv

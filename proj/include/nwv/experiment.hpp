#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nwv/nwv_protocol.hpp"
#include "nwv/trajectory.hpp"

namespace nwv {

/// Rows whose effective postselection overlap falls below this magnitude are
/// flagged as divergence points instead of being evaluated.
inline constexpr double kSweepDivergenceFloor = 1e-9;

struct SweepSpec {
  std::string parameter;  // only "gamma" is supported
  double from = 0.0;
  double to = 0.0;
  int steps = 1;
};

struct MonteCarloSpec {
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

enum class OutputFormat { kCsv, kJson };

struct OutputSpec {
  OutputFormat format = OutputFormat::kCsv;
  std::string path;
};

/// How the calibration was specified; resolved against the tunneling
/// probabilities on demand.
struct CalibrationSpec {
  enum class Kind { kDominant, kSubspace, kExplicit };
  Kind kind = Kind::kExplicit;
  int index = 0;         // level (dominant) or subspace boundary k
  double scale = 1.0;    // explicit mode only
  double offset = 0.0;   // explicit mode only
};

Calibration resolve_calibration(const CalibrationSpec& spec,
                                const PartialCollapseConfig& tunneling);

/// One fully validated experiment description.
struct ExperimentConfig {
  int dim;
  StateVector initial_state;
  PartialCollapseConfig tunneling;
  Unitary unitary;
  std::optional<double> qubit_gamma;  // set when the unitary was given as an angle
  int postselect_index;
  CalibrationSpec calibration;
  std::optional<SweepSpec> sweep;
  std::optional<MonteCarloSpec> montecarlo;
  std::optional<OutputSpec> outputs;
};

/// Parses and validates a config. Throws ConfigError whose message names the
/// offending JSON field path.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);

/// Canonical serialization; parse(config_to_json(c)) reproduces c.
nlohmann::ordered_json config_to_json(const ExperimentConfig& config);

/// Command-line overrides applied on top of a config.
struct RunOptions {
  std::optional<std::uint64_t> seed_override;
  int jobs = 1;
};

struct SweepRow {
  double gamma = 0.0;
  std::optional<double> wv_re;
  std::optional<double> wv_im;
  std::optional<double> nwv_weak_limit;
  double nwv_exact = 0.0;
  double p_click1 = 0.0;
  double p_postselect_total = 0.0;
  std::optional<double> mc_estimate;
  std::optional<double> mc_std_error;
  bool diverged = false;
};

/// Evaluates the postselection-angle sweep: per row the standard weak value
/// of the calibrated observable, the weak-partial-collapse limit, the exact
/// null weak value, the run probabilities, and (when configured) a Monte
/// Carlo estimate. Rows with near-orthogonal effective postselection are
/// flagged `diverged` and their weak-value columns omitted.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                const RunOptions& options = {});

struct DiscriminationReport {
  struct MonteCarlo {
    EstimateWithError reference;
    EstimateWithError perturbed;
    double s_tilde = 0.0;
    double std_error = 0.0;  // quadrature sum of the two standard errors
    std::int64_t n_samples = 0;
    std::uint64_t seed = 0;
  };

  double s_tilde = 0.0;  // P(click1 | pass)_delta - P(click1 | pass)_0
  double s_tilde_calibrated = 0.0;
  ProtocolProbabilities reference;
  ProtocolProbabilities perturbed;
  double nwv_reference = 0.0;
  double nwv_perturbed = 0.0;
  std::optional<MonteCarlo> montecarlo;
};

/// Runs the two-state discrimination protocol. The configs must agree on all
/// shared parameters (everything except the initial state); violations raise
/// ConfigMismatch listing the differing fields. Monte Carlo settings are
/// taken from the reference config.
DiscriminationReport run_discrimination(const ExperimentConfig& reference,
                                        const ExperimentConfig& perturbed,
                                        const RunOptions& options = {});

struct TrajectoriesReport {
  ProtocolProbabilities analytic;
  double nwv_exact = 0.0;
  std::optional<double> nwv_weak_limit;
  EstimateWithError conditional;
  EstimateWithError nwv;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Monte Carlo estimation run for a single config (requires a montecarlo
/// block). Output depends only on the config and seed, never on the degree
/// of parallelism.
TrajectoriesReport run_trajectories(const ExperimentConfig& config,
                                    const RunOptions& options = {});

/// Serializers. CSV floats use 17 significant digits (round-trip exact);
/// optional values render as empty cells / JSON null.
std::string rows_to_csv(const std::vector<SweepRow>& rows);
nlohmann::ordered_json rows_to_json(const std::vector<SweepRow>& rows);
std::string discrimination_to_csv(const DiscriminationReport& report);
nlohmann::ordered_json discrimination_to_json(const DiscriminationReport& report);
std::string trajectories_to_csv(const TrajectoriesReport& report);
nlohmann::ordered_json trajectories_to_json(const TrajectoriesReport& report);

/// Renders to the requested format and writes to path (IoError on failure).
void emit(const std::vector<SweepRow>& rows, OutputFormat format,
          const std::string& path);
void emit(const DiscriminationReport& report, OutputFormat format,
          const std::string& path);
void emit(const TrajectoriesReport& report, OutputFormat format,
          const std::string& path);

/// Exact CSV column header of the sweep table.
extern const char* const kSweepCsvHeader;

}  // namespace nwv

// Command-line harness for the conditional-measurement protocol toolkit:
// analytic postselection-angle sweeps, two-state discrimination reports, and
// Monte Carlo trajectory estimation, driven by JSON configs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nwv/experiment.hpp"
#include "nwv/log.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct CommonFlags {
  std::string out_path;
  std::string format;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out_path, "Output file path (default: stdout)");
  cmd->add_option("--format", flags.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--seed", flags.seed,
                  "Override the montecarlo seed from the config");
  cmd->add_option("--jobs", flags.jobs, "Worker threads for Monte Carlo runs")
      ->check(CLI::PositiveNumber);
}

nwv::RunOptions run_options(const CommonFlags& flags) {
  nwv::RunOptions options;
  options.seed_override = flags.seed;
  options.jobs = flags.jobs;
  return options;
}

// Resolution order: --format / --out beat the config's outputs block; with no
// path anywhere the rendered table goes to stdout.
struct ResolvedOutput {
  nwv::OutputFormat format = nwv::OutputFormat::kCsv;
  std::string path;  // empty: stdout
};

ResolvedOutput resolve_output(const CommonFlags& flags,
                              const nwv::ExperimentConfig& config,
                              nwv::OutputFormat default_format) {
  ResolvedOutput out;
  out.format = default_format;
  if (config.outputs) {
    out.format = config.outputs->format;
    out.path = config.outputs->path;
  }
  if (!flags.format.empty()) {
    out.format = flags.format == "csv" ? nwv::OutputFormat::kCsv
                                       : nwv::OutputFormat::kJson;
  }
  if (!flags.out_path.empty()) {
    out.path = flags.out_path;
  }
  return out;
}

template <typename Report>
void deliver(const Report& report, const ResolvedOutput& out,
             const std::string& csv,
             const nlohmann::ordered_json& json_value) {
  if (out.path.empty()) {
    if (out.format == nwv::OutputFormat::kCsv) {
      std::cout << csv;
    } else {
      std::cout << json_value.dump(2) << "\n";
    }
    return;
  }
  nwv::emit(report, out.format, out.path);
  nwv::log_info("wrote " + out.path);
}

int run_sweep_command(const std::string& config_path,
                      const CommonFlags& flags) {
  const nwv::ExperimentConfig config = nwv::load_config(config_path);
  const auto rows = nwv::run_sweep(config, run_options(flags));
  const ResolvedOutput out =
      resolve_output(flags, config, nwv::OutputFormat::kCsv);
  deliver(rows, out, nwv::rows_to_csv(rows), nwv::rows_to_json(rows));
  return kExitOk;
}

int run_discriminate_command(const std::string& reference_path,
                             const std::string& perturbed_path,
                             const CommonFlags& flags) {
  const nwv::ExperimentConfig reference = nwv::load_config(reference_path);
  const nwv::ExperimentConfig perturbed = nwv::load_config(perturbed_path);
  const auto report =
      nwv::run_discrimination(reference, perturbed, run_options(flags));
  const ResolvedOutput out =
      resolve_output(flags, reference, nwv::OutputFormat::kJson);
  deliver(report, out, nwv::discrimination_to_csv(report),
          nwv::discrimination_to_json(report));
  return kExitOk;
}

int run_trajectories_command(const std::string& config_path,
                             const CommonFlags& flags) {
  const nwv::ExperimentConfig config = nwv::load_config(config_path);
  const auto report = nwv::run_trajectories(config, run_options(flags));
  const ResolvedOutput out =
      resolve_output(flags, config, nwv::OutputFormat::kJson);
  deliver(report, out, nwv::trajectories_to_csv(report),
          nwv::trajectories_to_json(report));
  return kExitOk;
}

int run_validate_command(const std::string& config_path) {
  nwv::load_config(config_path);
  std::cout << config_path << ": OK\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulator for two-step conditional quantum measurement "
               "protocols: standard weak values and null weak values"};
  app.require_subcommand(1);

  std::string config_path;
  std::string reference_path;
  std::string perturbed_path;
  CommonFlags flags;

  CLI::App* sweep =
      app.add_subcommand("sweep", "Postselection-angle sweep table");
  sweep->add_option("config", config_path, "Experiment config (JSON)")
      ->required();
  add_common_flags(sweep, flags);

  CLI::App* discriminate = app.add_subcommand(
      "discriminate", "Two-state discrimination signal report");
  discriminate
      ->add_option("reference", reference_path,
                   "Reference-state config (JSON)")
      ->required();
  discriminate
      ->add_option("perturbed", perturbed_path,
                   "Perturbed-state config (JSON)")
      ->required();
  add_common_flags(discriminate, flags);

  CLI::App* trajectories = app.add_subcommand(
      "trajectories", "Monte Carlo trajectory estimation run");
  trajectories->add_option("config", config_path, "Experiment config (JSON)")
      ->required();
  add_common_flags(trajectories, flags);

  CLI::App* validate =
      app.add_subcommand("validate", "Validate a config and exit");
  validate->add_option("config", config_path, "Experiment config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help
    }
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (sweep->parsed()) return run_sweep_command(config_path, flags);
    if (discriminate->parsed()) {
      return run_discriminate_command(reference_path, perturbed_path, flags);
    }
    if (trajectories->parsed()) {
      return run_trajectories_command(config_path, flags);
    }
    return run_validate_command(config_path);
  } catch (const nwv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nwv::ConfigMismatch& e) {
    std::cerr << "config mismatch: " << e.what() << "\n";
    return kExitConfig;
  } catch (const nwv::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const nwv::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

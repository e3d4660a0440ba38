#pragma once

// Experiment driver behind the command line tool.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace mqw {

enum class Task { simulate, spectrum, verify_point, verify_aev, verify_stability, verify_all };
enum class OutputFormat { json, csv };

/// Input error tied to one configuration field.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

struct ExperimentConfig {
  int n = 1;
  /// grover | hadamard-partition | fourier | identity | random
  std::string coin = "grover";
  std::optional<std::filesystem::path> coin_file;
  /// Coin dimension for `random`; 0 means n+1.
  int coin_dim = 0;
  /// null | random | comma separated phases
  std::string nu = "null";
  std::optional<std::filesystem::path> potential_file;
  int samples = 5;
  std::uint64_t seed = 0;
  Task task = Task::verify_all;
  int steps = 0;
  /// vertex:<mask>[:<coin>] | uniform:<mask> | eigen:<mask>[:<coin>]
  std::string initial = "vertex:0";
  std::optional<std::filesystem::path> out;
  OutputFormat format = OutputFormat::json;
  double tol_spectrum = 1e-8;
  double tol_construct = 1e-12;
};

Task parse_task(const std::string& name);
std::string task_name(Task task);
OutputFormat parse_format(const std::string& name);

/// Reads the keys of ExperimentConfig (same names as the command line flags,
/// with dashes) from a JSON object. Unknown keys are rejected.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& config);

struct RunResult {
  /// 0 all checks passed, 1 a check failed, 2 input error.
  int exit_code = 0;
  std::string report;
  std::string diagnostic;
};

/// Runs the experiment and renders the report. Never throws for input
/// problems; those come back as exit code 2 with a diagnostic.
RunResult run(const ExperimentConfig& config);

/// run() followed by an atomic write of the report to config.out (stdout
/// when unset). Nothing is written on exit code 2.
int run_and_write(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

}  // namespace mqw

#pragma once

// Command-line front end: configuration parsing (flags and JSON config
// files) and deterministic CSV/JSON output of traces, sweeps and thresholds.

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "chshdyn/integrator.hpp"
#include "chshdyn/sweep.hpp"

namespace chshdyn::cli {

enum class Command { trace, sweep, threshold };
enum class OutputFormat { csv, json };

struct RunConfig {
  Command command = Command::sweep;
  Model model = Model::analytic;
  double S = 10.0;
  double r1 = 0.4;  ///< trace only
  double gammaS = 0.0;  ///< gammaS / gamma0
  double tauMax = 20.0;
  int tauSteps = 2000;
  double r1Min = 0.01;
  double r1Max = 0.99;
  int r1Steps = 99;
  IntegratorConfig integrator;
  int fockCutoff = 1;
  double bracketLow = 0.0;   ///< threshold bracket, units of gamma0
  double bracketHigh = 0.5;
  std::string outPath;  ///< empty: standard output
  OutputFormat format = OutputFormat::csv;

  SweepGrid grid() const;
  SweepSetup setup() const;

  /// Throws ConfigError naming the offending key.
  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

struct ParsedArgs {
  RunConfig config;
  bool dumpConfig = false;
  bool helpShown = false;
};

/// Defaults, then the --config file, then flags. Throws ConfigError.
ParsedArgs parse_config(const std::vector<std::string>& args);

nlohmann::json to_json(const RunConfig& config);

/// Applies the keys present in `j` on top of `base`; unknown keys are rejected.
RunConfig apply_json(const nlohmann::json& j, RunConfig base);

std::string command_name(Command c);
std::string format_name(OutputFormat f);

/// Writes the output for a validated config to `out`. Throws ConfigError or
/// NumericalError.
void write_output(const RunConfig& config, std::ostream& out);

/// Full pipeline with exit codes: 0 success, 1 numerical failure, 2 configuration error.
int run(const RunConfig& config, std::ostream& err);
int main_entry(int argc, const char* const* argv);

}  // namespace chshdyn::cli

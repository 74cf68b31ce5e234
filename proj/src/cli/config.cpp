#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "chshdyn/cli.hpp"
#include "chshdyn/errors.hpp"
#include "chshdyn/pseudomode.hpp"

namespace chshdyn::cli {

using nlohmann::json;

namespace {

Command parse_command(const std::string& s) {
  if (s == "trace") return Command::trace;
  if (s == "sweep") return Command::sweep;
  if (s == "threshold") return Command::threshold;
  throw ConfigError("command: unknown command '" + s + "' (expected trace, sweep or threshold)");
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::csv;
  if (s == "json") return OutputFormat::json;
  throw ConfigError("format: unknown format '" + s + "' (expected csv or json)");
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

template <class T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(key + ": wrong value type in config file");
  }
}

// Defaults for the threshold r1 grid when none is given explicitly.
constexpr double kThresholdR1Min = 0.05;
constexpr double kThresholdR1Max = 0.95;
constexpr int kThresholdR1Steps = 19;

}  // namespace

std::string command_name(Command c) {
  switch (c) {
    case Command::trace: return "trace";
    case Command::sweep: return "sweep";
    case Command::threshold: return "threshold";
  }
  return "?";
}

std::string format_name(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

SweepGrid RunConfig::grid() const {
  SweepGrid g;
  g.tauMax = tauMax;
  g.tauSteps = tauSteps;
  g.r1Values = SweepGrid::uniform_r1(r1Min, r1Max, r1Steps);
  return g;
}

SweepSetup RunConfig::setup() const {
  SweepSetup s;
  s.model = model;
  s.S = S;
  s.gammaS_over_gamma0 = gammaS;
  s.integrator = integrator;
  s.fockCutoff = fockCutoff;
  return s;
}

void RunConfig::validate() const {
  require(std::isfinite(S) && S > 0.0, "S", "must be > 0");
  require(std::isfinite(r1) && r1 >= 0.0 && r1 <= 1.0, "r1", "must lie in [0, 1]");
  require(std::isfinite(gammaS) && gammaS >= 0.0, "gammaS", "must be >= 0");
  require(std::isfinite(tauMax) && tauMax > 0.0, "tau-max", "must be > 0");
  require(tauSteps >= 2, "tau-steps", "must be >= 2");
  require(r1Min > 0.0 && r1Min < 1.0, "r1-min", "must lie strictly inside (0, 1)");
  require(r1Max > 0.0 && r1Max < 1.0, "r1-max", "must lie strictly inside (0, 1)");
  require(r1Steps >= 1, "r1-steps", "must be >= 1");
  require(r1Steps == 1 || r1Max > r1Min, "r1-max", "must exceed r1-min");
  require(std::isfinite(integrator.relTol) && integrator.relTol >= 1e-14, "rel-tol", "must be >= 1e-14");
  require(std::isfinite(integrator.absTol) && integrator.absTol > 0.0, "abs_tol", "must be > 0");
  require(std::isfinite(integrator.maxStep) && integrator.maxStep > 0.0, "max_step", "must be > 0");
  require(std::isfinite(integrator.initialStep) && integrator.initialStep > 0.0, "initial_step",
          "must be > 0");
  require(fockCutoff >= 1 && fockCutoff <= kMaxFockCutoff, "fock-cutoff",
          "must lie in [1, " + std::to_string(kMaxFockCutoff) + "]");
  require(bracketLow >= 0.0 && bracketHigh > bracketLow, "bracket_low",
          "threshold bracket must satisfy 0 <= low < high");
  if (model == Model::analytic) {
    require(gammaS == 0.0, "gammaS", "the analytic model has no spontaneous emission; use --model lindblad");
  }
  if (command == Command::threshold) {
    require(model == Model::lindblad, "model", "the threshold search needs the lindblad model");
    require(format == OutputFormat::json, "format", "threshold output is json");
  } else {
    require(format == OutputFormat::csv, "format", command_name(command) + " output is csv");
  }
}

json to_json(const RunConfig& c) {
  return json{{"command", command_name(c.command)},
              {"model", std::string(model_name(c.model))},
              {"S", c.S},
              {"r1", c.r1},
              {"gammaS", c.gammaS},
              {"tau_max", c.tauMax},
              {"tau_steps", c.tauSteps},
              {"r1_min", c.r1Min},
              {"r1_max", c.r1Max},
              {"r1_steps", c.r1Steps},
              {"rel_tol", c.integrator.relTol},
              {"abs_tol", c.integrator.absTol},
              {"max_step", c.integrator.maxStep},
              {"initial_step", c.integrator.initialStep},
              {"fock_cutoff", c.fockCutoff},
              {"bracket_low", c.bracketLow},
              {"bracket_high", c.bracketHigh},
              {"out", c.outPath},
              {"format", format_name(c.format)}};
}

RunConfig apply_json(const json& j, RunConfig c) {
  if (!j.is_object()) throw ConfigError("config: top level must be a JSON object");
  static const std::set<std::string> known{
      "command", "model",   "S",        "r1",           "gammaS",      "tau_max",     "tau_steps",
      "r1_min",  "r1_max",  "r1_steps", "rel_tol",      "abs_tol",     "max_step",    "initial_step",
      "fock_cutoff", "bracket_low", "bracket_high", "out", "format"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) throw ConfigError(key + ": unknown config key");
  }
  if (j.contains("command")) c.command = parse_command(get_as<std::string>(j, "command"));
  if (j.contains("model")) c.model = parse_model(get_as<std::string>(j, "model"));
  if (j.contains("S")) c.S = get_as<double>(j, "S");
  if (j.contains("r1")) c.r1 = get_as<double>(j, "r1");
  if (j.contains("gammaS")) c.gammaS = get_as<double>(j, "gammaS");
  if (j.contains("tau_max")) c.tauMax = get_as<double>(j, "tau_max");
  if (j.contains("tau_steps")) c.tauSteps = get_as<int>(j, "tau_steps");
  if (j.contains("r1_min")) c.r1Min = get_as<double>(j, "r1_min");
  if (j.contains("r1_max")) c.r1Max = get_as<double>(j, "r1_max");
  if (j.contains("r1_steps")) c.r1Steps = get_as<int>(j, "r1_steps");
  if (j.contains("rel_tol")) c.integrator.relTol = get_as<double>(j, "rel_tol");
  if (j.contains("abs_tol")) c.integrator.absTol = get_as<double>(j, "abs_tol");
  if (j.contains("max_step")) c.integrator.maxStep = get_as<double>(j, "max_step");
  if (j.contains("initial_step")) c.integrator.initialStep = get_as<double>(j, "initial_step");
  if (j.contains("fock_cutoff")) c.fockCutoff = get_as<int>(j, "fock_cutoff");
  if (j.contains("bracket_low")) c.bracketLow = get_as<double>(j, "bracket_low");
  if (j.contains("bracket_high")) c.bracketHigh = get_as<double>(j, "bracket_high");
  if (j.contains("out")) c.outPath = get_as<std::string>(j, "out");
  if (j.contains("format")) c.format = parse_format(get_as<std::string>(j, "format"));
  return c;
}

ParsedArgs parse_config(const std::vector<std::string>& args) {
  CLI::App app{"CHSH violation dynamics of two qubits in a common lossy-cavity reservoir", "chshdyn"};
  app.require_subcommand(0, 1);

  std::string model, format, out, configPath;
  double S = 0, r1 = 0, gammaS = 0, tauMax = 0, r1Min = 0, r1Max = 0, relTol = 0;
  int tauSteps = 0, r1Steps = 0, fock = 0;
  bool dump = false;

  CLI::Option* oModel = app.add_option("--model", model, "analytic | lindblad");
  CLI::Option* oS = app.add_option("--S", S, "coupling strength R / lambda");
  CLI::Option* oR1 = app.add_option("--r1", r1, "relative coupling of qubit 1 (trace)");
  CLI::Option* oGamma = app.add_option("--gammaS", gammaS, "spontaneous emission rate / gamma0");
  CLI::Option* oTauMax = app.add_option("--tau-max", tauMax, "end of the scaled-time grid");
  CLI::Option* oTauSteps = app.add_option("--tau-steps", tauSteps, "number of tau intervals");
  CLI::Option* oR1Min = app.add_option("--r1-min", r1Min, "first r1 grid value");
  CLI::Option* oR1Max = app.add_option("--r1-max", r1Max, "last r1 grid value");
  CLI::Option* oR1Steps = app.add_option("--r1-steps", r1Steps, "number of r1 grid values");
  CLI::Option* oRelTol = app.add_option("--rel-tol", relTol, "integrator relative tolerance");
  CLI::Option* oFock = app.add_option("--fock-cutoff", fock, "cavity photon-number cutoff");
  CLI::Option* oOut = app.add_option("--out", out, "output file (default: stdout)");
  CLI::Option* oFormat = app.add_option("--format", format, "csv | json");
  CLI::Option* oConfig = app.add_option("--config", configPath, "JSON config file");
  app.add_flag("--dump-config", dump, "print the resolved config as JSON and exit");

  CLI::App* subs[] = {
      app.add_subcommand("trace", "B(tau) at fixed r1")->fallthrough(),
      app.add_subcommand("sweep", "B over the (tau, r1) grid")->fallthrough(),
      app.add_subcommand("threshold", "spontaneous-emission threshold")->fallthrough(),
  };

  std::vector<std::string> rev(args.rbegin(), args.rend());
  ParsedArgs parsed;
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    parsed.helpShown = true;
    return parsed;
  } catch (const CLI::ParseError& e) {
    throw ConfigError(std::string("command line: ") + e.what());
  }

  RunConfig c;
  bool commandGiven = false;
  bool gridGiven = false;
  bool formatGiven = false;
  bool modelGiven = false;
  if (oConfig->count() > 0) {
    std::ifstream in(configPath);
    if (!in) throw ConfigError("config: cannot open '" + configPath + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ConfigError("config: " + std::string(e.what()));
    }
    c = apply_json(j, c);
    commandGiven = j.contains("command");
    gridGiven = j.contains("r1_min") || j.contains("r1_max") || j.contains("r1_steps");
    formatGiven = j.contains("format");
    modelGiven = j.contains("model");
  }
  for (CLI::App* sub : subs) {
    if (sub->parsed()) {
      c.command = parse_command(sub->get_name());
      commandGiven = true;
    }
  }
  if (!commandGiven && !dump) throw ConfigError("command: one of trace, sweep, threshold is required");

  if (oModel->count()) c.model = parse_model(model);
  if (oS->count()) c.S = S;
  if (oR1->count()) c.r1 = r1;
  if (oGamma->count()) c.gammaS = gammaS;
  if (oTauMax->count()) c.tauMax = tauMax;
  if (oTauSteps->count()) c.tauSteps = tauSteps;
  if (oR1Min->count()) c.r1Min = r1Min;
  if (oR1Max->count()) c.r1Max = r1Max;
  if (oR1Steps->count()) c.r1Steps = r1Steps;
  if (oRelTol->count()) c.integrator.relTol = relTol;
  if (oFock->count()) c.fockCutoff = fock;
  if (oOut->count()) c.outPath = out;
  if (oFormat->count()) c.format = parse_format(format);
  gridGiven = gridGiven || oR1Min->count() || oR1Max->count() || oR1Steps->count();
  formatGiven = formatGiven || oFormat->count();
  modelGiven = modelGiven || oModel->count();

  if (c.command == Command::threshold) {
    if (!gridGiven) {
      c.r1Min = kThresholdR1Min;
      c.r1Max = kThresholdR1Max;
      c.r1Steps = kThresholdR1Steps;
    }
    if (!formatGiven) c.format = OutputFormat::json;
    if (!modelGiven) c.model = Model::lindblad;
  }
  c.validate();
  parsed.config = c;
  parsed.dumpConfig = dump;
  return parsed;
}

}  // namespace chshdyn::cli

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "chshdyn/cli.hpp"
#include "chshdyn/errors.hpp"

namespace chshdyn::cli {

namespace {

// 17 significant digits: round-trips every double, independent of locale.
std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_trace(const RunConfig& c, std::ostream& out) {
  const SweepGrid grid = c.grid();
  const std::vector<double> taus = grid.taus();
  const std::vector<double> b = bell_series(c.setup(), c.r1, taus);
  out << "tau,B,violation\n";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out << fmt(taus[i]) << ',' << fmt(b[i]) << ',' << fmt(std::max(0.0, b[i] - 2.0)) << '\n';
  }
}

void write_sweep(const RunConfig& c, std::ostream& out) {
  const std::vector<SweepRow> rows = sweep(c.setup(), c.grid());
  out << "tau,r1,B,violation\n";
  for (const SweepRow& r : rows) {
    out << fmt(r.tau) << ',' << fmt(r.r1) << ',' << fmt(r.B) << ',' << fmt(r.violation) << '\n';
  }
}

void write_threshold(const RunConfig& c, std::ostream& out) {
  const ThresholdResult res = find_threshold(c.setup(), c.grid(), c.bracketLow, c.bracketHigh);
  const nlohmann::json j{{"gamma_star_over_gamma0", res.gammaStarOverGamma0},
                         {"bracket_width", res.bracketWidthOverGamma0},
                         {"grid",
                          {{"tau_max", c.tauMax},
                           {"tau_steps", c.tauSteps},
                           {"r1_min", c.r1Min},
                           {"r1_max", c.r1Max},
                           {"r1_steps", c.r1Steps}}}};
  out << j.dump(2) << '\n';
}

}  // namespace

void write_output(const RunConfig& config, std::ostream& out) {
  config.validate();
  switch (config.command) {
    case Command::trace: write_trace(config, out); break;
    case Command::sweep: write_sweep(config, out); break;
    case Command::threshold: write_threshold(config, out); break;
  }
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    // compute fully before touching the output file
    std::ostringstream buffer;
    write_output(config, buffer);
    if (config.outPath.empty()) {
      std::cout << buffer.str();
      std::cout.flush();
    } else {
      std::ofstream file(config.outPath, std::ios::binary | std::ios::trunc);
      if (!file) throw ConfigError("out: cannot open '" + config.outPath + "' for writing");
      file << buffer.str();
      if (!file.flush()) throw ConfigError("out: write to '" + config.outPath + "' failed");
    }
    return 0;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 1;
  }
}

int main_entry(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  ParsedArgs parsed;
  try {
    parsed = parse_config(args);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  }
  if (parsed.helpShown) return 0;
  if (parsed.dumpConfig) {
    std::cout << to_json(parsed.config).dump(2) << '\n';
    return 0;
  }
  return run(parsed.config, std::cerr);
}

}  // namespace chshdyn::cli

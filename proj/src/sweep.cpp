#include "chshdyn/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>

#include "chshdyn/bell.hpp"
#include "chshdyn/pseudomode.hpp"

namespace chshdyn {

namespace {

struct PointModel {
  DerivedParams params;
  DecayConfig decay;
};

PointModel point_model(const SweepSetup& setup, double r1) {
  const Regime regime = params_from_regime(setup.S, r1, setup.gammaS_over_gamma0);
  return {derive_params(regime.coupling, regime.reservoir, regime.decay), regime.decay};
}

void check_analytic_applicable(const SweepSetup& setup) {
  if (setup.model == Model::analytic && setup.gammaS_over_gamma0 != 0.0) {
    throw ConfigError("the analytic model has no spontaneous emission; use the lindblad model");
  }
}

// Runs fn(i) for i in [0, count) on a small pool. The first failure by index
// is rethrown after all workers finish.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  std::vector<std::exception_ptr> errors(count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::mutex m;
    std::size_t next = 0;
    auto worker = [&] {
      for (;;) {
        std::size_t i;
        {
          std::lock_guard lock(m);
          if (next >= count) return;
          i = next++;
        }
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

std::string_view model_name(Model m) { return m == Model::analytic ? "analytic" : "lindblad"; }

Model parse_model(std::string_view name) {
  if (name == "analytic") return Model::analytic;
  if (name == "lindblad") return Model::lindblad;
  throw ConfigError("unknown model '" + std::string(name) + "' (expected analytic or lindblad)");
}

std::vector<double> SweepGrid::taus() const {
  std::vector<double> t(static_cast<std::size_t>(tauSteps) + 1);
  for (int i = 0; i <= tauSteps; ++i) t[static_cast<std::size_t>(i)] = tauMax * i / tauSteps;
  return t;
}

void SweepGrid::validate() const {
  if (!(std::isfinite(tauMax) && tauMax > 0.0)) throw ConfigError("tau-max must be > 0");
  if (tauSteps < 2) throw ConfigError("tau-steps must be >= 2");
  if (r1Values.empty()) throw ConfigError("r1 grid is empty");
  for (std::size_t i = 0; i < r1Values.size(); ++i) {
    const double r = r1Values[i];
    if (!(r > 0.0 && r < 1.0)) throw ConfigError("r1 grid values must lie strictly inside (0, 1)");
    if (i > 0 && !(r > r1Values[i - 1])) throw ConfigError("r1 grid must be strictly ascending");
  }
}

std::vector<double> SweepGrid::uniform_r1(double lo, double hi, int count) {
  if (count < 1) throw ConfigError("r1-steps must be >= 1");
  if (count == 1) return {lo};
  std::vector<double> v(static_cast<std::size_t>(count));
  const double n = count - 1;
  for (int i = 0; i < count; ++i) v[static_cast<std::size_t>(i)] = (lo * (n - i) + hi * i) / n;
  v.front() = lo;
  v.back() = hi;
  return v;
}

std::vector<double> bell_series(const SweepSetup& setup, double r1, std::span<const double> taus) {
  check_analytic_applicable(setup);
  const PointModel pm = point_model(setup, r1);
  if (setup.model == Model::analytic) {
    return AnalyticModel(pm.params, setup.psi0).bell_series(taus);
  }

  const GeneratorSpec gen = build_generator(pm.params, pm.decay, setup.fockCutoff);
  const FullState initial = initial_state(setup.psi0, setup.fockCutoff);
  std::vector<FullState> states;
  try {
    states = evolve(initial, gen, pm.params.lambda, taus, setup.integrator);
  } catch (const IntegrationError& e) {
    std::ostringstream msg;
    msg << e.what() << " (r1=" << r1 << ")";
    throw SweepError(msg.str(), e.tau_reached(), r1);
  } catch (const NumericalError& e) {
    std::ostringstream msg;
    msg << e.what() << " (r1=" << r1 << ")";
    throw SweepError(msg.str(), std::nan(""), r1);
  }
  std::vector<double> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) out[i] = chsh_max(reduce_qubits(states[i])).B;
  return out;
}

std::function<double(double)> continuous_bell(const SweepSetup& setup, double r1, double tauMax) {
  check_analytic_applicable(setup);
  const PointModel pm = point_model(setup, r1);
  if (setup.model == Model::analytic) {
    auto model = std::make_shared<AnalyticModel>(pm.params, setup.psi0);
    return [model](double tau) { return chsh_max_xstate(model->state(tau)).B; };
  }
  const GeneratorSpec gen = build_generator(pm.params, pm.decay, setup.fockCutoff);
  auto traj = std::make_shared<DenseTrajectory>(
      evolve_dense(initial_state(setup.psi0, setup.fockCutoff), gen, pm.params.lambda, tauMax,
                   setup.integrator));
  const int cutoff = setup.fockCutoff;
  return [traj, cutoff](double tau) {
    return chsh_max(reduce_qubits(state_from_flat(traj->evaluate(tau), cutoff))).B;
  };
}

std::vector<SweepRow> sweep(const SweepSetup& setup, const SweepGrid& grid, unsigned workers) {
  grid.validate();
  check_analytic_applicable(setup);
  const std::vector<double> taus = grid.taus();
  const std::size_t nt = taus.size();
  std::vector<SweepRow> rows(grid.r1Values.size() * nt);
  parallel_for(grid.r1Values.size(), workers, [&](std::size_t k) {
    const double r1 = grid.r1Values[k];
    const std::vector<double> b = bell_series(setup, r1, taus);
    for (std::size_t i = 0; i < nt; ++i) {
      rows[k * nt + i] = {taus[i], r1, b[i], std::max(0.0, b[i] - 2.0)};
    }
  });
  return rows;
}

ViolationIntervals violation_intervals(std::span<const double> taus, std::span<const double> B,
                                       const std::function<double(double)>& model) {
  if (taus.size() != B.size()) throw ConfigError("violation_intervals: length mismatch");
  ViolationIntervals out;
  if (taus.empty()) return out;

  constexpr double level = 2.0 + kViolationTolerance;
  auto crossing = [&](std::size_t i) {
    double lo = taus[i - 1], hi = taus[i];
    const bool lo_inside = B[i - 1] > level;
    if (!model) {
      const double f0 = B[i - 1] - level, f1 = B[i] - level;
      return lo + (hi - lo) * f0 / (f0 - f1);
    }
    while (hi - lo > kIntervalResolution) {
      const double mid = 0.5 * (lo + hi);
      if ((model(mid) > level) == lo_inside) lo = mid;
      else hi = mid;
    }
    return 0.5 * (lo + hi);
  };

  bool inside = B[0] > level;
  double start = taus[0];
  for (std::size_t i = 1; i < taus.size(); ++i) {
    const bool now = B[i] > level;
    if (now == inside) continue;
    const double t = crossing(i);
    if (inside) out.intervals.emplace_back(start, t);
    else start = t;
    inside = now;
  }
  if (inside) out.intervals.emplace_back(start, taus.back());

  std::erase_if(out.intervals, [](const auto& iv) { return iv.second - iv.first < kIntervalResolution; });
  return out;
}

int count_revivals(const ViolationIntervals& intervals) {
  return intervals.size() <= 1 ? 0 : static_cast<int>(intervals.size()) - 1;
}

MaxViolation max_violation(std::span<const SweepRow> rows) {
  if (rows.empty()) throw ConfigError("max_violation: no rows");
  const SweepRow* best = &rows.front();
  for (const SweepRow& r : rows) {
    if (r.B > best->B || (r.B == best->B && (r.tau < best->tau || (r.tau == best->tau && r.r1 < best->r1)))) {
      best = &r;
    }
  }
  return {best->B, best->tau, best->r1};
}

double grid_max_violation(const SweepSetup& setup, const SweepGrid& grid, double gammaS_over_gamma0,
                          unsigned workers) {
  grid.validate();
  SweepSetup s = setup;
  s.model = Model::lindblad;
  s.gammaS_over_gamma0 = gammaS_over_gamma0;
  const std::vector<double> taus = grid.taus();
  std::vector<double> per_r1(grid.r1Values.size());
  parallel_for(grid.r1Values.size(), workers, [&](std::size_t k) {
    const std::vector<double> b = bell_series(s, grid.r1Values[k], taus);
    per_r1[k] = *std::max_element(b.begin(), b.end()) - 2.0;
  });
  return *std::max_element(per_r1.begin(), per_r1.end());
}

ThresholdResult find_threshold(const SweepSetup& setup, const SweepGrid& grid, double lowRatio,
                               double highRatio, double tolRatio, unsigned workers) {
  if (!(lowRatio >= 0.0 && highRatio > lowRatio)) {
    throw ConfigError("threshold bracket must satisfy 0 <= low < high");
  }
  if (!(tolRatio > 0.0)) throw ConfigError("threshold tolerance must be > 0");

  ThresholdResult res;
  auto V = [&](double ratio) {
    const double v = grid_max_violation(setup, grid, ratio, workers);
    res.samples.emplace_back(ratio, v);
    return v;
  };

  double lo = lowRatio, hi = highRatio;
  double vlo = V(lo);
  const double vhi = V(hi);
  if (!(vlo > kViolationTolerance) || vhi > kViolationTolerance) {
    std::ostringstream msg;
    msg << "invalid threshold bracket: V(" << lo << ")=" << vlo << ", V(" << hi << ")=" << vhi
        << " (need V(low) > 0 >= V(high) within " << kViolationTolerance << ")";
    throw ConfigError(msg.str());
  }
  while (hi - lo >= tolRatio) {
    const double mid = 0.5 * (lo + hi);
    const double vmid = V(mid);
    if (vmid > vlo + kViolationTolerance) {
      std::ostringstream msg;
      msg << "maximal violation is not monotone in gammaS: V(" << mid << ")=" << vmid << " > V(" << lo
          << ")=" << vlo;
      throw ThresholdAssumptionError(msg.str());
    }
    if (vmid > kViolationTolerance) {
      lo = mid;
      vlo = vmid;
    } else {
      hi = mid;
    }
  }
  res.gammaStarOverGamma0 = 0.5 * (lo + hi);
  res.bracketWidthOverGamma0 = hi - lo;
  res.gammaStar = res.gammaStarOverGamma0 * setup.S;  // gamma0 = S * lambda, lambda = 1
  return res;
}

}  // namespace chshdyn

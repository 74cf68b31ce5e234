#pragma once

// Parameter sweeps over (tau, r1) and the quantities extracted from them:
// violation intervals, revivals, the maximal violation and the
// spontaneous-emission threshold beyond which B <= 2 everywhere.

#include <functional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "chshdyn/analytic.hpp"
#include "chshdyn/errors.hpp"
#include "chshdyn/integrator.hpp"

namespace chshdyn {

enum class Model { analytic, lindblad };

std::string_view model_name(Model m);
Model parse_model(std::string_view name);

struct SweepGrid {
  double tauMax = 20.0;
  int tauSteps = 2000;
  std::vector<double> r1Values = uniform_r1(0.01, 0.99, 99);

  /// tauSteps + 1 points, tau_i = tauMax * i / tauSteps.
  std::vector<double> taus() const;

  /// Throws ConfigError unless tauSteps >= 2, tauMax > 0 and the r1 values
  /// are ascending and strictly inside (0, 1).
  void validate() const;

  static std::vector<double> uniform_r1(double lo, double hi, int count);
};

struct SweepSetup {
  Model model = Model::analytic;
  double S = 10.0;
  double gammaS_over_gamma0 = 0.0;
  Amplitudes psi0 = Amplitudes::excited_first();
  IntegratorConfig integrator;
  int fockCutoff = 1;
};

struct SweepRow {
  double tau = 0.0;
  double r1 = 0.0;
  double B = 0.0;
  double violation = 0.0;
};

/// A numerical failure with the sweep coordinates at which it happened.
class SweepError : public NumericalError {
 public:
  SweepError(const std::string& what, double tau, double r1)
      : NumericalError(what), tau_(tau), r1_(r1) {}
  double tau() const noexcept { return tau_; }
  double r1() const noexcept { return r1_; }

 private:
  double tau_, r1_;
};

/// B(tau) at fixed r1 on the given ascending grid. One integration per call
/// for the Lindblad model.
std::vector<double> bell_series(const SweepSetup& setup, double r1, std::span<const double> taus);

/// B(tau) as a continuous function on [0, tauMax]: the closed form for the
/// analytic model, the dense integrator output for the Lindblad model.
std::function<double(double)> continuous_bell(const SweepSetup& setup, double r1, double tauMax);

/// Rows ordered r1-major then tau. Trajectories run on `workers` threads
/// (0 = hardware concurrency); the result does not depend on the count.
std::vector<SweepRow> sweep(const SweepSetup& setup, const SweepGrid& grid, unsigned workers = 0);

struct ViolationIntervals {
  std::vector<std::pair<double, double>> intervals;

  std::size_t size() const { return intervals.size(); }
  bool empty() const { return intervals.empty(); }
};

constexpr double kIntervalResolution = 1e-6;

/// B must exceed 2 by more than this to count as a violation. States that
/// relax towards a product state approach B = 2 with round-off on both sides.
constexpr double kViolationTolerance = 1e-9;

/// Maximal stretches with B > 2 + kViolationTolerance. Crossings are refined by bisection on
/// `model` when given, otherwise by linear interpolation of the samples.
ViolationIntervals violation_intervals(std::span<const double> taus, std::span<const double> B,
                                       const std::function<double(double)>& model = {});

/// Intervals after the first one.
int count_revivals(const ViolationIntervals& intervals);

struct MaxViolation {
  double B = 0.0;
  double tau = 0.0;
  double r1 = 0.0;
};

/// Largest B; ties go to the smaller tau, then the smaller r1.
MaxViolation max_violation(std::span<const SweepRow> rows);

/// max over the grid of (B - 2) with gamma1 = gamma2 = ratio * gamma0.
double grid_max_violation(const SweepSetup& setup, const SweepGrid& grid, double gammaS_over_gamma0,
                          unsigned workers = 0);

/// Raised when the sampled maximal violation is not monotone in gamma.
class ThresholdAssumptionError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

struct ThresholdResult {
  double gammaStar = 0.0;               ///< rate, units of lambda
  double gammaStarOverGamma0 = 0.0;
  double bracketWidthOverGamma0 = 0.0;
  std::vector<std::pair<double, double>> samples;  ///< (gamma/gamma0, V) in evaluation order
};

/// Bisection for the smallest gammaS/gamma0 at which B <= 2 (within
/// kViolationTolerance) over the whole grid. The bracket and tolerance are ratios to gamma0. Always uses the
/// Lindblad model. Throws ConfigError if V does not change sign over the bracket.
ThresholdResult find_threshold(const SweepSetup& setup, const SweepGrid& grid, double lowRatio,
                               double highRatio, double tolRatio = 1e-3, unsigned workers = 0);

}  // namespace chshdyn

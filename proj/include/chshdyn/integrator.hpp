#pragma once

// Adaptive Dormand-Prince 5(4) integrator over flat complex state vectors,
// with cubic Hermite dense output between accepted steps.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "chshdyn/states.hpp"

namespace chshdyn {

struct IntegratorConfig {
  double relTol = 1e-9;
  double absTol = 1e-12;
  double maxStep = 0.01;      ///< scaled time
  double initialStep = 1e-4;  ///< scaled time

  /// Throws ConfigError unless all fields are positive and relTol >= 1e-14.
  void validate() const;

  bool operator==(const IntegratorConfig&) const = default;
};

using RhsFn = std::function<void(double t, std::span<const cplx> y, std::span<cplx> dydt)>;

/// One accepted step [t0, t1] with end-point values and derivatives.
struct AcceptedStep {
  double t0 = 0.0;
  double t1 = 0.0;
  std::span<const cplx> y0, f0, y1, f1;
};

/// Cubic Hermite interpolant of `step` at t in [t0, t1].
void hermite_interpolate(const AcceptedStep& step, double t, std::span<cplx> out);

class DormandPrince45 {
 public:
  using Observer = std::function<void(const AcceptedStep&)>;

  DormandPrince45(RhsFn rhs, std::size_t dim, IntegratorConfig cfg);

  /// Integrates y' = f(t, y) from (t0, y0) to t1, calling `observer` after
  /// every accepted step. Steps are shortened so that every time in `stops`
  /// (ascending) is the end of an accepted step. Throws IntegrationError on
  /// step-size underflow.
  void integrate(double t0, std::span<const cplx> y0, double t1, const Observer& observer,
                 std::span<const double> stops = {});

  std::size_t accepted_steps() const { return accepted_; }
  std::size_t rejected_steps() const { return rejected_; }

 private:
  double error_norm(std::span<const cplx> y0, std::span<const cplx> y1) const;

  RhsFn rhs_;
  std::size_t dim_;
  IntegratorConfig cfg_;
  std::vector<std::vector<cplx>> k_;  // seven stage derivatives
  std::vector<cplx> y_, ynew_, stage_, err_;
  std::size_t accepted_ = 0;
  std::size_t rejected_ = 0;
};

/// Stores every accepted step so the solution can be evaluated at any time
/// inside the integrated range.
class DenseTrajectory {
 public:
  explicit DenseTrajectory(std::size_t dim) : dim_(dim) {}

  void append(const AcceptedStep& step);
  std::vector<cplx> evaluate(double t) const;

  double t_begin() const { return times_.front(); }
  double t_end() const { return times_.back(); }
  std::size_t dim() const { return dim_; }
  std::size_t nodes() const { return times_.size(); }

 private:
  std::size_t dim_;
  std::vector<double> times_;
  std::vector<cplx> values_;       // nodes * dim
  std::vector<cplx> derivatives_;  // nodes * dim
};

}  // namespace chshdyn

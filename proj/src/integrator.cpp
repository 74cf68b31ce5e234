#include "chshdyn/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "chshdyn/errors.hpp"
#include "chshdyn/simd/kernels.hpp"

namespace chshdyn {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

void IntegratorConfig::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (!positive(relTol) || relTol < 1e-14) throw ConfigError("relTol must be >= 1e-14");
  if (!positive(absTol)) throw ConfigError("absTol must be > 0");
  if (!positive(maxStep)) throw ConfigError("maxStep must be > 0");
  if (!positive(initialStep)) throw ConfigError("initialStep must be > 0");
}

void hermite_interpolate(const AcceptedStep& step, double t, std::span<cplx> out) {
  const double h = step.t1 - step.t0;
  const double s = (t - step.t0) / h;
  const double s2 = s * s, s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = (s3 - 2 * s2 + s) * h;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = (s3 - s2) * h;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = h00 * step.y0[i] + h10 * step.f0[i] + h01 * step.y1[i] + h11 * step.f1[i];
  }
}

DormandPrince45::DormandPrince45(RhsFn rhs, std::size_t dim, IntegratorConfig cfg)
    : rhs_(std::move(rhs)),
      dim_(dim),
      cfg_(cfg),
      k_(7, std::vector<cplx>(dim)),
      y_(dim),
      ynew_(dim),
      stage_(dim),
      err_(dim) {
  cfg_.validate();
}

double DormandPrince45::error_norm(std::span<const cplx> y0, std::span<const cplx> y1) const {
  // Max norm: components that stay exactly zero (e.g. unpopulated Fock levels)
  // do not dilute the estimate, so the step sequence is independent of padding.
  double worst = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double sc = cfg_.absTol + cfg_.relTol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    worst = std::max(worst, std::abs(err_[i]) / sc);
  }
  return worst;
}

void DormandPrince45::integrate(double t0, std::span<const cplx> y0, double t1,
                                const Observer& observer, std::span<const double> stops) {
  if (y0.size() != dim_) throw ConfigError("integrator: state dimension mismatch");
  if (!(t1 >= t0)) throw ConfigError("integrator: end time precedes start time");
  std::copy(y0.begin(), y0.end(), y_.begin());
  if (t1 == t0) return;

  auto combine = [&](double h, std::initializer_list<std::pair<int, double>> terms) {
    std::copy(y_.begin(), y_.end(), stage_.begin());
    for (const auto& [idx, coef] : terms) simd::axpy(h * coef, k_[idx], stage_);
  };

  double t = t0;
  double h = std::min({cfg_.initialStep, cfg_.maxStep, t1 - t0});
  rhs_(t, y_, k_[0]);
  bool last_rejected = false;

  std::size_t stop = 0;
  while (t < t1) {
    while (stop < stops.size() && stops[stop] <= t) ++stop;
    const double target = stop < stops.size() ? std::min(stops[stop], t1) : t1;
    h = std::min(h, cfg_.maxStep);
    const double hmin = 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t));
    if (h < hmin) {
      std::ostringstream msg;
      msg << "step size underflow at tau=" << t;
      throw IntegrationError(msg.str(), t);
    }
    const double proposed = h;
    const bool clipped = h >= target - t;
    if (clipped) h = target - t;

    combine(h, {{0, a21}});
    rhs_(t + c2 * h, stage_, k_[1]);
    combine(h, {{0, a31}, {1, a32}});
    rhs_(t + c3 * h, stage_, k_[2]);
    combine(h, {{0, a41}, {1, a42}, {2, a43}});
    rhs_(t + c4 * h, stage_, k_[3]);
    combine(h, {{0, a51}, {1, a52}, {2, a53}, {3, a54}});
    rhs_(t + c5 * h, stage_, k_[4]);
    combine(h, {{0, a61}, {1, a62}, {2, a63}, {3, a64}, {4, a65}});
    rhs_(t + h, stage_, k_[5]);
    combine(h, {{0, b1}, {2, b3}, {3, b4}, {4, b5}, {5, b6}});
    std::copy(stage_.begin(), stage_.end(), ynew_.begin());
    const double tnew = clipped ? target : t + h;
    rhs_(tnew, ynew_, k_[6]);

    std::fill(err_.begin(), err_.end(), cplx{});
    for (const auto& [idx, coef] : {std::pair{0, e1}, {2, e3}, {3, e4}, {4, e5}, {5, e6}, {6, e7}}) {
      simd::axpy(h * coef, k_[idx], err_);
    }
    const double err = error_norm(y_, ynew_);
    if (!std::isfinite(err)) {
      std::ostringstream msg;
      msg << "non-finite error estimate at tau=" << t;
      throw IntegrationError(msg.str(), t);
    }

    if (err <= 1.0) {
      observer(AcceptedStep{t, tnew, y_, k_[0], ynew_, k_[6]});
      ++accepted_;
      t = tnew;
      std::swap(y_, ynew_);
      std::swap(k_[0], k_[6]);  // first-same-as-last
      double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -0.2);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      // a step shortened to hit a stop says nothing about the natural size
      h = clipped ? std::max(proposed, h * fac) : h * fac;
      last_rejected = false;
    } else {
      ++rejected_;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
}

void DenseTrajectory::append(const AcceptedStep& step) {
  if (times_.empty()) {
    times_.push_back(step.t0);
    values_.insert(values_.end(), step.y0.begin(), step.y0.end());
    derivatives_.insert(derivatives_.end(), step.f0.begin(), step.f0.end());
  }
  times_.push_back(step.t1);
  values_.insert(values_.end(), step.y1.begin(), step.y1.end());
  derivatives_.insert(derivatives_.end(), step.f1.begin(), step.f1.end());
}

std::vector<cplx> DenseTrajectory::evaluate(double t) const {
  if (times_.empty() || t < times_.front() || t > times_.back()) {
    throw ConfigError("dense output requested outside the integrated range");
  }
  std::vector<cplx> out(dim_);
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t k = it == times_.begin() ? 0 : static_cast<std::size_t>(it - times_.begin()) - 1;
  if (k + 1 >= times_.size()) {
    std::copy_n(values_.begin() + static_cast<std::ptrdiff_t>(k * dim_), dim_, out.begin());
    return out;
  }
  auto slice = [&](const std::vector<cplx>& v, std::size_t node) {
    return std::span<const cplx>(v.data() + node * dim_, dim_);
  };
  const AcceptedStep step{times_[k], times_[k + 1], slice(values_, k), slice(derivatives_, k),
                          slice(values_, k + 1), slice(derivatives_, k + 1)};
  hermite_interpolate(step, t, out);
  return out;
}

}  // namespace chshdyn

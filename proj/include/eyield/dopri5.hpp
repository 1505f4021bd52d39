#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "eyield/error.hpp"

namespace eyield {

struct Dopri5Options {
  double rtol = 1e-9;
  double atol = 1e-12;
  double max_step = 0.005;
  double min_step = 1e-14;
  long max_steps = 100'000'000;
};

struct Dopri5Stats {
  long steps = 0;
  long rejected = 0;
  long rhs_evaluations = 0;
};

/// Dormand-Prince 5(4) with FSAL, standard step-size control and the
/// 4th-order continuous extension of Hairer & Wanner's DOPRI5.
///
/// `Rhs` is callable as rhs(t, y, dydt) writing into dydt.
template <class Rhs>
class Dopri5 {
 public:
  using Vector = Eigen::VectorXd;

  Dopri5(Rhs rhs, Vector y0, double t0, const Dopri5Options& opts)
      : rhs_(std::move(rhs)), opts_(opts), t_(t0), t_prev_(t0), y_(std::move(y0)) {
    const auto n = y_.size();
    for (auto* v : {&k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_, &tmp_, &y_new_, &err_, &rc1_, &rc2_, &rc3_,
                    &rc4_, &rc5_})
      v->setZero(n);
    eval(t_, y_, k1_);
    h_ = initial_step();
    rc1_ = y_;
  }

  double t() const { return t_; }
  double t_previous() const { return t_prev_; }
  const Vector& y() const { return y_; }
  const Dopri5Stats& stats() const { return stats_; }

  /// Takes one accepted step, never past t_limit.
  void step(double t_limit) {
    if (stats_.steps >= opts_.max_steps) fail("step budget exhausted", h_);
    bool rejected_before = false;
    while (true) {
      const double remaining = t_limit - t_;
      const bool last = std::min(h_, opts_.max_step) >= remaining;
      const double h = last ? remaining : std::min(h_, opts_.max_step);
      if (!std::isfinite(h) || (!last && h < opts_.min_step * std::max(1.0, std::abs(t_))))
        fail("step size underflow", h);
      attempt(h);
      const double err = error_norm();
      if (err <= 1.0) {
        const double grow = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        // A truncated final step says nothing about the sustainable size.
        if (!last) h_ = rejected_before ? std::min(h, h * grow) : h * grow;
        build_dense(h);
        t_prev_ = t_;
        t_ = last ? t_limit : t_ + h;
        y_.swap(y_new_);
        k1_.swap(k7_);  // FSAL
        ++stats_.steps;
        return;
      }
      ++stats_.rejected;
      rejected_before = true;
      h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
      if (!std::isfinite(err)) h_ = 0.1 * h;
    }
  }

  /// Continuous extension on [t_previous(), t()].
  void dense(double t, Vector& out) const {
    const double h = t_ - t_prev_;
    if (h == 0.0) {
      out = y_;
      return;
    }
    const double s = (t - t_prev_) / h;
    const double s1 = 1.0 - s;
    out = rc1_ + s * (rc2_ + s1 * (rc3_ + s * (rc4_ + s1 * rc5_)));
  }

 private:
  void eval(double t, const Vector& y, Vector& dydt) {
    rhs_(t, y, dydt);
    ++stats_.rhs_evaluations;
  }

  [[noreturn]] void fail(const char* what, double h) const {
    std::ostringstream os;
    os.precision(10);
    os << "Dormand-Prince integration failed: " << what << " at t = " << t_ << " (h = " << h
       << ", accepted steps " << stats_.steps << ", rejected " << stats_.rejected << ")";
    throw IntegrationError(os.str());
  }

  double weighted_rms(const Vector& v) const {
    const auto scale = opts_.atol + opts_.rtol * y_.array().abs();
    return std::sqrt((v.array() / scale).square().mean());
  }

  double initial_step() {
    const double d0 = weighted_rms(y_);
    const double d1 = weighted_rms(k1_);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min(h0, opts_.max_step);
    tmp_ = y_ + h0 * k1_;
    eval(t_ + h0, tmp_, k2_);
    const double d2 = weighted_rms(k2_ - k1_) / h0;
    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, opts_.max_step});
  }

  void attempt(double h) {
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                            a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                            a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
    static constexpr double c2 = 0.2, c3 = 0.3, c4 = 0.8, c5 = 8.0 / 9.0;
    static constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                            e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

    tmp_ = y_ + h * a21 * k1_;
    eval(t_ + c2 * h, tmp_, k2_);
    tmp_ = y_ + h * (a31 * k1_ + a32 * k2_);
    eval(t_ + c3 * h, tmp_, k3_);
    tmp_ = y_ + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
    eval(t_ + c4 * h, tmp_, k4_);
    tmp_ = y_ + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
    eval(t_ + c5 * h, tmp_, k5_);
    tmp_ = y_ + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
    eval(t_ + h, tmp_, k6_);
    y_new_ = y_ + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
    eval(t_ + h, y_new_, k7_);
    err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
  }

  double error_norm() const {
    const auto scale = opts_.atol + opts_.rtol * y_.array().abs().max(y_new_.array().abs());
    return std::sqrt((err_.array() / scale).square().mean());
  }

  void build_dense(double h) {
    static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                            d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                            d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
    rc1_ = y_;
    rc2_ = y_new_ - y_;
    rc3_ = h * k1_ - rc2_;
    rc4_ = rc2_ - h * k7_ - rc3_;
    rc5_ = h * (d1 * k1_ + d3 * k3_ + d4 * k4_ + d5 * k5_ + d6 * k6_ + d7 * k7_);
  }

  Rhs rhs_;
  Dopri5Options opts_;
  double t_;
  double t_prev_;
  double h_ = 0.0;
  Vector y_, y_new_, tmp_, err_;
  Vector k1_, k2_, k3_, k4_, k5_, k6_, k7_;
  Vector rc1_, rc2_, rc3_, rc4_, rc5_;
  Dopri5Stats stats_;
};

}  // namespace eyield

#pragma once

// Dormand-Prince 5(4) embedded pair with PI step-size control for small
// autonomous-in-structure systems y' = F(x, y).

#include <array>
#include <cmath>
#include <functional>

#include "madelung/errors.hpp"

namespace madelung::ode {

template <std::size_t N>
using State = std::array<double, N>;

struct StepControl {
  double rel_tol = 1e-10;
  double abs_floor = 1e-14;
  double initial_step = 1e-3;
  double min_step_fraction = 1e-14;  // relative to |x|, below which StiffnessError
  long max_steps = 1'000'000;
};

struct MarchStats {
  long accepted = 0;
  long rejected = 0;
};

// Integrates from x0 to x1 (> x0). The right-hand side may return non-finite
// values to signal an inadmissible trial state; such steps are rejected.
// observer(x, y) is called after every accepted step and may return false to stop.
template <std::size_t N, class Rhs, class Observer>
MarchStats dormand_prince(Rhs&& rhs, double x0, State<N> y, double x1, const StepControl& ctl,
                          Observer&& observer) {
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                   a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  constexpr double kAlpha = 0.7 / 5.0;
  constexpr double kBeta = 0.4 / 5.0;

  MarchStats stats;
  double x = x0;
  double h = std::min(ctl.initial_step, x1 - x0);
  double err_prev = 1e-4;
  bool last_rejected = false;
  State<N> k1 = rhs(x, y);

  while (x < x1) {
    if (stats.accepted + stats.rejected >= ctl.max_steps) {
      throw StiffnessError("dormand_prince: step budget exhausted");
    }
    if (h < ctl.min_step_fraction * std::max(1.0, std::abs(x))) {
      throw StiffnessError("dormand_prince: step size underflow at x=" + std::to_string(x));
    }
    if (x + h > x1) h = x1 - x;

    State<N> tmp, k2, k3, k4, k5, k6, k7, y_new;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    k2 = rhs(x + c2 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    k3 = rhs(x + c3 * h, tmp);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    k4 = rhs(x + c4 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    k5 = rhs(x + c5 * h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    k6 = rhs(x + h, tmp);
    for (std::size_t i = 0; i < N; ++i)
      y_new[i] = y[i] + h * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] + a75 * k5[i] + a76 * k6[i]);
    k7 = rhs(x + h, y_new);

    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = std::max(ctl.abs_floor, ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i])));
      err += (e / sc) * (e / sc);
    }
    err = std::sqrt(err / static_cast<double>(N));

    if (!std::isfinite(err)) {
      ++stats.rejected;
      h *= 0.25;
      last_rejected = true;
      continue;
    }
    if (err <= 1.0) {
      ++stats.accepted;
      x = (x + h >= x1) ? x1 : x + h;
      y = y_new;
      k1 = k7;
      double fac = err == 0.0 ? 5.0 : 0.9 * std::pow(err, -kAlpha) * std::pow(err_prev, kBeta);
      fac = std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      err_prev = std::max(err, 1e-4);
      last_rejected = false;
      h *= fac;
      if (!observer(x, y)) break;
    } else {
      ++stats.rejected;
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
    }
  }
  return stats;
}

}  // namespace madelung::ode

#pragma once

// Gauss-Kronrod 7/15 panels with QUADPACK-style error estimates, local
// adaptive bisection, and a compensated accumulator for long panel sums.

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "madelung/errors.hpp"

namespace madelung::quadrature {

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
};

namespace detail {
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace detail

template <class F>
Estimate gauss_kronrod15(F&& f, double a, double b) {
  using namespace detail;
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  const double fc = f(centr);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};
  for (int j = 0; j < 3; ++j) {
    const int jtw = 2 * j + 1;
    const double absc = hlgth * kXgk[jtw];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtw] = f1;
    fv2[jtw] = f2;
    resg += kWg[j] * (f1 + f2);
    resk += kWgk[jtw] * (f1 + f2);
    resabs += kWgk[jtw] * (std::abs(f1) + std::abs(f2));
  }
  for (int j = 0; j < 4; ++j) {
    const int jtwm1 = 2 * j;
    const double absc = hlgth * kXgk[jtwm1];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[jtwm1] = f1;
    fv2[jtwm1] = f2;
    resk += kWgk[jtwm1] * (f1 + f2);
    resabs += kWgk[jtwm1] * (std::abs(f1) + std::abs(f2));
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Estimate out;
  out.value = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  if (resabs > uflow / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  out.abs_error = err;
  return out;
}

// Bisects until each piece meets its share of tol (absolute).
template <class F>
Estimate adaptive_gk15(F&& f, double a, double b, double tol, int max_depth = 40) {
  const Estimate whole = gauss_kronrod15(f, a, b);
  if (whole.abs_error <= tol || !std::isfinite(whole.value)) return whole;
  if (max_depth == 0 || std::abs(b - a) <= 1e-14 * std::max(std::abs(a), std::abs(b))) {
    throw ToleranceNotMet("quadrature: panel [" + std::to_string(a) + ", " + std::to_string(b) +
                          "] error " + std::to_string(whole.abs_error) + " exceeds tolerance " +
                          std::to_string(tol));
  }
  const double mid = 0.5 * (a + b);
  const Estimate left = adaptive_gk15(f, a, mid, 0.5 * tol, max_depth - 1);
  const Estimate right = adaptive_gk15(f, mid, b, 0.5 * tol, max_depth - 1);
  return {left.value + right.value, left.abs_error + right.abs_error};
}

// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      carry_ += (sum_ - t) + x;
    } else {
      carry_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

}  // namespace madelung::quadrature

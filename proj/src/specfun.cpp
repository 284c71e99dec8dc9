#include "madelung/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace madelung::specfun {

namespace {

using std::numbers::pi;

// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
struct DoubleDouble {
  double hi;
  double lo;
};

DoubleDouble two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  const double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

DoubleDouble two_prod(double a, double b) {
  const double p = a * b;
  return {p, std::fma(a, b, -p)};
}

DoubleDouble add(DoubleDouble a, DoubleDouble b) {
  DoubleDouble s = two_sum(a.hi, b.hi);
  DoubleDouble t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return two_sum(s.hi, s.lo);
}

DoubleDouble mul(DoubleDouble a, DoubleDouble b) {
  DoubleDouble p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

DoubleDouble div(DoubleDouble a, double b) {
  const double q1 = a.hi / b;
  DoubleDouble p = two_prod(q1, b);
  const double r = (a.hi - p.hi - p.lo + a.lo) / b;
  return two_sum(q1, r);
}

// sin(pi x) with exact reduction of the integer part.
double sin_pi(double x) {
  const double r = x - 2.0 * std::round(0.5 * x);  // r in [-1, 1]
  if (r > 0.5) return std::sin(pi * (1.0 - r));
  if (r < -0.5) return std::sin(pi * (-1.0 - r));
  return std::sin(pi * r);
}

void require_positive(double z, const char* who) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    throw DomainError(std::string(who) + ": argument must be finite and > 0, got " +
                      std::to_string(z));
  }
}

// Lanczos approximation, g = 7, n = 9.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double gamma_lanczos(double x) {
  x -= 1.0;
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) a += kLanczos[i] / (x + static_cast<double>(i));
  const double t = x + kLanczosG + 0.5;
  // t^(x+1/2) split in two halves so large arguments do not overflow early.
  const double half_pow = std::pow(t, 0.5 * (x + 0.5));
  return std::sqrt(2.0 * pi) * half_pow * (half_pow * std::exp(-t)) * a;
}

}  // namespace

void EvalAccuracy::validate() const {
  if (!(target_rel_error > 0.0)) throw DomainError("EvalAccuracy: target_rel_error must be > 0");
  if (!(series_switchover > 0.0)) throw DomainError("EvalAccuracy: series_switchover must be > 0");
  if (max_series_terms < 10) throw DomainError("EvalAccuracy: max_series_terms must be >= 10");
}

BesselOrder BesselOrder::quarter(int num) {
  if (num % 2 == 0 || num > kMaxAbsNumerator || num < -kMaxAbsNumerator) {
    throw DomainError("BesselOrder: need an odd numerator with |num| <= 15, got " +
                      std::to_string(num) + "/4");
  }
  return BesselOrder(num);
}

double gamma(double x, const EvalAccuracy& acc) {
  acc.validate();
  if (!std::isfinite(x)) throw DomainError("gamma: non-finite argument");
  const double nearest = std::round(x);
  if (nearest <= 0.0 && std::abs(x - nearest) < 1e-14) {
    throw PoleError("gamma: pole at non-positive integer " + std::to_string(nearest));
  }
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1 - x) = pi / sin(pi x).
    return pi / (sin_pi(x) * gamma_lanczos(1.0 - x));
  }
  return gamma_lanczos(x);
}

namespace detail {

double bessel_j_series(double nu, double z, const EvalAccuracy& acc) {
  const double half = 0.5 * z;
  const DoubleDouble q = two_prod(half, half);
  DoubleDouble term{1.0, 0.0};
  DoubleDouble sum{1.0, 0.0};
  double largest = 1.0;
  bool converged = false;
  for (int k = 0; k < acc.max_series_terms; ++k) {
    const double kp1 = k + 1.0;
    term = div(mul(term, q), -(kp1 * (kp1 + nu)));
    sum = add(sum, term);
    const double mag = std::abs(term.hi);
    largest = std::max(largest, mag);
    if (kp1 > half &&
        (mag <= 1e-18 * std::abs(sum.hi) || mag <= 1e-32 * largest)) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw ConvergenceError("bessel_j: ascending series did not converge in " +
                           std::to_string(acc.max_series_terms) + " terms at z=" +
                           std::to_string(z));
  }
  return std::pow(half, nu) / gamma(nu + 1.0, acc) * (sum.hi + sum.lo);
}

BesselPair bessel_jy_asymptotic(double nu, double z, const EvalAccuracy& acc) {
  const double mu4 = 4.0 * nu * nu;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double smallest = 1.0;
  for (int k = 1; k <= acc.max_series_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu4 - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(next);
    if (mag >= smallest) break;  // superasymptotic cut: stop at the smallest term
    term = next;
    smallest = mag;
    const bool flip = ((k / 2) % 2) == 1;
    if (k % 2 == 0) {
      p += flip ? -term : term;
    } else {
      q += ((k - 1) / 2) % 2 == 1 ? -term : term;
    }
    if (mag < 1e-18 * (std::abs(p) + std::abs(q))) break;
  }
  if (smallest > acc.target_rel_error) {
    throw ConvergenceError("bessel: asymptotic expansion truncation error " +
                           std::to_string(smallest) + " exceeds target at z=" +
                           std::to_string(z));
  }
  // chi = z - (nu/2 + 1/4) pi, expanded so that z itself is reduced by libm.
  const double phi = (0.5 * nu + 0.25) * pi;
  const double cz = std::cos(z);
  const double sz = std::sin(z);
  const double cphi = std::cos(phi);
  const double sphi = std::sin(phi);
  const double cos_chi = cz * cphi + sz * sphi;
  const double sin_chi = sz * cphi - cz * sphi;
  const double amp = std::sqrt(2.0 / (pi * z));
  return {amp * (p * cos_chi - q * sin_chi), amp * (p * sin_chi + q * cos_chi)};
}

}  // namespace detail

double bessel_j(BesselOrder nu, double z, const EvalAccuracy& acc) {
  acc.validate();
  require_positive(z, "bessel_j");
  if (z >= acc.series_switchover) return detail::bessel_jy_asymptotic(nu.value(), z, acc).j;
  return detail::bessel_j_series(nu.value(), z, acc);
}

BesselPair bessel_jy(BesselOrder nu, double z, const EvalAccuracy& acc) {
  acc.validate();
  require_positive(z, "bessel_jy");
  const double v = nu.value();
  if (z >= acc.series_switchover) return detail::bessel_jy_asymptotic(v, z, acc);
  const double j = detail::bessel_j_series(v, z, acc);
  const double j_neg = detail::bessel_j_series(-v, z, acc);
  // Y_nu = (J_nu cos(nu pi) - J_{-nu}) / sin(nu pi)
  const double angle = pi * v;
  return {j, (j * std::cos(angle) - j_neg) / sin_pi(v)};
}

double bessel_y(BesselOrder nu, double z, const EvalAccuracy& acc) {
  require_positive(z, "bessel_y");
  return bessel_jy(nu, z, acc).y;
}

BesselJet bessel_jet(BesselOrder nu, double z, const EvalAccuracy& acc) {
  require_positive(z, "bessel_jet");
  std::array<BesselPair, 7> c{};  // orders nu-3 .. nu+3
  for (int s = -3; s <= 3; ++s) c[s + 3] = bessel_jy(nu.shifted(s), z, acc);
  BesselJet jet{};
  const auto combine = [&](auto member, double* out) {
    const auto at = [&](int s) { return c[s + 3].*member; };
    out[0] = at(0);
    out[1] = 0.5 * (at(-1) - at(1));
    out[2] = 0.25 * (at(-2) - 2.0 * at(0) + at(2));
    out[3] = 0.125 * (at(-3) - 3.0 * at(-1) + 3.0 * at(1) - at(3));
  };
  combine(&BesselPair::j, jet.j);
  combine(&BesselPair::y, jet.y);
  return jet;
}

namespace {

double deriv(BesselOrder nu, double z, int k, const EvalAccuracy& acc, bool want_j) {
  if (k < 1 || k > 3) throw DomainError("bessel derivative order must be 1, 2 or 3");
  require_positive(z, want_j ? "bessel_j_deriv" : "bessel_y_deriv");
  static constexpr int kBinom[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  double sum = 0.0;
  for (int j = 0; j <= k; ++j) {
    const BesselPair c = bessel_jy(nu.shifted(2 * j - k), z, acc);
    const double v = want_j ? c.j : c.y;
    sum += (j % 2 == 0 ? 1.0 : -1.0) * kBinom[k][j] * v;
  }
  return std::ldexp(sum, -k);
}

}  // namespace

double bessel_j_deriv(BesselOrder nu, double z, int k, const EvalAccuracy& acc) {
  return deriv(nu, z, k, acc, true);
}

double bessel_y_deriv(BesselOrder nu, double z, int k, const EvalAccuracy& acc) {
  return deriv(nu, z, k, acc, false);
}

double cross_product(double z, const EvalAccuracy& acc) {
  require_positive(z, "cross_product");
  const BesselPair quarter = bessel_jy(kQuarter, z, acc);
  const BesselPair minus = bessel_jy(kMinusThreeQuarters, z, acc);
  return minus.j * quarter.y - quarter.j * minus.y;
}

}  // namespace madelung::specfun

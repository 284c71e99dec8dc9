#pragma once

// Gamma and real-argument Bessel functions J_nu, Y_nu at quarter-integer orders.
//
// J_nu uses the ascending series (summed in double-double) below
// EvalAccuracy::series_switchover and the Hankel large-argument expansion,
// truncated at its smallest term, above it. Y_nu always goes through the
// connection formula, which is valid because quarter orders are never integers.
// Everything here is pure and reentrant.

#include "madelung/errors.hpp"

namespace madelung::specfun {

struct EvalAccuracy {
  double target_rel_error = 1e-12;
  double series_switchover = 20.0;
  int max_series_terms = 200;

  void validate() const;
};

// nu = num / 4 with num odd.
class BesselOrder {
 public:
  static constexpr int kDenominator = 4;
  static constexpr int kMaxAbsNumerator = 15;

  constexpr explicit BesselOrder(int num) : num_(num) {}
  static BesselOrder quarter(int num);

  constexpr int numerator() const { return num_; }
  constexpr int denominator() const { return kDenominator; }
  constexpr double value() const { return static_cast<double>(num_) / kDenominator; }
  BesselOrder shifted(int k) const { return quarter(num_ + k * kDenominator); }
  BesselOrder negated() const { return quarter(-num_); }

  friend constexpr bool operator==(BesselOrder, BesselOrder) = default;

 private:
  int num_;
};

inline constexpr BesselOrder kQuarter{1};
inline constexpr BesselOrder kMinusThreeQuarters{-3};

double gamma(double x, const EvalAccuracy& acc = {});

double bessel_j(BesselOrder nu, double z, const EvalAccuracy& acc = {});
double bessel_y(BesselOrder nu, double z, const EvalAccuracy& acc = {});

struct BesselPair {
  double j;
  double y;
};

// J_nu(z) and Y_nu(z) from one pass; the hot path for grid and quadrature work.
BesselPair bessel_jy(BesselOrder nu, double z, const EvalAccuracy& acc = {});

// k-th derivative in z, k in {1, 2, 3}, from the difference formula
// C^(k)_nu = 2^-k sum_j (-1)^j binom(k, j) C_{nu-k+2j}.
double bessel_j_deriv(BesselOrder nu, double z, int k, const EvalAccuracy& acc = {});
double bessel_y_deriv(BesselOrder nu, double z, int k, const EvalAccuracy& acc = {});

// Derivatives 0..3 of J_nu and Y_nu at z, sharing evaluations of orders nu-3 .. nu+3.
struct BesselJet {
  double j[4];
  double y[4];
};
BesselJet bessel_jet(BesselOrder nu, double z, const EvalAccuracy& acc = {});

// J_{-3/4}(z) Y_{1/4}(z) - J_{1/4}(z) Y_{-3/4}(z), which equals -2/(pi z).
double cross_product(double z, const EvalAccuracy& acc = {});

// Exposed for the regime-overlap self test; bessel_j picks one by z.
namespace detail {
double bessel_j_series(double nu, double z, const EvalAccuracy& acc);
BesselPair bessel_jy_asymptotic(double nu, double z, const EvalAccuracy& acc);
}  // namespace detail

}  // namespace madelung::specfun

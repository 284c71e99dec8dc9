#include <doctest.h>

#include <cmath>
#include <numbers>

#include "madelung/core.hpp"
#include "madelung/specfun.hpp"
#include "oracle/goldens.hpp"

using namespace madelung;
using namespace madelung::specfun;
using std::numbers::pi;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Bessel values are compared against the modulus sqrt(J^2 + Y^2), which stays
// well away from zero where J or Y alone vanish.
double modulus(const BesselPair& p) { return std::hypot(p.j, p.y); }

}  // namespace

TEST_SUITE("specfun") {

TEST_CASE("gamma at exact values") {
  CHECK(specfun::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rel(specfun::gamma(0.5), std::sqrt(pi)) < 1e-13);
  CHECK(rel(specfun::gamma(5.0), 24.0) < 1e-13);
}

TEST_CASE("gamma matches the high-precision oracle") {
  for (const auto& p : golden::kGamma) {
    INFO("x = " << p.x);
    CHECK(rel(specfun::gamma(p.x), p.value) < 1e-11);
  }
}

TEST_CASE("gamma agrees with tgamma on [-5, 30] away from poles") {
  for (int i = 0; i <= 3500; ++i) {
    const double x = -5.0 + i * 0.01 + 0.003;
    if (std::abs(x - std::round(x)) < 1e-3 && x < 0.5) continue;
    INFO("x = " << x);
    CHECK(rel(specfun::gamma(x), std::tgamma(x)) < 1e-11);
  }
}

TEST_CASE("gamma poles") {
  CHECK_THROWS_AS(specfun::gamma(0.0), PoleError);
  CHECK_THROWS_AS(specfun::gamma(-3.0), PoleError);
  CHECK_THROWS_AS(specfun::gamma(-2.0 + 1e-15), PoleError);
  CHECK_NOTHROW(specfun::gamma(-2.0 + 1e-9));
  CHECK_THROWS_AS(specfun::gamma(std::nan("")), DomainError);
}

TEST_CASE("accuracy settings are validated") {
  CHECK_THROWS_AS(specfun::gamma(1.0, EvalAccuracy{0.0, 20.0, 200}), DomainError);
  CHECK_THROWS_AS(bessel_j(kQuarter, 1.0, EvalAccuracy{1e-12, -1.0, 200}), DomainError);
  CHECK_THROWS_AS(bessel_j(kQuarter, 1.0, EvalAccuracy{1e-12, 20.0, 9}), DomainError);
}

TEST_CASE("orders are odd quarters") {
  CHECK(BesselOrder::quarter(1).value() == 0.25);
  CHECK(BesselOrder::quarter(-3).value() == -0.75);
  CHECK(BesselOrder::quarter(5).shifted(-2).value() == -0.75);
  CHECK_THROWS_AS(BesselOrder::quarter(2), DomainError);
  CHECK_THROWS_AS(BesselOrder::quarter(17), DomainError);
}

TEST_CASE("bessel values match the oracle across both regimes") {
  REQUIRE(golden::kBesselJ.size() == golden::kBesselY.size());
  for (std::size_t i = 0; i < golden::kBesselJ.size(); ++i) {
    const auto& gj = golden::kBesselJ[i];
    const auto& gy = golden::kBesselY[i];
    REQUIRE(gj.num == gy.num);
    REQUIRE(gj.z == gy.z);
    const BesselOrder nu = BesselOrder::quarter(gj.num);
    const BesselPair got = bessel_jy(nu, gj.z);
    const double scale = std::hypot(gj.value, gy.value);
    INFO("nu = " << gj.num << "/4, z = " << gj.z);
    CHECK(std::abs(got.j - gj.value) / scale < 1e-10);
    CHECK(std::abs(got.y - gy.value) / scale < 1e-10);
    CHECK(bessel_j(nu, gj.z) == got.j);
    CHECK(bessel_y(nu, gj.z) == got.y);
  }
}

TEST_CASE("small-argument behaviour") {
  const double z = 1e-8;
  const double j = bessel_j(kQuarter, z);
  CHECK(j > 0.0);
  CHECK(j < 1e-2);
  CHECK(bessel_j(kMinusThreeQuarters, z) > 1e5);
  CHECK(bessel_y(kQuarter, z) < -1e2);
  CHECK(bessel_j(kQuarter, 1e-12) < bessel_j(kQuarter, 1e-8));
}

TEST_CASE("Y_{1/4} changes sign upward at its first zero") {
  const PhysicalParams params;
  const double z0 = bessel_argument(golden::kRootsEtaC1Zero[0], params);
  CHECK(bessel_y(kQuarter, z0 * (1.0 + 1e-6)) > 0.0);
  CHECK(bessel_y(kQuarter, z0 * (1.0 - 1e-6)) < 0.0);
}

TEST_CASE("non-positive arguments are rejected") {
  CHECK_THROWS_AS(bessel_j(kQuarter, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_y(kQuarter, -1.0), DomainError);
  CHECK_THROWS_AS(bessel_j_deriv(kQuarter, 0.0, 1), DomainError);
  CHECK_THROWS_AS(cross_product(-2.0), DomainError);
  CHECK_THROWS_AS(bessel_j_deriv(kQuarter, 1.0, 4), DomainError);
}

TEST_CASE("derivatives match the oracle at z = 3") {
  for (int k = 1; k <= 3; ++k) {
    INFO("k = " << k);
    CHECK(rel(bessel_j_deriv(kQuarter, 3.0, k), golden::kJQuarterDerivAt3[k - 1]) < 1e-9);
    CHECK(rel(bessel_y_deriv(kQuarter, 3.0, k), golden::kYQuarterDerivAt3[k - 1]) < 1e-9);
  }
}

TEST_CASE("first derivative agrees with a central difference") {
  for (double z : {0.3, 3.0, 17.0, 40.0}) {
    const double h = 1e-6 * z;
    const double fd = (bessel_j(kQuarter, z + h) - bessel_j(kQuarter, z - h)) / (2.0 * h);
    const double scale = modulus(bessel_jy(kQuarter, z));
    INFO("z = " << z);
    CHECK(std::abs(bessel_j_deriv(kQuarter, z, 1) - fd) / scale < 1e-8);
  }
  const double z = 1e3;
  const double h = 1e-6 * z;
  const double fdj = (bessel_j(kQuarter, z + h) - bessel_j(kQuarter, z - h)) / (2.0 * h);
  const double fdy = (bessel_y(kQuarter, z + h) - bessel_y(kQuarter, z - h)) / (2.0 * h);
  const double scale = modulus(bessel_jy(kQuarter, z));
  CHECK(std::isfinite(bessel_j_deriv(kQuarter, z, 1)));
  CHECK(std::abs(bessel_j_deriv(kQuarter, z, 1) - fdj) / scale < 1e-6);
  CHECK(std::abs(bessel_y_deriv(kQuarter, z, 1) - fdy) / scale < 1e-6);
}

TEST_CASE("recurrence J' = (J_{nu-1} - J_{nu+1}) / 2 at z = 3") {
  const double lhs = bessel_j_deriv(kQuarter, 3.0, 1);
  const double rhs =
      0.5 * (bessel_j(kQuarter.shifted(-1), 3.0) - bessel_j(kQuarter.shifted(1), 3.0));
  CHECK(rel(lhs, rhs) < 1e-12);
}

TEST_CASE("derivative recurrence J' = J_{nu-1} - (nu/z) J holds across regimes") {
  for (const int num : {1, -3, 5}) {
    const BesselOrder nu = BesselOrder::quarter(num);
    for (int i = 0; i < 400; ++i) {
      const double z = std::pow(10.0, -2.0 + 6.0 * i / 399.0);
      const BesselPair c = bessel_jy(nu, z);
      const BesselPair lower = bessel_jy(nu.shifted(-1), z);
      const double dj = lower.j - nu.value() / z * c.j;
      const double dy = lower.y - nu.value() / z * c.y;
      const double gj = bessel_j_deriv(nu, z, 1);
      const double gy = bessel_y_deriv(nu, z, 1);
      INFO("nu = " << num << "/4, z = " << z);
      if (std::abs(gj) > 1e-8) CHECK(std::abs(gj - dj) <= 1e-11 * std::hypot(gj, gy));
      if (std::abs(gy) > 1e-8) CHECK(std::abs(gy - dy) <= 1e-11 * std::hypot(gj, gy));
    }
  }
}

TEST_CASE("cross product examples") {
  CHECK(rel(cross_product(2.0), -1.0 / pi) < 1e-10);
  CHECK(rel(cross_product(0.5), -4.0 / pi) < 1e-10);
  for (double z : {0.1, 1.0, 10.0, 100.0}) {
    INFO("z = " << z);
    CHECK(std::abs(z * cross_product(z) + 2.0 / pi) < 1e-10);
  }
}

TEST_CASE("cross-product identity on 1000 log-spaced points up to 1e4") {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double z = std::pow(10.0, -3.0 + 7.0 * (i + 1) / 1000.0);
    const double expected = 2.0 / (pi * z);
    worst = std::max(worst, std::abs(cross_product(z) + expected) / expected);
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("series and asymptotic regimes agree on [15, 25]") {
  const EvalAccuracy acc;
  for (const int num : {1, -3, 5, -7}) {
    const double nu = num / 4.0;
    for (int i = 0; i <= 100; ++i) {
      const double z = 15.0 + 0.1 * i;
      const double series_j = detail::bessel_j_series(nu, z, acc);
      const double series_jn = detail::bessel_j_series(-nu, z, acc);
      const double series_y = (series_j * std::cos(nu * pi) - series_jn) / std::sin(nu * pi);
      const BesselPair asym = detail::bessel_jy_asymptotic(nu, z, acc);
      const double scale = std::hypot(asym.j, asym.y);
      INFO("nu = " << num << "/4, z = " << z);
      CHECK(std::abs(series_j - asym.j) / scale < 1e-9);
      CHECK(std::abs(series_y - asym.y) / scale < 1e-9);
    }
  }
}

TEST_CASE("asymptotic expansion refuses arguments it cannot resolve") {
  CHECK_THROWS_AS(detail::bessel_jy_asymptotic(0.25, 2.0, EvalAccuracy{}), ConvergenceError);
}

TEST_CASE("series reports non-convergence") {
  CHECK_THROWS_AS(detail::bessel_j_series(0.25, 15.0, EvalAccuracy{1e-12, 20.0, 10}),
                  ConvergenceError);
}

TEST_CASE("evaluation is deterministic") {
  for (double z : {0.7, 19.99, 20.0, 523.25}) {
    const BesselPair a = bessel_jy(kQuarter, z);
    const BesselPair b = bessel_jy(kQuarter, z);
    CHECK(a.j == b.j);
    CHECK(a.y == b.y);
  }
}

TEST_CASE("jet derivatives match the single-derivative functions") {
  for (double z : {0.4, 5.0, 33.0}) {
    const BesselJet jet = bessel_jet(kQuarter, z);
    for (int k = 1; k <= 3; ++k) {
      CHECK(jet.j[k] == doctest::Approx(bessel_j_deriv(kQuarter, z, k)).epsilon(1e-13));
      CHECK(jet.y[k] == doctest::Approx(bessel_y_deriv(kQuarter, z, k)).epsilon(1e-13));
    }
  }
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <string>

#include "madelung/analysis.hpp"
#include "madelung/verify.hpp"
#include "oracle/goldens.hpp"

using namespace madelung;
using namespace madelung::verify;

namespace {

const GridSpec kEtaGrid{0.1, 50.0, 2000, Spacing::log};

struct Case {
  double m, c1, c2;
};
constexpr Case kCases[] = {{1, 1, 1}, {0.5, 1, 1}, {1, 0, 1}, {1, 1, 0}, {2, 3, -1}};

const ResidualReport& by_label(const std::vector<ResidualReport>& rs, const std::string& label) {
  for (const auto& r : rs) {
    if (r.label == label) return r;
  }
  FAIL("no report labelled " << label);
  return rs.front();
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("density ODE residual over five parameter sets") {
  for (const auto& c : kCases) {
    CAPTURE(c.m);
    CAPTURE(c.c1);
    CAPTURE(c.c2);
    const auto r = residual_ode5(kEtaGrid, {c.m, 1.0, 2}, {0.0, c.c1, c.c2});
    CHECK(r.max_rel <= 1e-8);
    CHECK(r.points.rows.size() == 2000);
    CHECK(std::isnan(r.richardson_ratio));
  }
}

TEST_CASE("density ODE residual in one to three dimensions") {
  for (int d = 1; d <= 3; ++d) {
    CAPTURE(d);
    const auto r = residual_ode5(kEtaGrid, {1.0, 0.7, d}, {});
    CHECK(r.max_rel <= 1e-8);
  }
}

TEST_CASE("density ODE residual does not depend on c0") {
  const auto a = residual_ode5(kEtaGrid, {}, {0.0, 1.0, 1.0});
  const auto b = residual_ode5(kEtaGrid, {}, {3.0, 1.0, 1.0});
  CHECK(a.max_rel == b.max_rel);
}

TEST_CASE("shape system: continuity and momentum") {
  const auto rs = residual_ode_system4(kEtaGrid, {}, {});
  REQUIRE(rs.size() == 3);
  CHECK(rs[0].label == "ode_system4/continuity_shape");
  CHECK(rs[0].max_abs <= 1e-12);
  CHECK(rs[1].max_rel <= 1e-6);
  CHECK(rs[2].max_rel <= 1e-6);
  CHECK(rs[1].max_rel == rs[2].max_rel);
}

TEST_CASE("shape continuity residual with c0 is -c0 f' / 2") {
  const double c0 = 0.5;
  const GridSpec grid{0.5, 3.0, 11, Spacing::uniform};
  const auto rs = residual_ode_system4(grid, {}, {c0, 1.0, 1.0});
  const auto etas = rs[0].points.column("eta");
  const auto res = rs[0].points.column("residual");
  for (std::size_t i = 0; i < etas.size(); ++i) {
    const double df = shape_density_jet(etas[i], {}, {}).df;
    CHECK(res[i] == doctest::Approx(-0.5 * c0 * df).epsilon(1e-9));
  }
}

TEST_CASE("lab continuity converges at second order") {
  const auto rs = residual_pde_lab({}, {}, {});
  const auto& c = by_label(rs, "continuity");
  CHECK(c.max_rel <= 1e-5);
  CHECK(c.richardson_ratio >= 3.0);
}

TEST_CASE("lab Euler components are symmetric") {
  const auto rs = residual_pde_lab({}, {}, {});
  REQUIRE(rs.size() == 3);
  const auto& ex = by_label(rs, "euler_x");
  const auto& ey = by_label(rs, "euler_y");
  CHECK(ex.max_abs == doctest::Approx(ey.max_abs).epsilon(1e-12));
}

TEST_CASE("planar Euler residual reflects the dropped dimension factor") {
  const auto rs = residual_pde_lab({}, {}, {});
  CHECK(by_label(rs, "euler_x").max_rel == doctest::Approx(0.5).epsilon(1e-3));
}

TEST_CASE("Euler residual vanishes on the line") {
  const auto rs = residual_pde_lab({}, {1.0, 1.0, 1}, {});
  REQUIRE(rs.size() == 2);
  CHECK(by_label(rs, "continuity").max_rel <= 1e-5);
  CHECK(by_label(rs, "euler_x").max_rel <= 1e-4);
}

TEST_CASE("Schrodinger residual on the line with the standard sign") {
  SchrodingerOptions opts;
  opts.sign = SchrodingerSign::standard;
  const auto r = residual_schrodinger({}, {1.0, 1.0, 1}, {}, {}, opts);
  CHECK(r.label == "schrodinger/standard_sign");
  CHECK(r.max_rel <= 1e-4);
  CHECK(r.richardson_ratio >= 2.0);
}

TEST_CASE("Schrodinger residual in the plane") {
  const auto printed = residual_schrodinger({}, {}, {});
  CHECK(printed.label == "schrodinger");
  CHECK(printed.max_rel == doctest::Approx(1.0).epsilon(1e-3));

  SchrodingerOptions opts;
  opts.sign = SchrodingerSign::standard;
  const auto standard = residual_schrodinger({}, {}, {}, {}, opts);
  CHECK(standard.max_rel == doctest::Approx(1.0 / 3.0).epsilon(1e-2));
}

TEST_CASE("printed wave function is reported") {
  SchrodingerOptions opts;
  opts.form = WaveForm::printed;
  const auto r = residual_schrodinger({}, {}, {}, {}, opts);
  CHECK(r.label == "schrodinger/printed_wavefunction");
  CHECK(r.points.rows.size() == 41 * 11);
  CHECK(std::isfinite(r.max_rel));
}

TEST_CASE("phase gradient against velocity") {
  Region region;
  region.space = {2.0, 4.0, 3, Spacing::uniform};
  region.time = {1.0, 2.0, 2, Spacing::uniform};
  const auto r = residual_phase_gradient(region, {}, {});
  CHECK(r.points.columns ==
        std::vector<std::string>{"xi", "t", "u", "grad_x", "residual_x", "residual_y"});
  // xi = 2, t = 1 is x = y = 1.
  CHECK(r.points.rows[0][4] == doctest::Approx(-0.5).epsilon(1e-8));
  for (const auto& row : r.points.rows) {
    CHECK(row[4] == doctest::Approx(-row[0] / (4.0 * row[1])).epsilon(1e-8));
    CHECK(row[4] == row[5]);
  }
  CHECK(r.diagnostic("gradient_over_velocity_min") == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(r.diagnostic("gradient_over_velocity_max") == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("phase gradient matches on the line") {
  const auto r = residual_phase_gradient({}, {1.0, 1.0, 1}, {});
  CHECK(r.max_rel <= 1e-7);
}

TEST_CASE("march reproduces the closed form on the first three arches") {
  const PhysicalParams p;
  const SolutionConstants c;
  const auto& roots = golden::kRootsEtaDefault;
  const double arches[3][2] = {{0.5, roots[0]}, {roots[0], roots[1]}, {roots[1], roots[2]}};
  for (int k = 0; k < 3; ++k) {
    CAPTURE(k);
    const double width = arches[k][1] - arches[k][0];
    const double lo = k == 0 ? 0.5 : arches[k][0] + 0.01 * width;
    const double hi = arches[k][1] - 0.01 * width;
    const auto s = ode5_oracle_march(lo, hi, p, c);
    const auto eta = s.column("eta");
    const auto f = s.column("f");
    REQUIRE(eta.size() > 10);
    CHECK(eta.back() == hi);
    double worst = 0.0;
    for (std::size_t i = 0; i < eta.size(); ++i) {
      const double exact = simplified_shape_density(eta[i], p, c);
      worst = std::max(worst, std::abs(f[i] - exact) / exact);
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("march stops at a zero crossing") {
  CHECK_THROWS_AS(ode5_oracle_march(0.5, 4.0, {}, {}), ZeroCrossing);
}

TEST_CASE("march rejects bad intervals") {
  CHECK_THROWS_AS(ode5_oracle_march(1.0, 0.5, {}, {}), DomainError);
  CHECK_THROWS_AS(ode5_oracle_march(golden::kRootsEtaDefault[0], 4.0, {}, {}), DomainError);
}

TEST_CASE("direct quantum potential is linear in eta") {
  for (double eta : {0.5, 1.0, 2.0}) {
    CHECK(quantum_potential_direct(eta, {}, {}) == doctest::Approx(-eta / 8.0).epsilon(1e-5));
    CHECK(quantum_potential_direct(eta, {2.0, 1.0, 2}, {}) ==
          doctest::Approx(-eta / 8.0).epsilon(1e-5));
  }
  CHECK(quantum_potential_direct(1.0, {1.0, 1.0, 1}, {}) == doctest::Approx(-0.25).epsilon(1e-5));
}

TEST_CASE("direct quantum potential refuses points near zeros") {
  CHECK_THROWS_AS(quantum_potential_direct(golden::kRootsEtaDefault[0] + 1e-3, {}, {}),
                  SingularityError);
}

TEST_CASE("printed quantum potential against direct differentiation") {
  const auto r = compare_quantum_potential({0.1, 10.0, 200, Spacing::uniform}, {}, {});
  CHECK(r.diagnostic("printed_over_direct_at_eta_1") == doctest::Approx(0.606787).epsilon(1e-4));
  CHECK(r.excluded_points > 0);
  CHECK(r.points.columns ==
        std::vector<std::string>{"eta", "q_printed", "q_direct", "ratio", "difference"});
}

TEST_CASE("arch width and Newton distance") {
  const double root = golden::kRootsEtaDefault[0];
  CHECK(newton_zero_distance(root + 1e-6, {}, {}) == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(local_arch_width(root, {}) == doctest::Approx(golden::kRootsEtaDefault[1] - root).epsilon(0.3));
}

TEST_CASE("report names") {
  CHECK(std::string(equation_name(EquationId::ode5)) == "ode5");
  CHECK(std::string(equation_name(EquationId::euler_y)) == "euler_y");
  CHECK(std::string(equation_name(EquationId::phase_gradient)) == "phase_gradient");
}

}  // TEST_SUITE

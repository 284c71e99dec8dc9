#include <doctest.h>

#include <cmath>
#include <cstring>
#include <stdexcept>
#include <vector>

#include "madelung/kernels.hpp"
#include "oracle/goldens.hpp"

using namespace madelung;

namespace {

bool bitwise_equal(const SampleSeries& a, const SampleSeries& b) {
  if (a.columns != b.columns || a.rows.size() != b.rows.size() || a.excluded != b.excluded) {
    return false;
  }
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    if (a.rows[i].size() != b.rows[i].size()) return false;
    if (std::memcmp(a.rows[i].data(), b.rows[i].data(), a.rows[i].size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("grid points") {
  const std::vector<double> u = GridSpec{1.0, 2.0, 5, Spacing::uniform}.points();
  CHECK(u == std::vector<double>{1.0, 1.25, 1.5, 1.75, 2.0});
  const std::vector<double> l = GridSpec{0.1, 1000.0, 5, Spacing::log}.points();
  CHECK(l.front() == 0.1);
  CHECK(l.back() == 1000.0);
  CHECK(l[2] == doctest::Approx(10.0).epsilon(1e-14));
  CHECK_THROWS_AS((GridSpec{2.0, 1.0, 5}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{1.0, 2.0, 1}.validate()), DomainError);
  CHECK_THROWS_AS((GridSpec{0.0, 2.0, 5, Spacing::log}.validate()), DomainError);
}

TEST_CASE("sample series bookkeeping") {
  SampleSeries s;
  s.columns = {"a", "b"};
  s.add_row({1.0, 2.0});
  s.add_row({3.0, 4.0}, true);
  CHECK(s.size() == 2);
  CHECK(s.column("b") == std::vector<double>{2.0, 4.0});
  CHECK(s.excluded == std::vector<bool>{false, true});
  CHECK_THROWS_AS(s.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(s.column("c"), std::out_of_range);
}

TEST_CASE("serial and parallel shape kernels are bitwise identical") {
  std::vector<double> etas = GridSpec{0.05, 40.0, 3000, Spacing::log}.points();
  etas.push_back(golden::kRootsEtaDefault[0]);
  const PhysicalParams p;
  const SolutionConstants c;
  for (ShapeField f : {ShapeField::f, ShapeField::g, ShapeField::h, ShapeField::Q}) {
    const SampleSeries a = evaluate_shape_field(f, etas, p, c, {}, Execution::serial);
    const SampleSeries b = evaluate_shape_field(f, etas, p, c, {}, Execution::parallel);
    INFO("field " << field_name(f));
    CHECK(bitwise_equal(a, b));
  }
}

TEST_CASE("serial and parallel lab kernels are bitwise identical") {
  std::vector<LabPoint> pts;
  for (int i = 1; i <= 40; ++i) {
    for (int k = 1; k <= 10; ++k) pts.push_back({0.1 * i, 0.05 * i, 0.2 * k});
  }
  for (LabField f : {LabField::rho, LabField::u, LabField::v, LabField::S, LabField::psi_re,
                     LabField::psi_im}) {
    const SampleSeries a = evaluate_lab_field(f, pts, {}, {}, {}, Execution::serial);
    const SampleSeries b = evaluate_lab_field(f, pts, {}, {}, {}, Execution::parallel);
    INFO("field " << field_name(f));
    CHECK(bitwise_equal(a, b));
    CHECK(a.columns == std::vector<std::string>{"x", "y", "t", field_name(f)});
  }
}

TEST_CASE("shape field columns") {
  const std::vector<double> etas{1.0, 2.0};
  CHECK(evaluate_shape_field(ShapeField::f, etas, {}, {}).columns ==
        std::vector<std::string>{"eta", "f"});
  CHECK(evaluate_shape_field(ShapeField::Q, etas, {}, {}).columns ==
        std::vector<std::string>{"eta", "Q", "flag"});
}

TEST_CASE("Q rows at a pole are flagged") {
  const std::vector<double> etas{1.0, golden::kRootsEtaDefault[1], 6.0};
  const SampleSeries s = evaluate_shape_field(ShapeField::Q, etas, {}, {});
  CHECK(s.excluded == std::vector<bool>{false, true, false});
  CHECK(std::isnan(s.rows[1][1]));
  CHECK(s.rows[1][2] == 1.0);
  CHECK(s.rows[0][2] == 0.0);
}

TEST_CASE("lab fields match the scalar evaluators") {
  const std::vector<LabPoint> pts{{0.5, 0.5, 1.0}, {1.0, 2.0, 3.0}};
  const SampleSeries rho = evaluate_lab_field(LabField::rho, pts, {}, {});
  const SampleSeries s = evaluate_lab_field(LabField::S, pts, {}, {});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK(rho.rows[i][3] == density(pts[i], {}, {}));
    CHECK(s.rows[i][3] == phase(pts[i], {}));
  }
}

TEST_CASE("parallel loop propagates exceptions") {
  CHECK_THROWS_AS(for_each_index(100, Execution::parallel,
                                 [](std::size_t i) {
                                   if (i == 37) throw std::runtime_error("boom");
                                 }),
                  std::runtime_error);
  std::vector<double> etas{1.0, -1.0};
  CHECK_THROWS_AS(evaluate_shape_field(ShapeField::f, etas, {}, {}), DomainError);
  CHECK(max_threads() >= 1);
}

}  // TEST_SUITE

#pragma once

// Data-parallel kernels. Every kernel has a serial reference path selected by
// Execution::serial; the parallel path uses a static OpenMP schedule, writes
// each result to its own slot and never reduces in parallel, so both paths are
// bitwise identical.

#include <cstddef>
#include <exception>
#include <span>

#include "madelung/core.hpp"
#include "madelung/grid.hpp"

namespace madelung {

enum class Execution { serial, parallel };

// Calls body(i) for i in [0, n). In parallel mode the first exception thrown
// by any iteration is rethrown after the loop.
template <class Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(madelung_for_each_index)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

int max_threads();

enum class ShapeField { f, g, h, Q };
enum class LabField { rho, u, v, S, psi_re, psi_im };

const char* field_name(ShapeField field);
const char* field_name(LabField field);

// Columns: eta, <field>; the Q field adds a "flag" column set to 1 on rows
// inside the pole exclusion radius (value NaN).
SampleSeries evaluate_shape_field(ShapeField field, std::span<const double> etas,
                                  const PhysicalParams& params, const SolutionConstants& consts,
                                  const EvalAccuracy& acc = {},
                                  Execution exec = Execution::parallel,
                                  double pole_exclusion = kDefaultPoleExclusion);

// Columns: x, y, t, <field>.
SampleSeries evaluate_lab_field(LabField field, std::span<const LabPoint> points,
                                const PhysicalParams& params, const SolutionConstants& consts,
                                const EvalAccuracy& acc = {},
                                Execution exec = Execution::parallel);

}  // namespace madelung

#include "madelung/kernels.hpp"

#include <cmath>
#include <limits>

#include <omp.h>

namespace madelung {

int max_threads() { return omp_get_max_threads(); }

const char* field_name(ShapeField field) {
  switch (field) {
    case ShapeField::f: return "f";
    case ShapeField::g: return "g";
    case ShapeField::h: return "h";
    case ShapeField::Q: return "Q";
  }
  return "?";
}

const char* field_name(LabField field) {
  switch (field) {
    case LabField::rho: return "rho";
    case LabField::u: return "u";
    case LabField::v: return "v";
    case LabField::S: return "S";
    case LabField::psi_re: return "psi_re";
    case LabField::psi_im: return "psi_im";
  }
  return "?";
}

SampleSeries evaluate_shape_field(ShapeField field, std::span<const double> etas,
                                  const PhysicalParams& params, const SolutionConstants& consts,
                                  const EvalAccuracy& acc, Execution exec, double pole_exclusion) {
  params.validate();
  consts.validate();
  acc.validate();
  const std::size_t n = etas.size();
  std::vector<double> values(n);
  std::vector<char> flagged(n, 0);
  for_each_index(n, exec, [&](std::size_t i) {
    const double eta = etas[i];
    switch (field) {
      case ShapeField::f:
        values[i] = simplified_shape_density(eta, params, consts, acc);
        break;
      case ShapeField::g:
        values[i] = shape_velocity_split(SimilarityPoint(eta).eta(), consts).g;
        break;
      case ShapeField::h:
        values[i] = shape_velocity_split(SimilarityPoint(eta).eta(), consts).h;
        break;
      case ShapeField::Q:
        try {
          values[i] = quantum_potential_closed(eta, params, consts, pole_exclusion, acc);
        } catch (const SingularityError&) {
          values[i] = std::numeric_limits<double>::quiet_NaN();
          flagged[i] = 1;
        }
        break;
    }
  });

  SampleSeries out;
  out.columns = {"eta", field_name(field)};
  if (field == ShapeField::Q) out.columns.push_back("flag");
  out.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> row{etas[i], values[i]};
    if (field == ShapeField::Q) row.push_back(flagged[i] ? 1.0 : 0.0);
    out.add_row(std::move(row), flagged[i] != 0);
  }
  return out;
}

SampleSeries evaluate_lab_field(LabField field, std::span<const LabPoint> points,
                                const PhysicalParams& params, const SolutionConstants& consts,
                                const EvalAccuracy& acc, Execution exec) {
  params.validate();
  consts.validate();
  acc.validate();
  const std::size_t n = points.size();
  std::vector<double> values(n);
  for_each_index(n, exec, [&](std::size_t i) {
    const LabPoint& p = points[i];
    switch (field) {
      case LabField::rho: values[i] = density(p, params, consts, acc); break;
      case LabField::u: values[i] = velocity(p, params, consts).u; break;
      case LabField::v: values[i] = velocity(p, params, consts).v; break;
      case LabField::S: values[i] = phase(p, params); break;
      case LabField::psi_re: values[i] = wavefunction_canonical(p, params, consts, acc).real(); break;
      case LabField::psi_im: values[i] = wavefunction_canonical(p, params, consts, acc).imag(); break;
    }
  });
  SampleSeries out;
  out.columns = {"x", "y", "t", field_name(field)};
  out.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.add_row({points[i].x, points[i].y, points[i].t, values[i]});
  return out;
}

}  // namespace madelung

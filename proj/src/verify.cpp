#include "madelung/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

namespace madelung::verify {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Coords = std::array<double, 3>;

struct PointResult {
  std::vector<double> row;
  double abs = 0.0;
  double scale = 0.0;
  bool excluded = false;
};

double relative(double abs, double scale) {
  if (abs == 0.0) return 0.0;
  return scale > 0.0 ? abs / scale : std::numeric_limits<double>::infinity();
}

void collect(ResidualReport& report, std::vector<std::string> columns,
             std::vector<PointResult>& results) {
  report.points.columns = std::move(columns);
  for (auto& r : results) {
    if (r.excluded) {
      ++report.excluded_points;
    } else {
      report.max_abs = std::max(report.max_abs, r.abs);
      report.max_rel = std::max(report.max_rel, relative(r.abs, r.scale));
    }
    report.points.add_row(std::move(r.row), r.excluded);
  }
}

double max_abs_of(const std::vector<PointResult>& results) {
  double m = 0.0;
  for (const auto& r : results) {
    if (!r.excluded) m = std::max(m, r.abs);
  }
  return m;
}

double richardson(double coarse, double fine) {
  if (fine == 0.0) return coarse == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  return coarse / fine;
}

void check_richardson(const ResidualReport& r) {
  if (r.richardson_ratio > 10.0) {
    throw StepTooLarge(r.label + ": halving the finite-difference step changed the residual by " +
                       std::to_string(r.richardson_ratio) + "x");
  }
}

// Lab-frame fields as functions of d Cartesian coordinates.
class LabFields {
 public:
  LabFields(const PhysicalParams& params, const SolutionConstants& consts, const EvalAccuracy& acc)
      : params_(params), consts_(consts), acc_(acc), d_(params.dimension) {}

  int dimension() const { return d_; }

  Coords place(double xi) const {
    Coords c{0.0, 0.0, 0.0};
    for (int i = 0; i < d_; ++i) c[i] = xi / d_;
    return c;
  }

  double xi(const Coords& c) const {
    double s = 0.0;
    for (int i = 0; i < d_; ++i) s += c[i];
    return s;
  }

  double rho(const Coords& c, double t) const {
    return density(RayPoint{xi(c), t}, params_, consts_, acc_);
  }
  double u(const Coords& c, double t) const {
    return velocity_component(RayPoint{xi(c), t}, params_, consts_);
  }
  double sqrt_rho(const Coords& c, double t) const { return std::sqrt(rho(c, t)); }

  // Laplacian of sqrt(rho) over sqrt(rho).
  double bohm(const Coords& c, double t, double h) const {
    const double s0 = sqrt_rho(c, t);
    double lap = 0.0;
    for (int j = 0; j < d_; ++j) {
      lap += (sqrt_rho(shift(c, j, h), t) - 2.0 * s0 + sqrt_rho(shift(c, j, -h), t)) / (h * h);
    }
    return lap / s0;
  }

  ComplexAmplitude psi(const Coords& c, double t, WaveForm form) const {
    const RayPoint p{xi(c), t};
    return form == WaveForm::canonical ? wavefunction_canonical(p, params_, consts_, acc_)
                                       : wavefunction_printed(p, params_, consts_, acc_);
  }

  static Coords shift(Coords c, int axis, double h) {
    c[axis] += h;
    return c;
  }

 private:
  PhysicalParams params_;
  SolutionConstants consts_;
  EvalAccuracy acc_;
  int d_;
};

struct LabGrid {
  std::vector<double> xi;
  std::vector<double> t;
  std::size_t size() const { return xi.size() * t.size(); }
  double xi_at(std::size_t k) const { return xi[k / t.size()]; }
  double t_at(std::size_t k) const { return t[k % t.size()]; }
};

LabGrid make_lab_grid(const Region& region) {
  region.validate();
  return {region.space.points(), region.time.points()};
}

bool near_lab_zero(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                   const EvalAccuracy& acc) {
  return newton_zero_distance(eta, params, consts, acc) <
         kLabZeroExclusion * local_arch_width(eta, params);
}

PointResult continuity_point(const LabFields& lab, double xi, double t, double h) {
  const Coords c = lab.place(xi);
  const double rt = (lab.rho(c, t + h) - lab.rho(c, t - h)) / (2.0 * h);
  double div = 0.0;
  double scale = std::abs(rt);
  for (int i = 0; i < lab.dimension(); ++i) {
    const Coords cp = LabFields::shift(c, i, h);
    const Coords cm = LabFields::shift(c, i, -h);
    const double term = (lab.rho(cp, t) * lab.u(cp, t) - lab.rho(cm, t) * lab.u(cm, t)) / (2.0 * h);
    div += term;
    scale = std::max(scale, std::abs(term));
  }
  const double res = rt + div;
  return {{}, std::abs(res), scale, false};
}

PointResult euler_point(const LabFields& lab, const PhysicalParams& params, int axis, double xi,
                        double t, double h, double hq) {
  const Coords c = lab.place(xi);
  const double ut = (lab.u(c, t + h) - lab.u(c, t - h)) / (2.0 * h);
  double adv = 0.0;
  for (int j = 0; j < lab.dimension(); ++j) {
    const double du = (lab.u(LabFields::shift(c, j, h), t) - lab.u(LabFields::shift(c, j, -h), t)) /
                      (2.0 * h);
    adv += lab.u(c, t) * du;
  }
  const double dq = (lab.bohm(LabFields::shift(c, axis, hq), t, hq) -
                     lab.bohm(LabFields::shift(c, axis, -hq), t, hq)) /
                    (2.0 * hq);
  const double q = quantum_prefactor(params) * dq;
  const double res = ut + adv - q;
  return {{}, std::abs(res), std::max({std::abs(ut), std::abs(adv), std::abs(q)}), false};
}

PointResult schrodinger_point(const LabFields& lab, const PhysicalParams& params,
                              const SchrodingerOptions& opts, double xi, double t, double h) {
  const Coords c = lab.place(xi);
  const ComplexAmplitude p0 = lab.psi(c, t, opts.form);
  ComplexAmplitude lap{0.0, 0.0};
  for (int j = 0; j < lab.dimension(); ++j) {
    lap += (lab.psi(LabFields::shift(c, j, h), t, opts.form) - 2.0 * p0 +
            lab.psi(LabFields::shift(c, j, -h), t, opts.form)) /
           (h * h);
  }
  const ComplexAmplitude pt =
      (lab.psi(c, t + h, opts.form) - lab.psi(c, t - h, opts.form)) / (2.0 * h);
  const double k = 2.0 * params.m / params.hbar;
  const double sigma = opts.sign == SchrodingerSign::as_printed ? -1.0 : 1.0;
  const ComplexAmplitude res = lap + ComplexAmplitude(0.0, sigma * k) * pt;
  return {{}, std::abs(res), std::abs(lap) + k * std::abs(pt), false};
}

// Runs `point(xi, t, step_scale)` over the grid at the requested step and, if
// enabled, at half the step.
template <class PointFn>
ResidualReport lab_report(EquationId id, std::string label, const LabGrid& grid,
                          const PhysicalParams& params, const SolutionConstants& consts,
                          const EvalAccuracy& acc, const FdOptions& fd, Execution exec,
                          PointFn&& point) {
  ResidualReport report;
  report.equation = id;
  report.label = std::move(label);
  std::vector<PointResult> coarse(grid.size());
  std::vector<PointResult> fine(fd.richardson ? grid.size() : 0);
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    const double xi = grid.xi_at(k);
    const double t = grid.t_at(k);
    const double eta = eta_of(RayPoint{xi, t}).eta();
    PointResult r;
    if (near_lab_zero(eta, params, consts, acc)) {
      r.excluded = true;
      r.abs = kNaN;
    } else {
      r = point(xi, t, 1.0);
      if (fd.richardson) fine[k] = point(xi, t, 0.5);
    }
    r.row = {xi, t, eta, r.abs, r.excluded ? kNaN : relative(r.abs, r.scale)};
    coarse[k] = std::move(r);
    if (fd.richardson) fine[k].excluded = coarse[k].excluded;
  });
  if (fd.richardson) {
    report.richardson_ratio = richardson(max_abs_of(coarse), max_abs_of(fine));
    double fine_rel = 0.0;
    for (const auto& r : fine) {
      if (!r.excluded) fine_rel = std::max(fine_rel, relative(r.abs, r.scale));
    }
    report.diagnostics.emplace_back("max_rel_half_step", fine_rel);
  }
  collect(report, {"xi", "t", "eta", "residual", "rel"}, coarse);
  return report;
}

}  // namespace

const char* equation_name(EquationId id) {
  switch (id) {
    case EquationId::ode5: return "ode5";
    case EquationId::ode_system4: return "ode_system4";
    case EquationId::continuity: return "continuity";
    case EquationId::euler_x: return "euler_x";
    case EquationId::euler_y: return "euler_y";
    case EquationId::schrodinger: return "schrodinger";
    case EquationId::phase_gradient: return "phase_gradient";
    case EquationId::quantum_potential: return "quantum_potential";
  }
  return "unknown";
}

ResidualReport::ResidualReport() : richardson_ratio(kNaN) {}

double ResidualReport::diagnostic(const std::string& name) const {
  for (const auto& [key, value] : diagnostics) {
    if (key == name) return value;
  }
  throw std::out_of_range("ResidualReport: no diagnostic named " + name);
}

void Region::validate() const {
  space.validate();
  time.validate();
  if (!(space.start > 0.0)) throw DomainError("Region: coordinate sum must stay > 0");
  if (!(time.start > 0.0)) throw DomainError("Region: t must stay > 0");
}

void FdOptions::validate() const {
  if (!(step > 0.0) || !(quantum_step > 0.0)) throw DomainError("FdOptions: steps must be > 0");
}

double newton_zero_distance(double eta, const PhysicalParams& params,
                            const SolutionConstants& consts, const EvalAccuracy& acc) {
  const NumeratorJet w = density_numerator_jet(eta, params, consts, acc);
  if (w.dw == 0.0) return w.w == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(w.w / w.dw);
}

double local_arch_width(double eta, const PhysicalParams& params) {
  const double slope = 2.0 * bessel_argument(eta, params) / eta;
  return std::numbers::pi / slope;
}

ResidualReport residual_ode5(const GridSpec& grid, const PhysicalParams& params,
                             const SolutionConstants& consts, const EvalAccuracy& acc,
                             Execution exec) {
  params.validate();
  consts.validate();
  const std::vector<double> etas = grid.points();
  const double m = params.m;
  const double k3 = m * m / (params.dimension * params.hbar * params.hbar);
  std::vector<PointResult> results(etas.size());
  for_each_index(etas.size(), exec, [&](std::size_t i) {
    const double eta = etas[i];
    const ShapeJet j = shape_density_jet(eta, params, consts, acc);
    const double t1 = 2.0 * j.d2f * j.f;
    const double t2 = j.df * j.df;
    const double t3 = k3 * eta * eta * j.f * j.f;
    const double res = t1 - t2 + t3;
    const double scale = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
    results[i] = {{eta, j.f, res, relative(std::abs(res), scale)}, std::abs(res), scale, false};
  });
  ResidualReport report;
  report.equation = EquationId::ode5;
  report.label = "ode5";
  collect(report, {"eta", "f", "residual", "rel"}, results);
  return report;
}

double bohm_shape_term(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                       const EvalAccuracy& acc) {
  const ShapeJet j = shape_density_jet(eta, params, consts, acc);
  const double r = j.df / j.f;
  const double bracket = 0.5 * r * r * r - r * j.d2f / j.f + 0.5 * j.d3f / j.f;
  return quantum_prefactor(params) * bracket;
}

std::vector<ResidualReport> residual_ode_system4(const GridSpec& grid, const PhysicalParams& params,
                                                 const SolutionConstants& consts,
                                                 const EvalAccuracy& acc, Execution exec) {
  params.validate();
  consts.validate();
  const std::vector<double> etas = grid.points();
  const double d = params.dimension;
  const double pref = quantum_prefactor(params);
  std::vector<PointResult> cont(etas.size());
  std::vector<PointResult> mom(etas.size());
  for_each_index(etas.size(), exec, [&](std::size_t i) {
    const double eta = etas[i];
    const ShapeJet j = shape_density_jet(eta, params, consts, acc);
    const double g = shape_velocity_component(eta, params, consts);
    const double dg = 0.5 / d;

    // -f/2 - f' eta / 2 + sum_i (f' g_i + f g_i')
    const double a1 = -0.5 * j.f;
    const double a2 = -0.5 * j.df * eta;
    const double a3 = d * j.df * g;
    const double a4 = d * j.f * dg;
    const double rc = a1 + a2 + a3 + a4;
    const double sc = std::max({std::abs(a1), std::abs(a2), std::abs(a3), std::abs(a4)});
    cont[i] = {{eta, rc, relative(std::abs(rc), sc)}, std::abs(rc), sc, false};

    if (newton_zero_distance(eta, params, consts, acc) < kShapeZeroExclusion) {
      mom[i] = {{eta, kNaN, kNaN}, kNaN, 0.0, true};
      return;
    }
    // -g/2 - g' eta / 2 + sum_j g_j g' = bohm term
    const double b1 = -0.5 * g;
    const double b2 = -0.5 * dg * eta;
    const double b3 = d * g * dg;
    const double r = j.df / j.f;
    const double q1 = pref * 0.5 * r * r * r;
    const double q2 = -pref * r * j.d2f / j.f;
    const double q3 = pref * 0.5 * j.d3f / j.f;
    const double rm = b1 + b2 + b3 - (q1 + q2 + q3);
    const double sm = std::max({std::abs(b1), std::abs(b2), std::abs(b3), std::abs(q1),
                                std::abs(q2), std::abs(q3)});
    mom[i] = {{eta, rm, relative(std::abs(rm), sm)}, std::abs(rm), sm, false};
  });

  std::vector<ResidualReport> out(3);
  out[0].label = "ode_system4/continuity_shape";
  out[1].label = "ode_system4/momentum_g";
  out[2].label = "ode_system4/momentum_h";
  for (auto& r : out) r.equation = EquationId::ode_system4;
  // Under the symmetric split the g and h equations are the same expression.
  std::vector<PointResult> mom_h = mom;
  collect(out[0], {"eta", "residual", "rel"}, cont);
  collect(out[1], {"eta", "residual", "rel"}, mom);
  collect(out[2], {"eta", "residual", "rel"}, mom_h);
  return out;
}

std::vector<ResidualReport> residual_pde_lab(const Region& region, const PhysicalParams& params,
                                             const SolutionConstants& consts, const FdOptions& fd,
                                             const EvalAccuracy& acc, Execution exec) {
  params.validate();
  consts.validate();
  fd.validate();
  const LabGrid grid = make_lab_grid(region);
  const LabFields lab(params, consts, acc);
  if (region.time.start - 2.0 * fd.step <= 0.0) {
    throw DomainError("residual_pde_lab: time stencil reaches t <= 0");
  }

  std::vector<ResidualReport> out;
  out.push_back(lab_report(EquationId::continuity, "continuity", grid, params, consts, acc, fd,
                           exec, [&](double xi, double t, double s) {
                             return continuity_point(lab, xi, t, fd.step * s);
                           }));
  const int axes = std::min(params.dimension, 2);
  for (int axis = 0; axis < axes; ++axis) {
    const EquationId id = axis == 0 ? EquationId::euler_x : EquationId::euler_y;
    out.push_back(lab_report(id, equation_name(id), grid, params, consts, acc, fd, exec,
                             [&](double xi, double t, double s) {
                               return euler_point(lab, params, axis, xi, t, fd.step * s,
                                                  fd.quantum_step * s);
                             }));
  }
  for (const auto& r : out) check_richardson(r);
  return out;
}

ResidualReport residual_schrodinger(const Region& region, const PhysicalParams& params,
                                    const SolutionConstants& consts, const FdOptions& fd,
                                    const SchrodingerOptions& opts, const EvalAccuracy& acc,
                                    Execution exec) {
  params.validate();
  consts.validate();
  fd.validate();
  const LabGrid grid = make_lab_grid(region);
  const LabFields lab(params, consts, acc);
  std::string label = "schrodinger";
  if (opts.form == WaveForm::printed) label += "/printed_wavefunction";
  if (opts.sign == SchrodingerSign::standard) label += "/standard_sign";
  ResidualReport r = lab_report(EquationId::schrodinger, label, grid, params, consts, acc, fd, exec,
                                [&](double xi, double t, double s) {
                                  return schrodinger_point(lab, params, opts, xi, t, fd.step * s);
                                });
  check_richardson(r);
  return r;
}

ResidualReport residual_phase_gradient(const Region& region, const PhysicalParams& params,
                                       const SolutionConstants& consts, Execution exec) {
  params.validate();
  consts.validate();
  const LabGrid grid = make_lab_grid(region);
  const LabFields lab(params, consts, {});
  const double hm = params.hbar / params.m;
  std::vector<PointResult> results(grid.size());
  std::vector<double> ratios(grid.size());
  for_each_index(grid.size(), exec, [&](std::size_t k) {
    const double xi = grid.xi_at(k);
    const double t = grid.t_at(k);
    const Coords c = lab.place(xi);
    const double u = lab.u(c, t);
    const double h = 1e-4 * std::max(1.0, xi);
    double comp[2] = {0.0, 0.0};
    double grad[2] = {0.0, 0.0};
    const int axes = std::min(params.dimension, 2);
    for (int axis = 0; axis < axes; ++axis) {
      const double sp = phase(RayPoint{lab.xi(LabFields::shift(c, axis, h)), t}, params);
      const double sm = phase(RayPoint{lab.xi(LabFields::shift(c, axis, -h)), t}, params);
      grad[axis] = hm * (sp - sm) / (2.0 * h);
      comp[axis] = u - grad[axis];
    }
    if (axes == 1) comp[1] = comp[0];
    const double abs = std::max(std::abs(comp[0]), std::abs(comp[1]));
    const double scale = std::max(std::abs(u), std::abs(grad[0]));
    ratios[k] = grad[0] / u;
    results[k] = {{xi, t, u, grad[0], comp[0], comp[1]}, abs, scale, false};
  });
  ResidualReport report;
  report.equation = EquationId::phase_gradient;
  report.label = "phase_gradient";
  collect(report, {"xi", "t", "u", "grad_x", "residual_x", "residual_y"}, results);
  std::vector<double> finite;
  for (double r : ratios) {
    if (std::isfinite(r)) finite.push_back(r);
  }
  if (!finite.empty()) {
    const auto [lo, hi] = std::minmax_element(finite.begin(), finite.end());
    report.diagnostics.emplace_back("gradient_over_velocity_min", *lo);
    report.diagnostics.emplace_back("gradient_over_velocity_max", *hi);
  }
  return report;
}

double quantum_potential_direct(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts, double fd_step,
                                const EvalAccuracy& acc) {
  if (!(fd_step > 0.0)) throw DomainError("quantum_potential_direct: fd_step must be > 0");
  if (!(eta - 2.0 * fd_step > 0.0)) {
    throw DomainError("quantum_potential_direct: stencil reaches eta <= 0");
  }
  if (newton_zero_distance(eta, params, consts, acc) < 10.0 * fd_step) {
    throw SingularityError("quantum_potential_direct: eta too close to a zero of f", eta);
  }
  const double h = fd_step;
  const auto root_f = [&](double e) {
    return std::sqrt(simplified_shape_density(e, params, consts, acc));
  };
  const auto bohm = [&](double e) {
    return (root_f(e + h) - 2.0 * root_f(e) + root_f(e - h)) / (h * h * root_f(e));
  };
  return quantum_prefactor(params) * (bohm(eta + h) - bohm(eta - h)) / (2.0 * h);
}

ResidualReport compare_quantum_potential(const GridSpec& grid, const PhysicalParams& params,
                                         const SolutionConstants& consts, double fd_step,
                                         const EvalAccuracy& acc, Execution exec) {
  params.validate();
  consts.validate();
  const std::vector<double> etas = grid.points();
  std::vector<PointResult> results(etas.size());
  std::vector<double> ratios(etas.size(), kNaN);
  for_each_index(etas.size(), exec, [&](std::size_t i) {
    const double eta = etas[i];
    double printed = kNaN;
    double direct = kNaN;
    try {
      printed = quantum_potential_closed(eta, params, consts, kDefaultPoleExclusion, acc);
      direct = quantum_potential_direct(eta, params, consts, fd_step, acc);
    } catch (const SingularityError&) {
      results[i] = {{eta, printed, direct, kNaN, kNaN}, kNaN, 0.0, true};
      return;
    }
    const double diff = printed - direct;
    ratios[i] = printed / direct;
    results[i] = {{eta, printed, direct, ratios[i], diff},
                  std::abs(diff),
                  std::max(std::abs(printed), std::abs(direct)),
                  false};
  });
  ResidualReport report;
  report.equation = EquationId::quantum_potential;
  report.label = "quantum_potential";
  collect(report, {"eta", "q_printed", "q_direct", "ratio", "difference"}, results);
  std::vector<double> finite;
  for (double r : ratios) {
    if (std::isfinite(r)) finite.push_back(r);
  }
  if (!finite.empty()) {
    const auto [lo, hi] = std::minmax_element(finite.begin(), finite.end());
    report.diagnostics.emplace_back("printed_over_direct_min", *lo);
    report.diagnostics.emplace_back("printed_over_direct_max", *hi);
  }
  try {
    const double at1 = quantum_potential_closed(1.0, params, consts, kDefaultPoleExclusion, acc) /
                       quantum_potential_direct(1.0, params, consts, fd_step, acc);
    report.diagnostics.emplace_back("printed_over_direct_at_eta_1", at1);
  } catch (const SingularityError&) {
  }
  return report;
}

SampleSeries ode5_oracle_march(double eta0, double eta1, const PhysicalParams& params,
                               const SolutionConstants& consts, const MarchOptions& opts,
                               const EvalAccuracy& acc) {
  params.validate();
  consts.validate();
  if (!(eta0 > 0.0) || !(eta1 > eta0)) {
    throw DomainError("ode5_oracle_march: need 0 < eta0 < eta1");
  }
  const ShapeJet start = shape_density_jet(eta0, params, consts, acc);
  if (!(start.f > 1e-10)) {
    throw DomainError("ode5_oracle_march: f(eta0) must exceed 1e-10 (start away from a zero)");
  }
  const double k = params.m * params.m / (params.dimension * params.hbar * params.hbar);
  const auto rhs = [k](double eta, const ode::State<2>& y) -> ode::State<2> {
    if (!(y[0] > 0.0)) return {kNaN, kNaN};
    return {y[1], (y[1] * y[1] - k * eta * eta * y[0] * y[0]) / (2.0 * y[0])};
  };
  SampleSeries out;
  out.columns = {"eta", "f", "f_prime"};
  out.add_row({eta0, start.f, start.df});
  ode::StepControl ctl;
  ctl.rel_tol = opts.tol;
  ctl.initial_step = opts.initial_step;
  ode::dormand_prince<2>(rhs, eta0, ode::State<2>{start.f, start.df}, eta1, ctl,
                         [&](double eta, const ode::State<2>& y) {
                           if (y[0] < 1e-12) {
                             throw ZeroCrossing("ode5_oracle_march: f dropped below 1e-12", eta);
                           }
                           out.add_row({eta, y[0], y[1]});
                           return true;
                         });
  return out;
}

}  // namespace madelung::verify

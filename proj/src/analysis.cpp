#include "madelung/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "madelung/quadrature.hpp"
#include "madelung/verify.hpp"

namespace madelung::analysis {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

constexpr double kScanStep = 0.25;
constexpr double kExactZerosUpTo = 200.0;
constexpr double kShapeScale = pi * pi / 64.0;

double numerator_z(double z, const SolutionConstants& consts, const EvalAccuracy& acc) {
  const auto jy = specfun::bessel_jy(specfun::kQuarter, z, acc);
  return consts.c2 * jy.y - consts.c1 * jy.j;
}

double eta_of_z(double z, const PhysicalParams& params) {
  return std::sqrt(8.0 * z / (sqrt2 * params.effective_mass()));
}

struct Bracketed {
  double x;
  double width;
};

// Brent's method on a sign-changing bracket [a, b].
template <class F>
Bracketed brent(F&& f, double a, double b, double fa, double fb, double tol) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double c = b;
  double fc = fb;
  double d = b - a;
  double e = d;
  for (int iter = 0; iter < 300; ++iter) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
    const double xm = 0.5 * (c - b);
    if (fb == 0.0) return {b, 0.0};
    if (std::abs(xm) <= tol1) return {b, std::abs(c - b)};
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      const double s = fb / fa;
      double p;
      double q;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        const double qa = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
        q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
    fb = f(b);
  }
  throw ConvergenceError("brent: no convergence in 300 iterations");
}

double root_tolerance(double z) {
  return std::max(1e-12, 8.0 * std::numeric_limits<double>::epsilon() * std::abs(z));
}

// Zeros of the numerator in (z_lo, z_hi), in increasing order.
std::vector<Bracketed> zeros_in_z(double z_lo, double z_hi, const SolutionConstants& consts,
                                  const EvalAccuracy& acc, std::size_t max_roots) {
  std::vector<Bracketed> out;
  const auto w = [&](double z) { return numerator_z(z, consts, acc); };
  double a = z_lo;
  double fa = w(a);
  while (a < z_hi && out.size() < max_roots) {
    const double b = std::min(a + kScanStep, z_hi);
    const double fb = w(b);
    if (fa == 0.0) {
      if (a > z_lo) out.push_back({a, 0.0});
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      const double tol = root_tolerance(b);
      out.push_back(brent(w, a, b, fa, fb, tol));
    }
    a = b;
    fa = fb;
  }
  return out;
}

double quantum_bracket(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                       const EvalAccuracy& acc) {
  return quantum_bracket_jet(eta, params, consts, acc).w;
}

TailFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  TailFit fit;
  fit.b = sxy / sxx;
  fit.a = my - fit.b * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.a + fit.b * x[i]);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

std::string format_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// Panel boundaries in z: the exact zeros, then pi-spaced from the last one.
class PanelBoundaries {
 public:
  explicit PanelBoundaries(std::vector<double> zeros) : zeros_(std::move(zeros)) {}

  double peek() const {
    if (index_ < zeros_.size()) return zeros_[index_];
    const double base = zeros_.empty() ? 0.0 : zeros_.back();
    return base + pi * static_cast<double>(index_ - zeros_.size() + 1);
  }
  void pop() { ++index_; }

 private:
  std::vector<double> zeros_;
  std::size_t index_ = 0;
};

struct Panel {
  double a;
  double b;
  int checkpoint;  // index into the checkpoint list, or -1
};

}  // namespace

RootSet find_zeros(double lo, double hi, const PhysicalParams& params,
                   const SolutionConstants& consts, std::size_t max_roots,
                   const EvalAccuracy& acc) {
  params.validate();
  consts.validate();
  if (!(lo > 0.0) || !(hi > lo) || !std::isfinite(hi)) {
    throw DomainError("find_zeros: need 0 < lo < hi");
  }
  RootSet set;
  if (max_roots == 0) return set;
  const double z_lo = bessel_argument(lo, params);
  const double z_hi = bessel_argument(hi, params);
  for (const Bracketed& r : zeros_in_z(z_lo, z_hi, consts, acc, max_roots)) {
    const double eta = eta_of_z(r.x, params);
    const double slope = 2.0 * r.x / eta;  // dz/deta
    set.roots.push_back({eta, r.width / slope});
  }
  if (set.roots.empty()) {
    throw RangeTooNarrow("find_zeros: no zero of f in (" + format_g(lo) + ", " + format_g(hi) +
                         ")");
  }
  return set;
}

RootSet match_poles(const RootSet& roots, const PhysicalParams& params,
                    const SolutionConstants& consts, const EvalAccuracy& acc) {
  params.validate();
  consts.validate();
  if (roots.roots.empty()) throw DomainError("match_poles: empty root set");
  RootSet out = roots;
  out.matched_poles.clear();
  const auto q = [&](double eta) { return quantum_bracket(eta, params, consts, acc); };
  for (const Root& r : roots.roots) {
    const double width = verify::local_arch_width(r.eta, params);
    double delta = 1e-9 * std::max(1.0, r.eta);
    double a = r.eta - delta;
    double b = r.eta + delta;
    double fa = q(a);
    double fb = q(b);
    while ((fa < 0.0) == (fb < 0.0) && fa != 0.0 && fb != 0.0) {
      delta *= 10.0;
      if (delta > 0.25 * width) {
        throw UnmatchedRoot("match_poles: no quantum-potential pole near eta=" + format_g(r.eta));
      }
      a = r.eta - delta;
      b = r.eta + delta;
      fa = q(a);
      fb = q(b);
    }
    double pole;
    if (fa == 0.0) {
      pole = a;
    } else if (fb == 0.0) {
      pole = b;
    } else {
      pole = brent(q, a, b, fa, fb, 4.0 * std::numeric_limits<double>::epsilon() * r.eta).x;
    }
    const double sep = std::abs(pole - r.eta);
    if (sep > kUnmatchedSeparation) {
      throw UnmatchedRoot("match_poles: pole at eta=" + format_g(pole) + " is " + format_g(sep) +
                          " away from the zero of f at eta=" + format_g(r.eta));
    }
    out.matched_poles.push_back({r.eta, pole, sep});
  }
  return out;
}

std::vector<double> pole_divergence_ratios(const RootSet& roots, const PhysicalParams& params,
                                           const SolutionConstants& consts, double offset,
                                           const EvalAccuracy& acc) {
  std::vector<double> out;
  const auto& rs = roots.roots;
  for (std::size_t k = 0; k < rs.size(); ++k) {
    double mid;
    if (k + 1 < rs.size()) {
      mid = 0.5 * (rs[k].eta + rs[k + 1].eta);
    } else if (k > 0) {
      mid = 0.5 * (rs[k - 1].eta + rs[k].eta);
    } else {
      mid = rs[k].eta + 0.5 * verify::local_arch_width(rs[k].eta, params);
    }
    const double eta = rs[k].eta;
    const double q_lo = std::abs(quantum_potential_closed(eta - offset, params, consts,
                                                       kDefaultPoleExclusion, acc));
    const double q_hi = std::abs(quantum_potential_closed(eta + offset, params, consts,
                                                       kDefaultPoleExclusion, acc));
    const double q_mid =
        std::abs(quantum_potential_closed(mid, params, consts, kDefaultPoleExclusion, acc));
    out.push_back(std::min(q_lo, q_hi) / q_mid);
  }
  return out;
}

std::vector<double> root_spacings(const RootSet& roots) {
  std::vector<double> out;
  for (std::size_t k = 1; k < roots.roots.size(); ++k) {
    out.push_back(roots.roots[k].eta - roots.roots[k - 1].eta);
  }
  return out;
}

const char* tail_kind_name(TailKind kind) {
  switch (kind) {
    case TailKind::convergent: return "convergent";
    case TailKind::logarithmic: return "logarithmic";
    case TailKind::undetermined: return "undetermined";
  }
  return "undetermined";
}

double predicted_log_coefficient(const PhysicalParams& params, const SolutionConstants& consts) {
  return pi * sqrt2 * (consts.c1 * consts.c1 + consts.c2 * consts.c2) /
         (16.0 * params.effective_mass());
}

QuadratureResult integrate_density(std::span<const double> upper_limits,
                                   const PhysicalParams& params, const SolutionConstants& consts,
                                   const QuadratureOptions& opts, const EvalAccuracy& acc,
                                   Execution exec) {
  params.validate();
  consts.validate();
  if (upper_limits.empty()) throw DomainError("integrate_density: no upper limits");
  for (std::size_t i = 0; i < upper_limits.size(); ++i) {
    if (!(upper_limits[i] > 0.0) || !std::isfinite(upper_limits[i]) ||
        (i > 0 && !(upper_limits[i] > upper_limits[i - 1]))) {
      throw DomainError("integrate_density: upper limits must be positive and increasing");
    }
  }
  if (!(opts.tol > 0.0)) throw DomainError("integrate_density: tol must be > 0");
  if (opts.tail_samples < 3) throw DomainError("integrate_density: need >= 3 tail samples");

  // Checkpoints: the requested limits plus log-spaced samples over the last decade.
  const double h_last = upper_limits.back();
  std::vector<double> checkpoints(upper_limits.begin(), upper_limits.end());
  const GridSpec tail{h_last / 10.0, h_last, opts.tail_samples, Spacing::log};
  std::vector<double> tail_h = tail.points();
  tail_h.back() = h_last;
  checkpoints.insert(checkpoints.end(), tail_h.begin(), tail_h.end());
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());

  std::vector<double> zeros;
  for (const Bracketed& r : zeros_in_z(1e-6, kExactZerosUpTo, consts, acc, kAllRoots)) {
    zeros.push_back(r.x);
  }
  const double z1 = zeros.empty() ? 1.0 : zeros.front();
  const double eta1 = eta_of_z(z1, params);

  const auto f_eta = [&](double eta) { return simplified_shape_density(eta, params, consts, acc); };
  const double factor = 4.0 * kShapeScale / (sqrt2 * params.effective_mass());
  const auto w2 = [&](double z) {
    const double w = numerator_z(z, consts, acc);
    return w * w;
  };

  std::vector<PartialIntegral> at(checkpoints.size());
  std::vector<double> ck_z;
  QuadratureResult result;
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    ck_z.push_back(bessel_argument(checkpoints[i], params));
  }

  // First arch, in eta.
  std::size_t ci = 0;
  for (; ci < checkpoints.size() && checkpoints[ci] <= eta1; ++ci) {
    const auto e = quadrature::adaptive_gk15(f_eta, 0.0, checkpoints[ci], opts.tol);
    at[ci] = {checkpoints[ci], e.value, e.abs_error};
    ++result.panels;
  }
  quadrature::CompensatedSum total;
  double total_err = 0.0;
  if (ci < checkpoints.size()) {
    const auto e = quadrature::adaptive_gk15(f_eta, 0.0, eta1, opts.tol);
    total.add(e.value);
    total_err += e.abs_error;
    ++result.panels;
  }

  // Remaining arches, in z, streamed in blocks.
  PanelBoundaries bounds(zeros.empty() ? std::vector<double>{z1} : zeros);
  bounds.pop();
  double cur = z1;
  const double w_tol = opts.tol / factor;
  std::vector<Panel> block;
  std::vector<quadrature::Estimate> est;
  while (ci < checkpoints.size()) {
    block.clear();
    while (block.size() < opts.block_panels && ci < checkpoints.size()) {
      const double b = bounds.peek();
      const double cp = ck_z[ci];
      if (cp <= b) {
        block.push_back({cur, cp, static_cast<int>(ci)});
        cur = cp;
        ++ci;
        if (cp == b) bounds.pop();
      } else {
        block.push_back({cur, b, -1});
        cur = b;
        bounds.pop();
      }
    }
    est.assign(block.size(), {});
    for_each_index(block.size(), exec, [&](std::size_t i) {
      const Panel& p = block[i];
      if (p.b > p.a) est[i] = quadrature::adaptive_gk15(w2, p.a, p.b, w_tol);
    });
    for (std::size_t i = 0; i < block.size(); ++i) {
      total.add(factor * est[i].value);
      total_err += factor * est[i].abs_error;
      if (block[i].checkpoint >= 0) {
        const auto k = static_cast<std::size_t>(block[i].checkpoint);
        at[k] = {checkpoints[k], total.value(), total_err};
      }
    }
    result.panels += block.size();
  }

  for (double h : upper_limits) {
    const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), h);
    result.partial_integrals.push_back(at[static_cast<std::size_t>(it - checkpoints.begin())]);
  }
  std::vector<double> x_log;
  std::vector<double> x_inv;
  std::vector<double> y;
  for (double h : tail_h) {
    const auto it = std::lower_bound(checkpoints.begin(), checkpoints.end(), h);
    const PartialIntegral& p = at[static_cast<std::size_t>(it - checkpoints.begin())];
    result.tail_samples.push_back(p);
    x_log.push_back(std::log(h));
    x_inv.push_back(1.0 / h);
    y.push_back(p.value);
  }
  result.log_fit = fit_linear(x_log, y);
  TailFit alg = fit_linear(x_inv, y);
  alg.b = -alg.b;  // F = a - b / H
  result.algebraic_fit = alg;

  const double predicted = predicted_log_coefficient(params, consts);
  const TailFit& lf = result.log_fit;
  std::string fits = "log fit F = a + b ln H: a=" + format_g(lf.a) + " b=" + format_g(lf.b) +
                     " rms=" + format_g(lf.rms) + "; algebraic fit F = a - b/H: a=" +
                     format_g(alg.a) + " b=" + format_g(alg.b) + " rms=" + format_g(alg.rms) +
                     "; envelope prediction b=" + format_g(predicted);
  if (lf.rms < 0.5 * alg.rms) {
    result.tail_model.kind = TailKind::logarithmic;
    result.tail_model.coefficient = lf.b;
    result.verdict_note = "F(H) grows like ln H over the last decade; the data do not support a "
                          "finite integral. " + fits;
  } else if (alg.rms < 0.5 * lf.rms) {
    result.tail_model.kind = TailKind::convergent;
    result.tail_model.limit = alg.a;
    result.tail_model.rate = alg.b;
    result.verdict_note = "F(H) approaches a finite limit like 1/H over the last decade; the data "
                          "are consistent with a finite integral. " + fits;
  } else {
    result.verdict_note = "neither tail model is decisive over the last decade. " + fits;
  }
  return result;
}

const char* figure_name(FigureId id) {
  switch (id) {
    case FigureId::fig1: return "fig1";
    case FigureId::fig2: return "fig2";
    case FigureId::fig3: return "fig3";
  }
  return "unknown";
}

SampleSeries figure_series(FigureId id, const PhysicalParams& params,
                           const SolutionConstants& consts, const FigureGrids& grids,
                           const EvalAccuracy& acc, Execution exec) {
  params.validate();
  consts.validate();
  SampleSeries out;
  if (id == FigureId::fig1) {
    const std::vector<double> etas = grids.eta.points();
    PhysicalParams heavy = params;
    heavy.m = 1.0;
    PhysicalParams light = params;
    light.m = 0.5;
    std::vector<std::vector<double>> rows(etas.size());
    for_each_index(etas.size(), exec, [&](std::size_t i) {
      rows[i] = {etas[i], shape_density(etas[i], heavy, consts, acc),
                 shape_density(etas[i], light, consts, acc)};
    });
    out.columns = {"eta", "f_m1", "f_m0p5"};
    for (auto& r : rows) out.add_row(std::move(r));
  } else if (id == FigureId::fig2) {
    const std::vector<double> xs = grids.x.points();
    const std::vector<double> ts = grids.t.points();
    std::vector<std::vector<double>> rows(xs.size() * ts.size());
    for_each_index(rows.size(), exec, [&](std::size_t k) {
      const double x = xs[k / ts.size()];
      const double t = ts[k % ts.size()];
      const ComplexAmplitude psi = wavefunction_canonical(LabPoint{x, 0.0, t}, params, consts, acc);
      rows[k] = {x, t, psi.real()};
    });
    out.columns = {"x", "t", "psi_re"};
    for (auto& r : rows) out.add_row(std::move(r));
  } else {
    const std::vector<double> etas = grids.eta.points();
    std::vector<std::vector<double>> rows(etas.size());
    std::vector<char> excluded(etas.size(), 0);
    for_each_index(etas.size(), exec, [&](std::size_t i) {
      const double f = shape_density(etas[i], params, consts, acc);
      double q = std::numeric_limits<double>::quiet_NaN();
      try {
        q = quantum_potential_closed(etas[i], params, consts, kDefaultPoleExclusion, acc);
      } catch (const SingularityError&) {
        excluded[i] = 1;
      }
      rows[i] = {etas[i], f, q};
    });
    out.columns = {"eta", "f", "Q"};
    for (std::size_t i = 0; i < rows.size(); ++i) out.add_row(std::move(rows[i]), excluded[i] != 0);
  }
  return out;
}

}  // namespace madelung::analysis

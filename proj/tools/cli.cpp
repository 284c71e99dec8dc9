#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "csv.hpp"
#include "madelung/analysis.hpp"
#include "madelung/kernels.hpp"
#include "madelung/verify.hpp"

namespace madelung::cli {

namespace {

using verify::ResidualReport;

// Flags recorded as key/value settings and applied after the config file.
class Overrides {
 public:
  void add(CLI::App& app, const std::string& flag, const std::string& key,
           const std::string& help) {
    auto slot = std::make_shared<std::string>();
    CLI::Option* opt = app.add_option(flag, *slot, help);
    entries_.push_back({key, slot, opt});
  }
  void apply(RunConfig& cfg) const {
    for (const auto& e : entries_) {
      if (e.opt->count() > 0) apply_setting(cfg, e.key, *e.value);
    }
  }

 private:
  struct Entry {
    std::string key;
    std::shared_ptr<std::string> value;
    CLI::Option* opt;
  };
  std::vector<Entry> entries_;
};

struct OutputSink {
  std::ofstream file;
  std::ostream* stream;
};

void open_output(OutputSink& sink, const std::string& path, std::ostream& fallback) {
  if (path.empty()) {
    sink.stream = &fallback;
    return;
  }
  sink.file.open(path);
  if (!sink.file) throw ConfigError("cannot open output file '" + path + "'");
  sink.stream = &sink.file;
}

std::string fmt(double v) {
  const std::string s = format_number(v);
  return s.empty() ? "nan" : s;
}

// ---- eval ------------------------------------------------------------------

const std::vector<std::string> kFields{"f", "g", "h", "rho", "u", "v", "S", "psi_re", "psi_im", "Q"};

int cmd_eval(const RunConfig& cfg, const std::string& field, std::ostream& out) {
  SampleSeries series;
  const auto shape = [&](ShapeField f) {
    const AxisSpec eta = cfg.axis_or("eta", {GridSpec{0.1, 50.0, 1000, Spacing::log}, 0.0});
    const std::vector<double> etas = eta.values();
    return evaluate_shape_field(f, etas, cfg.params, cfg.consts, cfg.accuracy);
  };
  const auto lab = [&](LabField f) {
    const std::vector<double> xs = cfg.axis_or("x", {GridSpec{0.1, 5.0, 50}, 0.0}).values();
    const std::vector<double> ys = cfg.axis_or("y", {std::nullopt, 0.0}).values();
    const std::vector<double> ts = cfg.axis_or("t", {std::nullopt, 1.0}).values();
    std::vector<LabPoint> pts;
    for (double x : xs) {
      for (double y : ys) {
        for (double t : ts) pts.push_back({x, y, t});
      }
    }
    return evaluate_lab_field(f, pts, cfg.params, cfg.consts, cfg.accuracy);
  };
  if (field == "f") series = shape(ShapeField::f);
  else if (field == "g") series = shape(ShapeField::g);
  else if (field == "h") series = shape(ShapeField::h);
  else if (field == "Q") series = shape(ShapeField::Q);
  else if (field == "rho") series = lab(LabField::rho);
  else if (field == "u") series = lab(LabField::u);
  else if (field == "v") series = lab(LabField::v);
  else if (field == "S") series = lab(LabField::S);
  else if (field == "psi_re") series = lab(LabField::psi_re);
  else series = lab(LabField::psi_im);

  OutputSink sink;
  open_output(sink, cfg.output_path, out);
  write_csv(*sink.stream, to_table(series));
  return kExitOk;
}

// ---- verify ----------------------------------------------------------------

struct Threshold {
  enum Kind { relative, absolute, none } kind = none;
  double limit = 0.0;
};

Threshold threshold_for(const ResidualReport& r) {
  using verify::EquationId;
  switch (r.equation) {
    case EquationId::ode5: return {Threshold::relative, 1e-8};
    case EquationId::ode_system4:
      if (r.label == "ode_system4/continuity_shape") return {Threshold::absolute, 1e-12};
      return {Threshold::relative, 1e-6};
    case EquationId::continuity: return {Threshold::relative, 1e-5};
    case EquationId::euler_x:
    case EquationId::euler_y: return {Threshold::relative, 1e-4};
    case EquationId::schrodinger: return {Threshold::relative, 1e-4};
    case EquationId::phase_gradient:
    case EquationId::quantum_potential: return {};
  }
  return {};
}

bool print_summary(std::ostream& out, const ResidualReport& r) {
  out << r.label << ": points=" << r.points.size() << " excluded=" << r.excluded_points
      << " max_abs=" << fmt(r.max_abs) << " max_rel=" << fmt(r.max_rel);
  if (!std::isnan(r.richardson_ratio)) out << " richardson=" << fmt(r.richardson_ratio);
  for (const auto& [name, value] : r.diagnostics) out << ' ' << name << '=' << fmt(value);
  const Threshold th = threshold_for(r);
  bool pass = true;
  if (th.kind == Threshold::none) {
    out << " -> reported\n";
    return true;
  }
  const double measured = th.kind == Threshold::relative ? r.max_rel : r.max_abs;
  pass = measured <= th.limit;
  out << " -> " << (pass ? "PASS" : "FAIL") << " ("
      << (th.kind == Threshold::relative ? "max_rel" : "max_abs") << " <= " << fmt(th.limit)
      << ")\n";
  return pass;
}

std::string output_name_for(const std::string& path, const std::string& label, bool multiple) {
  if (!multiple) return path;
  std::string tag = label;
  for (char& c : tag) {
    if (c == '/') c = '.';
  }
  const auto dot = path.rfind('.');
  const auto slash = path.rfind('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
    return path + "." + tag;
  }
  return path.substr(0, dot) + "." + tag + path.substr(dot);
}

int cmd_verify(const RunConfig& cfg, const std::string& which, const std::string& sign,
               const std::string& form, std::ostream& out) {
  const GridSpec ode_grid =
      cfg.axis_or("eta", {GridSpec{0.1, 50.0, 2000, Spacing::log}, 0.0}).require_grid("eta");
  verify::Region region;
  region.space = cfg.axis_or("xi", {region.space, 0.0}).require_grid("xi");
  region.time = cfg.axis_or("t", {region.time, 0.0}).require_grid("t");
  const GridSpec q_grid =
      cfg.axis_or("q_eta", {GridSpec{0.1, 10.0, 200, Spacing::uniform}, 0.0}).require_grid("q_eta");
  verify::FdOptions fd;
  fd.step = cfg.fd_step;
  fd.quantum_step = cfg.quantum_step;
  verify::SchrodingerOptions sopts;
  sopts.sign = sign == "standard" ? verify::SchrodingerSign::standard
                                  : verify::SchrodingerSign::as_printed;
  sopts.form = form == "printed" ? verify::WaveForm::printed : verify::WaveForm::canonical;

  const bool all = which == "all";
  std::vector<ResidualReport> reports;
  const auto append = [&](std::vector<ResidualReport> more) {
    for (auto& r : more) reports.push_back(std::move(r));
  };
  const auto& p = cfg.params;
  const auto& c = cfg.consts;
  const auto& acc = cfg.accuracy;
  if (all || which == "ode5") reports.push_back(verify::residual_ode5(ode_grid, p, c, acc));
  if (all || which == "system4") append(verify::residual_ode_system4(ode_grid, p, c, acc));
  if (all || which == "pde") append(verify::residual_pde_lab(region, p, c, fd, acc));
  if (all || which == "schrodinger") {
    reports.push_back(verify::residual_schrodinger(region, p, c, fd, sopts, acc));
  }
  if (all || which == "phase") reports.push_back(verify::residual_phase_gradient(region, p, c));
  if (all || which == "qpotential") {
    reports.push_back(verify::compare_quantum_potential(q_grid, p, c, cfg.q_fd_step, acc));
  }

  bool pass = true;
  for (const auto& r : reports) pass = print_summary(out, r) && pass;
  if (!cfg.output_path.empty()) {
    for (const auto& r : reports) {
      OutputSink sink;
      open_output(sink, output_name_for(cfg.output_path, r.label, reports.size() > 1), out);
      write_csv(*sink.stream, to_table(r.points));
    }
  }
  return pass ? kExitOk : kExitFailure;
}

// ---- zeros -----------------------------------------------------------------

int cmd_zeros(const RunConfig& cfg, std::ostream& out) {
  const auto [lo, hi] = cfg.range.value_or(std::make_pair(0.1, 30.0));
  const analysis::RootSet roots = analysis::find_zeros(
      lo, hi, cfg.params, cfg.consts, cfg.max_roots.value_or(analysis::kAllRoots), cfg.accuracy);
  const analysis::RootSet matched = analysis::match_poles(roots, cfg.params, cfg.consts, cfg.accuracy);
  CsvTable table{{"index", "eta_star", "q_pole_eta", "separation"}, {}};
  for (std::size_t i = 0; i < matched.matched_poles.size(); ++i) {
    const auto& mp = matched.matched_poles[i];
    table.rows.push_back({static_cast<double>(i + 1), mp.eta_star, mp.q_pole_eta, mp.separation});
  }
  OutputSink sink;
  open_output(sink, cfg.output_path, out);
  write_csv(*sink.stream, table);
  return kExitOk;
}

// ---- integrate -------------------------------------------------------------

int cmd_integrate(const RunConfig& cfg, std::ostream& out) {
  analysis::QuadratureOptions opts;
  opts.tol = cfg.tol;
  const analysis::QuadratureResult res =
      analysis::integrate_density(cfg.limits, cfg.params, cfg.consts, opts, cfg.accuracy);
  CsvTable table{{"H", "F", "err"}, {}};
  for (const auto& p : res.partial_integrals) table.rows.push_back({p.upper_limit, p.value, p.est_error});
  OutputSink sink;
  open_output(sink, cfg.output_path, out);
  write_csv(*sink.stream, table);
  const auto& lf = res.log_fit;
  const auto& af = res.algebraic_fit;
  out << "# log fit: F = a + b ln H, a=" << fmt(lf.a) << " b=" << fmt(lf.b)
      << " rms=" << fmt(lf.rms) << '\n';
  out << "# algebraic fit: F = a - b/H, a=" << fmt(af.a) << " b=" << fmt(af.b)
      << " rms=" << fmt(af.rms) << '\n';
  out << "# tail_model=" << analysis::tail_kind_name(res.tail_model.kind)
      << " verdict: " << res.verdict_note << '\n';
  return kExitOk;
}

// ---- figure ----------------------------------------------------------------

int cmd_figure(const RunConfig& cfg, const std::string& id, std::ostream& out) {
  analysis::FigureId fig;
  if (id == "fig1") fig = analysis::FigureId::fig1;
  else if (id == "fig2") fig = analysis::FigureId::fig2;
  else if (id == "fig3") fig = analysis::FigureId::fig3;
  else throw ConfigError("unknown figure id '" + id + "' (expected fig1, fig2 or fig3)");
  analysis::FigureGrids grids;
  grids.eta = cfg.axis_or("eta", {grids.eta, 0.0}).require_grid("eta");
  grids.x = cfg.axis_or("x", {grids.x, 0.0}).require_grid("x");
  grids.t = cfg.axis_or("t", {grids.t, 0.0}).require_grid("t");
  const SampleSeries series =
      analysis::figure_series(fig, cfg.params, cfg.consts, grids, cfg.accuracy);
  OutputSink sink;
  open_output(sink, cfg.output_path, out);
  write_csv(*sink.stream, to_table(series));
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form self-similar solutions of the free Madelung equations"};
  app.name("madelung-cli");
  app.require_subcommand(1);
  app.fallthrough();

  Overrides global;
  std::string config_path;
  app.add_option("--config", config_path, "key = value settings file; flags override it");
  global.add(app, "--m", "m", "particle mass");
  global.add(app, "--hbar", "hbar", "reduced Planck constant");
  global.add(app, "--c0", "c0", "continuity integration constant");
  global.add(app, "--c1", "c1", "coefficient of J_{1/4}");
  global.add(app, "--c2", "c2", "coefficient of Y_{1/4}");
  global.add(app, "--dim", "dim", "spatial dimension {1|2|3}");
  global.add(app, "--output", "output", "write CSV here instead of standard output");
  global.add(app, "--tol", "tol", "absolute quadrature tolerance per panel");

  Overrides local;
  std::string field;
  CLI::App* eval = app.add_subcommand("eval", "evaluate one field on a grid");
  eval->add_option("--field", field, "f, g, h, rho, u, v, S, psi_re, psi_im or Q")
      ->required()
      ->check(CLI::IsMember(kFields));
  local.add(*eval, "--eta", "eta", "eta grid for f, g, h, Q");
  local.add(*eval, "--x", "x", "x grid or value for lab fields");
  local.add(*eval, "--y", "y", "y grid or value for lab fields");
  local.add(*eval, "--t", "t", "t grid or value for lab fields");

  std::string which = "all";
  std::string sign = "printed";
  std::string form = "canonical";
  CLI::App* ver = app.add_subcommand("verify", "residual checks");
  ver->add_option("--which", which, "ode5, system4, pde, schrodinger, phase, qpotential or all")
      ->check(CLI::IsMember({"ode5", "system4", "pde", "schrodinger", "phase", "qpotential", "all"}));
  ver->add_option("--sign", sign, "time-derivative sign of the Schrodinger check")
      ->check(CLI::IsMember({"printed", "standard"}));
  ver->add_option("--wavefunction", form, "wave function used by the Schrodinger check")
      ->check(CLI::IsMember({"canonical", "printed"}));
  local.add(*ver, "--eta", "eta", "eta grid of the ODE checks");
  local.add(*ver, "--xi", "xi", "grid of x + y for the lab-frame checks");
  local.add(*ver, "--t", "t", "time grid for the lab-frame checks");
  local.add(*ver, "--q-eta", "q_eta", "eta grid of the quantum-potential comparison");
  local.add(*ver, "--fd-step", "fd_step", "finite-difference step");
  local.add(*ver, "--quantum-step", "quantum_step", "nested step of the quantum-potential term");
  local.add(*ver, "--q-fd-step", "q_fd_step", "step of the direct quantum-potential derivative");

  CLI::App* zeros = app.add_subcommand("zeros", "zeros of f and matching poles of Q");
  local.add(*zeros, "--range", "range", "eta range lo:hi");
  local.add(*zeros, "--max-roots", "max_roots", "stop after this many roots");

  CLI::App* integ = app.add_subcommand("integrate", "partial integrals of f with tail fits");
  local.add(*integ, "--limits", "limits", "comma-separated increasing upper limits");

  std::string figure_id;
  CLI::App* fig = app.add_subcommand("figure", "figure data series");
  fig->add_option("id", figure_id, "fig1, fig2 or fig3")->required();
  local.add(*fig, "--eta", "eta", "eta grid (fig1, fig3)");
  local.add(*fig, "--x", "x", "x grid (fig2)");
  local.add(*fig, "--t", "t", "t grid (fig2)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);
    global.apply(cfg);
    local.apply(cfg);
    cfg.validate();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (eval->parsed()) return cmd_eval(cfg, field, out);
    if (ver->parsed()) return cmd_verify(cfg, which, sign, form, out);
    if (zeros->parsed()) return cmd_zeros(cfg, out);
    if (integ->parsed()) return cmd_integrate(cfg, out);
    return cmd_figure(cfg, figure_id, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const RangeTooNarrow& e) {
    err << "RangeTooNarrow: " << e.what() << '\n';
    return kExitFailure;
  } catch (const UnmatchedRoot& e) {
    err << "UnmatchedRoot: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace madelung::cli

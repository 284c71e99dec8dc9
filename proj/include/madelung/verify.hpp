#pragma once

// Residual checks for the closed-form solution: back-substitution into the
// reduced ODEs, finite-difference residuals of the lab-frame PDEs and of the
// Schrodinger equation, and an adaptive Runge-Kutta march of the density ODE.

#include <string>
#include <utility>
#include <vector>

#include "madelung/core.hpp"
#include "madelung/grid.hpp"
#include "madelung/kernels.hpp"
#include "madelung/ode.hpp"

namespace madelung::verify {

enum class EquationId {
  ode5,
  ode_system4,
  continuity,
  euler_x,
  euler_y,
  schrodinger,
  phase_gradient,
  quantum_potential,
};

const char* equation_name(EquationId id);

struct ResidualReport {
  EquationId equation = EquationId::ode5;
  std::string label;
  SampleSeries points;
  double max_abs = 0.0;
  double max_rel = 0.0;
  std::size_t excluded_points = 0;
  // max_abs at the requested step divided by max_abs at half the step; NaN
  // when the check does not use finite differences.
  double richardson_ratio;
  std::vector<std::pair<std::string, double>> diagnostics;

  ResidualReport();
  double diagnostic(const std::string& name) const;
};

struct OdeState {
  double f;
  double f_prime;
};

// Space-time region: a grid over the coordinate sum xi and a grid over t.
// Lab points put xi / d on every axis.
struct Region {
  GridSpec space{1.0, 5.0, 41, Spacing::uniform};
  GridSpec time{1.0, 2.0, 11, Spacing::uniform};

  void validate() const;
};

struct FdOptions {
  double step = 1e-4;
  // Step of the nested differences in the quantum-potential term. Rounding
  // there grows like eps / step^3.
  double quantum_step = 8e-4;
  bool richardson = true;
  void validate() const;
};

inline constexpr double kShapeZeroExclusion = 1e-6;
inline constexpr double kLabZeroExclusion = 1e-2;  // fraction of the local arch width

// 2 f'' f - f'^2 + m^2 eta^2 f^2 / (d hbar^2), relative to the largest term.
ResidualReport residual_ode5(const GridSpec& grid, const PhysicalParams& params,
                             const SolutionConstants& consts, const EvalAccuracy& acc = {},
                             Execution exec = Execution::parallel);

// Shape continuity equation and the two momentum equations, with the
// symmetric velocity split. Returns three reports in that order.
std::vector<ResidualReport> residual_ode_system4(const GridSpec& grid, const PhysicalParams& params,
                                                 const SolutionConstants& consts,
                                                 const EvalAccuracy& acc = {},
                                                 Execution exec = Execution::parallel);

// Continuity, euler_x and euler_y residuals of the lab-frame fields by central
// differences. Throws StepTooLarge when halving the step changes a residual
// by more than 10x.
std::vector<ResidualReport> residual_pde_lab(const Region& region, const PhysicalParams& params,
                                             const SolutionConstants& consts,
                                             const FdOptions& fd = {},
                                             const EvalAccuracy& acc = {},
                                             Execution exec = Execution::parallel);

enum class SchrodingerSign {
  as_printed,  // Laplacian - i (2m/hbar) d/dt
  standard,    // Laplacian + i (2m/hbar) d/dt, i.e. i hbar d/dt = -hbar^2/(2m) Laplacian
};
enum class WaveForm { canonical, printed };

struct SchrodingerOptions {
  SchrodingerSign sign = SchrodingerSign::as_printed;
  WaveForm form = WaveForm::canonical;
};

ResidualReport residual_schrodinger(const Region& region, const PhysicalParams& params,
                                    const SolutionConstants& consts, const FdOptions& fd = {},
                                    const SchrodingerOptions& opts = {},
                                    const EvalAccuracy& acc = {},
                                    Execution exec = Execution::parallel);

// Velocity component minus (hbar/m) dS/dx_i. Comparative only.
ResidualReport residual_phase_gradient(const Region& region, const PhysicalParams& params,
                                       const SolutionConstants& consts,
                                       Execution exec = Execution::parallel);

// Right side of the momentum equations,
// (hbar^2 / 2m^2) (f'^3 / 2f^3 - f' f'' / f^2 + f''' / 2f), from the analytic jet.
double bohm_shape_term(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                       const EvalAccuracy& acc = {});

// (hbar^2 / 2m^2) d/deta [ (sqrt f)'' / sqrt f ] by nested central differences
// of the closed-form f. Throws SingularityError within 10 fd_step of a zero of f.
double quantum_potential_direct(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts, double fd_step = 1e-3,
                                const EvalAccuracy& acc = {});

// Printed closed form against direct differentiation. Comparative only.
ResidualReport compare_quantum_potential(const GridSpec& grid, const PhysicalParams& params,
                                         const SolutionConstants& consts, double fd_step = 1e-3,
                                         const EvalAccuracy& acc = {},
                                         Execution exec = Execution::parallel);

struct MarchOptions {
  double tol = 1e-10;
  double initial_step = 1e-3;
};

// Integrates f'' = (f'^2 - m^2 eta^2 f^2 / (d hbar^2)) / (2 f) from closed-form
// data at eta0. Columns: eta, f, f_prime. Throws ZeroCrossing when f < 1e-12.
SampleSeries ode5_oracle_march(double eta0, double eta1, const PhysicalParams& params,
                               const SolutionConstants& consts, const MarchOptions& opts = {},
                               const EvalAccuracy& acc = {});

// Distance from eta to the nearest zero of f, by one Newton step on the numerator.
double newton_zero_distance(double eta, const PhysicalParams& params,
                            const SolutionConstants& consts, const EvalAccuracy& acc = {});

// Local spacing of zeros of f in eta, pi / (dz/deta).
double local_arch_width(double eta, const PhysicalParams& params);

}  // namespace madelung::verify

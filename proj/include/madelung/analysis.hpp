#pragma once

// Zeros of the density shape function, the matching poles of the quantum
// potential, arch-aligned quadrature of f with tail fits, and figure data.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "madelung/core.hpp"
#include "madelung/grid.hpp"
#include "madelung/kernels.hpp"

namespace madelung::analysis {

struct Root {
  double eta;
  double bracket_width;  // in eta
};

struct MatchedPole {
  double eta_star;
  double q_pole_eta;
  double separation;
};

struct RootSet {
  std::vector<Root> roots;
  std::vector<MatchedPole> matched_poles;
};

inline constexpr std::size_t kAllRoots = std::numeric_limits<std::size_t>::max();

// Sign changes of c2 Y_{1/4}(z) - c1 J_{1/4}(z) scanned in z with step 0.25,
// refined by Brent's method to a z-bracket of max(1e-12, 4 ulp). Returns at most
// max_roots roots in (lo, hi). Throws RangeTooNarrow if roots were requested
// and none lie in the range.
RootSet find_zeros(double lo, double hi, const PhysicalParams& params,
                   const SolutionConstants& consts, std::size_t max_roots = kAllRoots,
                   const EvalAccuracy& acc = {});

// Pairs every root with the nearest zero of the quantum-potential bracket
// c1 J_{1/4} - c2 Y_{1/4}. Throws UnmatchedRoot if a separation exceeds 1e-6.
RootSet match_poles(const RootSet& roots, const PhysicalParams& params,
                    const SolutionConstants& consts, const EvalAccuracy& acc = {});

inline constexpr double kUnmatchedSeparation = 1e-6;

// For each root: min(|Q(eta* - offset)|, |Q(eta* + offset)|) / |Q(mid-arch)|.
std::vector<double> pole_divergence_ratios(const RootSet& roots, const PhysicalParams& params,
                                           const SolutionConstants& consts,
                                           double offset = 1e-4, const EvalAccuracy& acc = {});

std::vector<double> root_spacings(const RootSet& roots);

struct PartialIntegral {
  double upper_limit;
  double value;
  double est_error;
};

enum class TailKind { convergent, logarithmic, undetermined };

const char* tail_kind_name(TailKind kind);

// Least-squares fit over the last decade of H. For the log model
// F = a + b ln H; for the algebraic model F = a - b / H.
struct TailFit {
  double a = 0.0;
  double b = 0.0;
  double rms = 0.0;
};

struct TailModel {
  TailKind kind = TailKind::undetermined;
  double limit = std::numeric_limits<double>::quiet_NaN();        // convergent
  double rate = std::numeric_limits<double>::quiet_NaN();         // convergent
  double coefficient = std::numeric_limits<double>::quiet_NaN();  // logarithmic
};

struct QuadratureResult {
  std::vector<PartialIntegral> partial_integrals;
  std::vector<PartialIntegral> tail_samples;
  TailFit log_fit;
  TailFit algebraic_fit;
  TailModel tail_model;
  std::string verdict_note;
  std::size_t panels = 0;
};

struct QuadratureOptions {
  double tol = 1e-9;  // absolute, per panel
  std::size_t tail_samples = 16;
  std::size_t block_panels = 1 << 14;
};

// Integrates f over [0, H] for each H. The first arch is integrated in eta;
// beyond it the integral is taken in z, where f d(eta) = 4K/(sqrt(2) mu) W(z)^2 dz,
// on panels bounded by the zeros of f (exact up to z = 200, pi-spaced after).
QuadratureResult integrate_density(std::span<const double> upper_limits,
                                   const PhysicalParams& params, const SolutionConstants& consts,
                                   const QuadratureOptions& opts = {}, const EvalAccuracy& acc = {},
                                   Execution exec = Execution::parallel);

// Large-eta envelope: the arch mean of f tends to b / eta with
// b = pi sqrt(2) (c1^2 + c2^2) / (16 mu), so F(H) ~ b ln H.
double predicted_log_coefficient(const PhysicalParams& params, const SolutionConstants& consts);

enum class FigureId { fig1, fig2, fig3 };

const char* figure_name(FigureId id);

struct FigureGrids {
  GridSpec eta{0.01, 10.0, 1000, Spacing::uniform};
  GridSpec x{0.05, 10.0, 200, Spacing::uniform};
  GridSpec t{0.1, 2.0, 20, Spacing::uniform};
};

// fig1: eta, f_m1, f_m0p5. fig2: x, t, psi_re (y = 0). fig3: eta, f, Q with Q
// NaN and the row excluded inside the pole exclusion radius.
SampleSeries figure_series(FigureId id, const PhysicalParams& params,
                           const SolutionConstants& consts, const FigureGrids& grids = {},
                           const EvalAccuracy& acc = {}, Execution exec = Execution::parallel);

}  // namespace madelung::analysis

#pragma once

// Closed-form self-similar fields of the free-particle Madelung equations.
//
// Similarity variable: eta = xi / sqrt(t), where xi is the sum of the spatial
// coordinates (x + y in the plane). All four similarity exponents are 1/2.
// The density shape function is
//
//   f(eta) = 2 W(z)^2 / (eta^3 mu^2 C(z)^2),   z = sqrt(2) mu eta^2 / 8,
//   W(z)   = c2 Y_{1/4}(z) - c1 J_{1/4}(z),
//   C(z)   = J_{-3/4}(z) Y_{1/4}(z) - J_{1/4}(z) Y_{-3/4}(z) = -2 / (pi z),
//
// so that f = (pi^2 / 64) eta W(z)^2. The effective mass mu = m sqrt(2/d) / hbar
// folds the dimension factor d of the reduced ODE and hbar into the argument;
// for d = 2 and hbar = 1, mu = m.

#include <complex>

#include "madelung/errors.hpp"
#include "madelung/specfun.hpp"

namespace madelung {

using specfun::EvalAccuracy;

struct PhysicalParams {
  double m = 1.0;
  double hbar = 1.0;
  int dimension = 2;

  void validate() const;
  // mu = m sqrt(2/d) / hbar, the mass that enters the Bessel argument.
  double effective_mass() const;
};

struct SolutionConstants {
  double c0 = 0.0;
  double c1 = 1.0;
  double c2 = 1.0;

  void validate() const;
};

// alpha = beta = delta = epsilon = 1/2; there is no other admissible choice.
class SimilarityExponents {
 public:
  static constexpr double alpha() { return 0.5; }
  static constexpr double beta() { return 0.5; }
  static constexpr double delta() { return 0.5; }
  static constexpr double epsilon() { return 0.5; }
};

class SimilarityPoint {
 public:
  explicit SimilarityPoint(double eta);
  double eta() const { return eta_; }

 private:
  double eta_;
};

struct LabPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 1.0;
};

// Space-time point reduced to the coordinate sum xi (x + y in 2D, x in 1D, ...).
struct RayPoint {
  double xi = 0.0;
  double t = 1.0;
};

using ComplexAmplitude = std::complex<double>;

SimilarityPoint eta_of(const LabPoint& p);
SimilarityPoint eta_of(const RayPoint& p);

// Bessel argument of the density, sqrt(2) mu eta^2 / 8.
double bessel_argument(double eta, const PhysicalParams& params);

// Numerator factor c2 Y_{1/4}(z) - c1 J_{1/4}(z) at the argument for eta.
double density_numerator(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                         const EvalAccuracy& acc = {});

// Literal four-function form, including the squared cross-product denominator.
double shape_density(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                     const EvalAccuracy& acc = {});

// Same function with the cross product replaced by -2/(pi z).
double simplified_shape_density(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts, const EvalAccuracy& acc = {});

// f and its first three eta-derivatives, from analytic Bessel derivatives.
struct ShapeJet {
  double f;
  double df;
  double d2f;
  double d3f;
};
ShapeJet shape_density_jet(double eta, const PhysicalParams& params,
                           const SolutionConstants& consts, const EvalAccuracy& acc = {});

// Numerator W(eta) and its eta-derivative; zeros of f are zeros of W.
struct NumeratorJet {
  double w;
  double dw;
};
NumeratorJet density_numerator_jet(double eta, const PhysicalParams& params,
                                   const SolutionConstants& consts, const EvalAccuracy& acc = {});

// g + h = (eta - c0) / 2.
double shape_velocity_sum(double eta, const SolutionConstants& consts);

struct VelocitySplit {
  double g;
  double h;
};
// Symmetric split g = h = (eta - c0) / 4.
VelocitySplit shape_velocity_split(double eta, const SolutionConstants& consts);

// One Cartesian component of the shape velocity in d dimensions: (eta - c0) / (2 d).
double shape_velocity_component(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts);

double density(const LabPoint& p, const PhysicalParams& params, const SolutionConstants& consts,
               const EvalAccuracy& acc = {});
double density(const RayPoint& p, const PhysicalParams& params, const SolutionConstants& consts,
               const EvalAccuracy& acc = {});

struct Velocity {
  double u;
  double v;
};
Velocity velocity(const LabPoint& p, const PhysicalParams& params, const SolutionConstants& consts);
double velocity_component(const RayPoint& p, const PhysicalParams& params,
                          const SolutionConstants& consts);

// S = (m / hbar) xi^2 / (4 t).
double phase(const LabPoint& p, const PhysicalParams& params);
double phase(const RayPoint& p, const PhysicalParams& params);

// sqrt(rho) exp(i S).
ComplexAmplitude wavefunction_canonical(const LabPoint& p, const PhysicalParams& params,
                                        const SolutionConstants& consts,
                                        const EvalAccuracy& acc = {});
ComplexAmplitude wavefunction_canonical(const RayPoint& p, const PhysicalParams& params,
                                        const SolutionConstants& consts,
                                        const EvalAccuracy& acc = {});

// sqrt(2) t^{1/4} W(z) / (xi^{3/2} mu C(z)) exp(i S): the printed closed form
// with its t^{1/4} prefactor and unsquared cross product. Its real prefactor
// is signed, unlike the canonical modulus.
ComplexAmplitude wavefunction_printed(const LabPoint& p, const PhysicalParams& params,
                                  const SolutionConstants& consts, const EvalAccuracy& acc = {});
ComplexAmplitude wavefunction_printed(const RayPoint& p, const PhysicalParams& params,
                                  const SolutionConstants& consts, const EvalAccuracy& acc = {});

inline constexpr double kDefaultPoleExclusion = 1e-9;

// Bracket c1 J_{1/4}(z9) - c2 Y_{1/4}(z9) of the printed quantum potential,
// z9 = mu eta^2 / (4 sqrt 2), with its eta-derivative.
NumeratorJet quantum_bracket_jet(double eta, const PhysicalParams& params,
                                 const SolutionConstants& consts, const EvalAccuracy& acc = {});

// Q = (hbar^2 / 2 m^2) d/deta [ -eta^2 m^2 / (8 c1 J_{1/4}(z9) - 8 c2 Y_{1/4}(z9)) ],
// differentiated analytically. Throws SingularityError within exclusion_radius
// (in eta) of a zero of the bracket.
double quantum_potential_closed(double eta, const PhysicalParams& params,
                             const SolutionConstants& consts,
                             double exclusion_radius = kDefaultPoleExclusion,
                             const EvalAccuracy& acc = {});

// hbar^2 / (2 m^2).
double quantum_prefactor(const PhysicalParams& params);

}  // namespace madelung

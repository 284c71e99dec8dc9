#include "madelung/core.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace madelung {

namespace {

using std::numbers::pi;
using std::numbers::sqrt2;

constexpr double kShapeScale = pi * pi / 64.0;

void require_eta(double eta, const char* who) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw DomainError(std::string(who) + ": eta must be finite and > 0, got " +
                      std::to_string(eta));
  }
}

void require_time(double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(who) + ": t must be finite and > 0, got " + std::to_string(t));
  }
}

// dz/deta = 2 z / eta = kz * eta with z = kz * eta^2 / 2.
double argument_slope(const PhysicalParams& params) {
  return 2.0 * sqrt2 * params.effective_mass() / 8.0;
}

}  // namespace

void PhysicalParams::validate() const {
  if (!(m > 0.0) || !std::isfinite(m)) throw DomainError("PhysicalParams: m must be > 0");
  if (!(hbar > 0.0) || !std::isfinite(hbar)) throw DomainError("PhysicalParams: hbar must be > 0");
  if (dimension < 1 || dimension > 3) throw DomainError("PhysicalParams: dimension must be 1, 2 or 3");
}

double PhysicalParams::effective_mass() const {
  return m * std::sqrt(2.0 / dimension) / hbar;
}

void SolutionConstants::validate() const {
  if (!std::isfinite(c0) || !std::isfinite(c1) || !std::isfinite(c2)) {
    throw DomainError("SolutionConstants: constants must be finite");
  }
  if (c1 == 0.0 && c2 == 0.0) throw DomainError("SolutionConstants: (c1, c2) must not both be 0");
}

SimilarityPoint::SimilarityPoint(double eta) : eta_(eta) { require_eta(eta, "SimilarityPoint"); }

SimilarityPoint eta_of(const RayPoint& p) {
  require_time(p.t, "eta_of");
  if (!(p.xi > 0.0)) throw DomainError("eta_of: coordinate sum must be > 0");
  return SimilarityPoint(p.xi / std::sqrt(p.t));
}

SimilarityPoint eta_of(const LabPoint& p) { return eta_of(RayPoint{p.x + p.y, p.t}); }

double bessel_argument(double eta, const PhysicalParams& params) {
  return sqrt2 * params.effective_mass() * eta * eta / 8.0;
}

double density_numerator(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                         const EvalAccuracy& acc) {
  require_eta(eta, "density_numerator");
  const auto jy = specfun::bessel_jy(specfun::kQuarter, bessel_argument(eta, params), acc);
  return consts.c2 * jy.y - consts.c1 * jy.j;
}

double shape_density(double eta, const PhysicalParams& params, const SolutionConstants& consts,
                     const EvalAccuracy& acc) {
  require_eta(eta, "shape_density");
  params.validate();
  consts.validate();
  const double mu = params.effective_mass();
  const double z = bessel_argument(eta, params);
  const auto quarter = specfun::bessel_jy(specfun::kQuarter, z, acc);
  const auto minus = specfun::bessel_jy(specfun::kMinusThreeQuarters, z, acc);
  const double numer = -quarter.j * consts.c1 + quarter.y * consts.c2;
  const double cross = minus.j * quarter.y - quarter.j * minus.y;
  return 2.0 * numer * numer / (eta * eta * eta * mu * mu * cross * cross);
}

double simplified_shape_density(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts, const EvalAccuracy& acc) {
  require_eta(eta, "simplified_shape_density");
  const double w = density_numerator(eta, params, consts, acc);
  return kShapeScale * eta * w * w;
}

NumeratorJet density_numerator_jet(double eta, const PhysicalParams& params,
                                   const SolutionConstants& consts, const EvalAccuracy& acc) {
  require_eta(eta, "density_numerator_jet");
  const double z = bessel_argument(eta, params);
  const double c1 = consts.c1;
  const double c2 = consts.c2;
  const auto jy = specfun::bessel_jy(specfun::kQuarter, z, acc);
  const double dj = specfun::bessel_j_deriv(specfun::kQuarter, z, 1, acc);
  const double dy = specfun::bessel_y_deriv(specfun::kQuarter, z, 1, acc);
  return {c2 * jy.y - c1 * jy.j, (c2 * dy - c1 * dj) * argument_slope(params) * eta};
}

ShapeJet shape_density_jet(double eta, const PhysicalParams& params,
                           const SolutionConstants& consts, const EvalAccuracy& acc) {
  require_eta(eta, "shape_density_jet");
  const double z = bessel_argument(eta, params);
  const auto jet = specfun::bessel_jet(specfun::kQuarter, z, acc);
  double wz[4];
  for (int k = 0; k < 4; ++k) wz[k] = consts.c2 * jet.y[k] - consts.c1 * jet.j[k];

  // Chain rule for z = a eta^2 / 2 with a = dz/deta / eta.
  const double a = argument_slope(params);
  const double s = a * eta;  // dz/deta
  const double w0 = wz[0];
  const double w1 = wz[1] * s;
  const double w2 = wz[1] * a + wz[2] * s * s;
  const double w3 = 3.0 * wz[2] * a * s + wz[3] * s * s * s;

  // f = K eta w^2
  const double K = kShapeScale;
  return {K * eta * w0 * w0,
          K * (w0 * w0 + 2.0 * eta * w0 * w1),
          K * (4.0 * w0 * w1 + 2.0 * eta * w1 * w1 + 2.0 * eta * w0 * w2),
          K * (6.0 * w1 * w1 + 6.0 * w0 * w2 + 6.0 * eta * w1 * w2 + 2.0 * eta * w0 * w3)};
}

double shape_velocity_sum(double eta, const SolutionConstants& consts) {
  return 0.5 * (eta - consts.c0);
}

VelocitySplit shape_velocity_split(double eta, const SolutionConstants& consts) {
  const double half = 0.5 * shape_velocity_sum(eta, consts);
  return {half, half};
}

double shape_velocity_component(double eta, const PhysicalParams& params,
                                const SolutionConstants& consts) {
  return shape_velocity_sum(eta, consts) / params.dimension;
}

double density(const RayPoint& p, const PhysicalParams& params, const SolutionConstants& consts,
               const EvalAccuracy& acc) {
  const double eta = eta_of(p).eta();
  return simplified_shape_density(eta, params, consts, acc) / std::sqrt(p.t);
}

double density(const LabPoint& p, const PhysicalParams& params, const SolutionConstants& consts,
               const EvalAccuracy& acc) {
  return density(RayPoint{p.x + p.y, p.t}, params, consts, acc);
}

double velocity_component(const RayPoint& p, const PhysicalParams& params,
                          const SolutionConstants& consts) {
  const double eta = eta_of(p).eta();
  return shape_velocity_component(eta, params, consts) / std::sqrt(p.t);
}

Velocity velocity(const LabPoint& p, const PhysicalParams& params, const SolutionConstants& consts) {
  const double component = velocity_component(RayPoint{p.x + p.y, p.t}, params, consts);
  return {component, component};
}

double phase(const RayPoint& p, const PhysicalParams& params) {
  require_time(p.t, "phase");
  return params.m / params.hbar * p.xi * p.xi / (4.0 * p.t);
}

double phase(const LabPoint& p, const PhysicalParams& params) {
  return phase(RayPoint{p.x + p.y, p.t}, params);
}

ComplexAmplitude wavefunction_canonical(const RayPoint& p, const PhysicalParams& params,
                                        const SolutionConstants& consts,
                                        const EvalAccuracy& acc) {
  const double rho = density(p, params, consts, acc);
  return std::polar(std::sqrt(rho), phase(p, params));
}

ComplexAmplitude wavefunction_canonical(const LabPoint& p, const PhysicalParams& params,
                                        const SolutionConstants& consts,
                                        const EvalAccuracy& acc) {
  return wavefunction_canonical(RayPoint{p.x + p.y, p.t}, params, consts, acc);
}

ComplexAmplitude wavefunction_printed(const RayPoint& p, const PhysicalParams& params,
                                  const SolutionConstants& consts, const EvalAccuracy& acc) {
  require_time(p.t, "wavefunction_printed");
  if (!(p.xi > 0.0)) throw DomainError("wavefunction_printed: coordinate sum must be > 0");
  const double mu = params.effective_mass();
  const double z = sqrt2 * mu * p.xi * p.xi / (8.0 * p.t);
  const auto quarter = specfun::bessel_jy(specfun::kQuarter, z, acc);
  const auto minus = specfun::bessel_jy(specfun::kMinusThreeQuarters, z, acc);
  const double numer = -quarter.j * consts.c1 + quarter.y * consts.c2;
  const double cross = minus.j * quarter.y - quarter.j * minus.y;
  const double amplitude =
      sqrt2 * std::pow(p.t, 0.25) * numer / (std::pow(p.xi, 1.5) * mu * cross);
  const double s = phase(p, params);
  return {amplitude * std::cos(s), amplitude * std::sin(s)};
}

ComplexAmplitude wavefunction_printed(const LabPoint& p, const PhysicalParams& params,
                                  const SolutionConstants& consts, const EvalAccuracy& acc) {
  return wavefunction_printed(RayPoint{p.x + p.y, p.t}, params, consts, acc);
}

double quantum_prefactor(const PhysicalParams& params) {
  return params.hbar * params.hbar / (2.0 * params.m * params.m);
}

NumeratorJet quantum_bracket_jet(double eta, const PhysicalParams& params,
                                 const SolutionConstants& consts, const EvalAccuracy& acc) {
  require_eta(eta, "quantum_bracket_jet");
  const double mu = params.effective_mass();
  const double z9 = mu * eta * eta / (4.0 * sqrt2);
  const auto jy = specfun::bessel_jy(specfun::kQuarter, z9, acc);
  const double dj = specfun::bessel_j_deriv(specfun::kQuarter, z9, 1, acc);
  const double dy = specfun::bessel_y_deriv(specfun::kQuarter, z9, 1, acc);
  const double dz = mu * eta / (2.0 * sqrt2);
  return {consts.c1 * jy.j - consts.c2 * jy.y, (consts.c1 * dj - consts.c2 * dy) * dz};
}

double quantum_potential_closed(double eta, const PhysicalParams& params,
                             const SolutionConstants& consts, double exclusion_radius,
                             const EvalAccuracy& acc) {
  require_eta(eta, "quantum_potential_closed");
  params.validate();
  consts.validate();
  const NumeratorJet b = quantum_bracket_jet(eta, params, consts, acc);
  // Newton distance to the nearest bracket zero.
  if (b.w == 0.0 || std::abs(b.w) < exclusion_radius * std::abs(b.dw)) {
    throw SingularityError("quantum_potential_closed: eta within exclusion radius of a pole", eta);
  }
  const double m = params.m;
  const double D = 8.0 * b.w;
  const double dD = 8.0 * b.dw;
  // d/deta [-eta^2 m^2 / D] = -m^2 (2 eta D - eta^2 D') / D^2
  const double inner = -m * m * (2.0 * eta * D - eta * eta * dD) / (D * D);
  return quantum_prefactor(params) * inner;
}

}  // namespace madelung

#include "pdcent/pdc_dynamics.hpp"

#include <cmath>
#include <sstream>

#include "pdcent/errors.hpp"

namespace pdcent {

namespace {

void check_y(double y) {
  if (!(y >= 0.0 && y < 1.0)) {
    std::ostringstream msg;
    msg << "mismatch y = " << y << " outside [0, 1)";
    throw ValidationError(msg.str());
  }
}

void check_tau(double tau) {
  if (!(tau >= 0.0) || !std::isfinite(tau)) {
    std::ostringstream msg;
    msg << "interaction time tau = " << tau << " must be finite and >= 0";
    throw ValidationError(msg.str());
  }
}

struct Hyperbolic {
  Real x;             // sqrt(1 - y^2)
  Real sinh_over_x;   // sinh(x tau) / x
  Real cosh;          // cosh(x tau)
};

Hyperbolic hyperbolic(double y, double tau) {
  check_y(y);
  check_tau(tau);
  const Real x = mismatch_root(y);
  const Real t = tau;
  if (x < kDegenerateX) {
    const Real z2 = x * x * t * t;
    return {x, t * (1 + z2 / 6), 1 + z2 / 2};
  }
  return {x, std::sinh(x * t) / x, std::cosh(x * t)};
}

}  // namespace

void PdcParams::validate() const {
  if (!(omega1_bar > 0.0) || !(omega2_bar > 0.0) || !std::isfinite(omega1_bar) ||
      !std::isfinite(omega2_bar))
    throw ValidationError("dimensionless mode frequencies must be finite and > 0");
  if (!(g > 0.0) || !std::isfinite(g)) throw ValidationError("coupling rate g must be finite and > 0");
  if (!std::isfinite(phi)) throw ValidationError("pump phase must be finite");
  check_y(y);
}

PdcParams default_parameters(double y) {
  PdcParams p;
  const double nu1 = 3.12e10;
  p.g = constants::kPi * 1e-2 * nu1;
  p.omega1_bar = 2.0 * constants::kPi * nu1 / p.g;
  p.omega2_bar = 2.0 * p.omega1_bar;
  p.y = y;
  return p;
}

Real thermal_occupation(double omega_rad_s, double temperature_k) {
  if (!(omega_rad_s > 0.0) || !std::isfinite(omega_rad_s))
    throw ValidationError("mode angular frequency must be finite and > 0");
  if (!(temperature_k >= 0.0) || !std::isfinite(temperature_k))
    throw ValidationError("temperature must be finite and >= 0 K");
  if (temperature_k == 0.0) return 0;
  const Real beta = static_cast<Real>(constants::kHbar) * omega_rad_s /
                    (static_cast<Real>(constants::kBoltzmann) * temperature_k);
  return 1 / std::expm1(beta);
}

ThermalInit thermal_init(const PdcParams& params, double temperature_k) {
  params.validate();
  return {temperature_k, thermal_occupation(params.omega1(), temperature_k),
          thermal_occupation(params.omega2(), temperature_k)};
}

Real mismatch_root(double y) {
  check_y(y);
  const Real yl = y;
  return std::sqrt((1 - yl) * (1 + yl));
}

ModeCoefficients ab_coefficients(double y, double tau) {
  const Hyperbolic h = hyperbolic(y, tau);
  const Real shx = h.sinh_over_x;
  return {{h.cosh, static_cast<Real>(y) * shx}, {0, shx}};
}

Real squeezing_parameter(double y, double tau) {
  check_tau(tau);
  return static_cast<Real>(tau) * mismatch_root(y);
}

Real pair_gain(double y, double tau) {
  const Real shx = hyperbolic(y, tau).sinh_over_x;
  return shx * shx;
}

PhotonNumbers mean_photon_numbers(const PdcParams& params, double tau, double temperature_k) {
  return mean_photon_numbers(params, tau, thermal_init(params, temperature_k));
}

PhotonNumbers mean_photon_numbers(const PdcParams& params, double tau, const ThermalInit& init) {
  params.validate();
  const Real m = pair_gain(params.y, tau);
  const Real k = init.nbar1 + init.nbar2 + 1;
  return {init.nbar1 + m * k, init.nbar2 + m * k};
}

CovarianceMatrix covariance_matrix(const PdcParams& params, double tau, double temperature_k) {
  return covariance_matrix(params, tau, thermal_init(params, temperature_k));
}

CovarianceMatrix covariance_matrix(const PdcParams& params, double tau, const ThermalInit& init) {
  params.validate();
  const Hyperbolic h = hyperbolic(params.y, tau);
  const Real k = init.nbar1 + init.nbar2 + 1;
  const Real m = h.sinh_over_x * h.sinh_over_x;
  const Real n1 = init.nbar1 + m * k;
  const Real n2 = init.nbar2 + m * k;

  // theta = omega1' + omega2' with omega_j' = omega_j_bar + y.
  const Real theta = static_cast<Real>(params.omega1_bar) + params.omega2_bar + 2 * static_cast<Real>(params.y);
  const Real phase = theta * static_cast<Real>(tau);
  const Real sn = std::sin(phase);
  const Real cs = std::cos(phase);
  // (y/x) sinh(x tau) = y * sinh(x tau)/x stays finite on the degenerate branch.
  const Real y_s = static_cast<Real>(params.y) * h.sinh_over_x;
  const Real s13 = k * h.sinh_over_x * (sn * h.cosh - cs * y_s);
  const Real s14 = k * h.sinh_over_x * (cs * h.cosh + sn * y_s);

  const Real d1 = n1 + 0.5L;
  const Real d2 = n2 + 0.5L;
  return CovarianceMatrix(std::array<Real, 16>{
      d1, 0, s13, s14,    //
      0, d1, s14, -s13,   //
      s13, s14, d2, 0,    //
      s14, -s13, 0, d2});
}

Real det_gamma_closed_form(const PdcParams& params, double tau, double temperature_k) {
  return det_gamma_closed_form(params, tau, thermal_init(params, temperature_k));
}

Real det_gamma_closed_form(const PdcParams& params, double tau, const ThermalInit& init) {
  params.validate();
  const Real m = pair_gain(params.y, tau);
  const Real k = init.nbar1 + init.nbar2 + 1;
  return -m * (m + 1) * k * k;
}

}  // namespace pdcent

#pragma once

// Closed-form parametric down-conversion with phase mismatch, seeded by a
// thermal product state. Time is tau = g t and all model quantities are
// dimensionless; only the thermal occupations touch SI units.

#include <complex>

#include "pdcent/gaussian_core.hpp"

namespace pdcent {

namespace constants {
inline constexpr double kHbar = 1.054571817e-34;     // J s
inline constexpr double kBoltzmann = 1.380649e-23;   // J / K
inline constexpr double kPi = 3.14159265358979323846;
}  // namespace constants

// Below this value of x = sqrt(1 - y^2) the hyperbolic factors are replaced
// by their second-order series in x.
inline constexpr double kDegenerateX = 1e-6;

struct PdcParams {
  double omega1_bar = 200.0;  // omega_1 / g
  double omega2_bar = 400.0;  // omega_2 / g
  double g = constants::kPi * 1e-2 * 3.12e10;  // coupling rate, rad/s
  double y = 0.0;             // delta / g, in [0, 1)
  double phi = 0.0;           // pump phase, rad

  // Throws ValidationError.
  void validate() const;

  double omega1() const { return omega1_bar * g; }
  double omega2() const { return omega2_bar * g; }
};

// Signal at nu1 = 3.12e10 Hz, idler at 2 nu1, g = pi 1e-2 nu1.
PdcParams default_parameters(double y = 0.0);

// Bose-Einstein occupation 1/(exp(hbar omega / kB T) - 1); exactly 0 at T = 0.
Real thermal_occupation(double omega_rad_s, double temperature_k);

struct ThermalInit {
  double temperature_k = 0.0;
  Real nbar1 = 0;
  Real nbar2 = 0;
};

ThermalInit thermal_init(const PdcParams& params, double temperature_k);

struct ModeCoefficients {
  std::complex<Real> a_coef;
  std::complex<Real> b_coef;
};

// x = sqrt(1 - y^2), computed as sqrt((1 - y)(1 + y)) to keep digits near y = 1.
Real mismatch_root(double y);

ModeCoefficients ab_coefficients(double y, double tau);

Real squeezing_parameter(double y, double tau);

// m = |B|^2 = sinh^2(x tau) / x^2.
Real pair_gain(double y, double tau);

struct PhotonNumbers {
  Real n1 = 0;
  Real n2 = 0;
};

PhotonNumbers mean_photon_numbers(const PdcParams& params, double tau, double temperature_k);
PhotonNumbers mean_photon_numbers(const PdcParams& params, double tau, const ThermalInit& init);

// Lab-frame covariance matrix. sigma_24 = -sigma_13 and sigma_23 = sigma_14
// follow from the quadrature convention in gaussian_core.hpp. The pump phase
// is not threaded through: it is a local rotation.
CovarianceMatrix covariance_matrix(const PdcParams& params, double tau, double temperature_k);
CovarianceMatrix covariance_matrix(const PdcParams& params, double tau, const ThermalInit& init);

// -m (m + 1) K^2 with K = nbar1 + nbar2 + 1.
Real det_gamma_closed_form(const PdcParams& params, double tau, double temperature_k);
Real det_gamma_closed_form(const PdcParams& params, double tau, const ThermalInit& init);

}  // namespace pdcent

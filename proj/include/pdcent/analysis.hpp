#pragma once

// Entanglement analytics on top of the closed-form dynamics: birth time of
// entanglement, critical temperature, the (y, T_c) boundary and the
// photon-number witness.

#include <span>
#include <vector>

#include "pdcent/pdc_dynamics.hpp"

namespace pdcent {

inline constexpr double kDefaultTMaxKelvin = 2000.0;

// nbar1 nbar2 (nbar1 + 1)(nbar2 + 1). Throws ValidationError on negative input.
Real s0_threshold(Real nbar1, Real nbar2);

enum class BteMethod { closed_form, bisection };

struct BteResult {
  double tau_e = 0.0;
  BteMethod method = BteMethod::closed_form;
};

// Smallest tau with |det gamma(tau)| = S0. Solved as a quadratic in the pair
// gain m and checked against birth_time_bisection; if the two disagree by more
// than 1e-8 the bisection value is returned.
BteResult birth_time(const PdcParams& params, double temperature_k);

// Independent route: bisection on |det gamma(tau)| - S0.
double birth_time_bisection(const PdcParams& params, double temperature_k, double abs_tol = 1e-10);

enum class RootStatus {
  found,
  no_root_in_bracket,  // still entangled at t_max
  never_entangled,     // separable already at T = 0
};

struct CriticalTemperature {
  RootStatus status = RootStatus::never_entangled;
  double t_c = 0.0;  // kelvin, meaningful only when status == found
};

// Root of S(T) = 0 at fixed (y, tau_i) on [0, t_max]. Bracket problems are
// reported through the status, not thrown.
CriticalTemperature critical_temperature(const PdcParams& params, double tau_i,
                                         double t_max = kDefaultTMaxKelvin, double rel_tol = 1e-12);

struct PhasePoint {
  double y = 0.0;
  double t_c = 0.0;
};

// critical_temperature over y_grid (params.y is ignored). Points without a
// root are left out.
std::vector<PhasePoint> phase_boundary(const PdcParams& params, double tau_i,
                                       std::span<const double> y_grid,
                                       double t_max = kDefaultTMaxKelvin);

struct WitnessValue {
  Real w = 0;                  // threshold - mean_pair_photons
  Real mean_pair_photons = 0;  // (n1 + n2) / 2
  Real threshold = 0;          // sqrt(S0)
};

WitnessValue witness(const PdcParams& params, double tau, double temperature_k);

// Temperature where the witness changes sign, found by bisection like
// critical_temperature.
CriticalTemperature witness_crossing_temperature(const PdcParams& params, double tau,
                                                 double t_max = kDefaultTMaxKelvin,
                                                 double rel_tol = 1e-12);

}  // namespace pdcent

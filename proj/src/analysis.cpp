#include "pdcent/analysis.hpp"

#include <cmath>

#include "pdcent/bisection.hpp"
#include "pdcent/errors.hpp"

namespace pdcent {

namespace {

constexpr double kBteAgreement = 1e-8;

// Bisection on temperature for a function that is negative (entangled) at
// T = 0 and positive once the state is separable.
template <class Func>
CriticalTemperature temperature_root(const Func& f, double t_max, double rel_tol) {
  if (!(t_max > 0.0)) throw ValidationError("t_max must be > 0 K");
  if (!(f(0.0) < 0.0)) return {RootStatus::never_entangled, 0.0};
  if (f(t_max) < 0.0) return {RootStatus::no_root_in_bracket, 0.0};
  const auto root = bisect(f, 0.0, t_max, 0.0, rel_tol);
  if (!root) return {RootStatus::no_root_in_bracket, 0.0};
  return {RootStatus::found, *root};
}

}  // namespace

Real s0_threshold(Real nbar1, Real nbar2) {
  if (!(nbar1 >= 0) || !(nbar2 >= 0)) throw ValidationError("thermal occupations must be >= 0");
  return nbar1 * nbar2 * (nbar1 + 1) * (nbar2 + 1);
}

BteResult birth_time(const PdcParams& params, double temperature_k) {
  const ThermalInit init = thermal_init(params, temperature_k);
  const Real s0 = s0_threshold(init.nbar1, init.nbar2);
  if (s0 == 0) return {0.0, BteMethod::closed_form};

  const Real k = init.nbar1 + init.nbar2 + 1;
  const Real q = s0 / (k * k);
  // Positive root of m^2 + m - q = 0.
  const Real m_star = 2 * q / (1 + std::sqrt(1 + 4 * q));
  const Real x = mismatch_root(params.y);
  const Real root_m = std::sqrt(m_star);
  Real tau_e;
  if (x < kDegenerateX) {
    tau_e = root_m * (1 - x * x * m_star / 6);
  } else {
    tau_e = std::asinh(x * root_m) / x;
  }

  const double closed = static_cast<double>(tau_e);
  const double check = birth_time_bisection(params, temperature_k);
  if (std::fabs(closed - check) > kBteAgreement) return {check, BteMethod::bisection};
  return {closed, BteMethod::closed_form};
}

double birth_time_bisection(const PdcParams& params, double temperature_k, double abs_tol) {
  const ThermalInit init = thermal_init(params, temperature_k);
  const Real s0 = s0_threshold(init.nbar1, init.nbar2);
  if (s0 == 0) return 0.0;
  auto f = [&](double tau) {
    return static_cast<double>(-det_gamma_closed_form(params, tau, init) - s0);
  };
  double hi = 1.0;
  while (f(hi) <= 0.0) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericalDomainError("birth time bracket search diverged");
  }
  return *bisect(f, 0.0, hi, abs_tol);
}

CriticalTemperature critical_temperature(const PdcParams& params, double tau_i, double t_max,
                                         double rel_tol) {
  params.validate();
  auto s_of_t = [&](double t) {
    return static_cast<double>(separability_indicator(covariance_matrix(params, tau_i, t)));
  };
  return temperature_root(s_of_t, t_max, rel_tol);
}

std::vector<PhasePoint> phase_boundary(const PdcParams& params, double tau_i,
                                       std::span<const double> y_grid, double t_max) {
  std::vector<PhasePoint> out;
  out.reserve(y_grid.size());
  for (double y : y_grid) {
    PdcParams p = params;
    p.y = y;
    const CriticalTemperature tc = critical_temperature(p, tau_i, t_max);
    if (tc.status == RootStatus::found) out.push_back({y, tc.t_c});
  }
  return out;
}

WitnessValue witness(const PdcParams& params, double tau, double temperature_k) {
  const ThermalInit init = thermal_init(params, temperature_k);
  const PhotonNumbers n = mean_photon_numbers(params, tau, init);
  WitnessValue w;
  w.threshold = std::sqrt(s0_threshold(init.nbar1, init.nbar2));
  w.mean_pair_photons = 0.5L * (n.n1 + n.n2);
  w.w = w.threshold - w.mean_pair_photons;
  return w;
}

CriticalTemperature witness_crossing_temperature(const PdcParams& params, double tau,
                                                 double t_max, double rel_tol) {
  params.validate();
  auto w_of_t = [&](double t) { return static_cast<double>(witness(params, tau, t).w); };
  return temperature_root(w_of_t, t_max, rel_tol);
}

}  // namespace pdcent

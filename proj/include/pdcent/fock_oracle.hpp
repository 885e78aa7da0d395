#pragma once

// Brute-force backends used to certify the closed forms:
//  * numerical integration of the second-moment equations of motion,
//  * truncated Fock-space density-matrix evolution with partial-transpose
//    negativity.
// Both work in a frame co-rotating with the modes and report lab-frame
// quantities through rotate_to_lab_frame.

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "pdcent/gaussian_core.hpp"
#include "pdcent/pdc_dynamics.hpp"

namespace pdcent {

// ---------------------------------------------------------------------------
// Second-moment ODE

// Frame of the Heisenberg equations.
//  symmetrized: mode j rotates at omega_j' = omega_j_bar + y; the drift only
//               carries the mismatch and the coupling.
//  verbatim:    both modes rotate at omega_bar + y with omega_bar the mean
//               frequency; the drift additionally carries the local detuning
//               (omega2_bar - omega1_bar) / 2.
enum class DriftFrame { symmetrized, verbatim };

using Matrix4 = std::array<Real, 16>;

// Quadrature drift F with dX/dtau = F X in the chosen frame.
Matrix4 drift_matrix(const PdcParams& params, DriftFrame frame);

// Classical fixed-step RK4 for d sigma/d tau = F sigma + sigma F^T. The last
// step is shortened to land on tau_end. No step-size restriction.
Matrix4 integrate_lyapunov_rk4(const Matrix4& drift, const Matrix4& sigma0, double tau_end,
                               double step);

// Rotate a co-rotating-frame CM back to the lab frame at time tau.
CovarianceMatrix rotate_to_lab_frame(const CovarianceMatrix& rotating, const PdcParams& params,
                                     double tau, DriftFrame frame = DriftFrame::symmetrized);

struct MomentSample {
  double tau = 0.0;
  CovarianceMatrix cm;  // lab frame
};

struct MomentTrajectory {
  std::vector<MomentSample> samples;  // tau strictly increasing
  const CovarianceMatrix& final_cm() const { return samples.back().cm; }
};

inline constexpr double kMaxOdeStep = 1e-3;

// Integrates from the thermal product state to tau_end. Records the initial
// state, about max_samples evenly spaced states, and the final state.
// Throws ValidationError for step outside (0, 1e-3] and IntegrationError if a
// recorded state is unphysical.
MomentTrajectory evolve_moments_ode(const PdcParams& params, double tau_end, double temperature_k,
                                    double step = 1e-4,
                                    DriftFrame frame = DriftFrame::symmetrized,
                                    std::size_t max_samples = 100);

// ---------------------------------------------------------------------------
// Truncated Fock space

// Two-mode density matrix on |n1, n2>, n1, n2 <= n_cut. Stored block-sparse by
// photon-number difference d = n1 - n2: the generator conserves d and the
// thermal start is diagonal, so coherences between sectors never appear.
// Block d holds rows/columns indexed by n2 from max(0, -d) to n_cut - max(0, d).
class FockState {
 public:
  FockState() = default;
  explicit FockState(int n_cut);  // zero matrix

  static FockState vacuum(int n_cut);
  // Product of geometric distributions cut at n_cut and renormalized.
  static FockState thermal(Real nbar1, Real nbar2, int n_cut);
  // Throws ValidationError on coherences between different d sectors.
  static FockState from_dense(const Eigen::MatrixXcd& rho, int n_cut);

  int n_cut() const { return n_cut_; }
  std::size_t dimension() const { return static_cast<std::size_t>(n_cut_ + 1) * (n_cut_ + 1); }

  // <n1, n2| rho |m1, m2>; zero outside the stored sectors or the cutoff.
  std::complex<double> element(int n1, int n2, int m1, int m2) const;

  Eigen::MatrixXcd& sector(int d) { return sectors_[static_cast<std::size_t>(d + n_cut_)]; }
  const Eigen::MatrixXcd& sector(int d) const { return sectors_[static_cast<std::size_t>(d + n_cut_)]; }
  static int sector_offset(int d) { return d < 0 ? -d : 0; }  // smallest n2 in sector d

  // Full matrix, basis index n1 * (n_cut + 1) + n2.
  Eigen::MatrixXcd dense() const;

  double trace() const;
  double leakage() const { return 1.0 - trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;

 private:
  int n_cut_ = 0;
  std::vector<Eigen::MatrixXcd> sectors_;
};

struct FockDiagnostics {
  int steps = 0;
  int working_cutoff = 0;
  double leakage = 0.0;
  double max_photon_difference_drift = 0.0;  // |<n1 - n2>(tau) - <n1 - n2>(0)| along the run
};

inline constexpr double kFockLeakageLimit = 1e-4;
inline constexpr double kFockMaxOccupation = 2.0;

// Evolves the thermal state under H = -y (n1 + n2) - (e^{-i phi} a1^dag a2^dag + h.c.)
// (rotating frame, tau = g t) with exact sector propagators applied every
// `step`. The evolution runs on a padded cutoff; the result is projected back
// to n_cut and the lost weight reported as leakage.
// Throws ValidationError on nbar > 2 or n_cut < 8 (1 + max nbar), and
// TruncationError when leakage exceeds 1e-4.
FockState evolve_fock(const PdcParams& params, double tau_end, double temperature_k, int n_cut,
                      double step = 0.25, FockDiagnostics* diagnostics = nullptr);

// Same, starting from given occupations instead of a temperature.
FockState evolve_fock(const PdcParams& params, double tau_end, const ThermalInit& init, int n_cut,
                      double step = 0.25, FockDiagnostics* diagnostics = nullptr);

// ln || rho^{T_2} ||_1 clamped at 0. Throws ValidationError for non-Hermitian rho.
double fock_log_negativity(const FockState& state);

struct FockMoments {
  CovarianceMatrix cm;
  std::array<std::complex<double>, 2> mean_a{};  // <a1>, <a2>
};

// Quadrature moments of rho / tr(rho) in the rotating frame.
FockMoments fock_moments(const FockState& state);
CovarianceMatrix moments_from_fock(const FockState& state);

}  // namespace pdcent

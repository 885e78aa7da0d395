#include "pdcent/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "pdcent/errors.hpp"

namespace pdcent {

namespace {

using cd = std::complex<double>;

Matrix4 multiply(const Matrix4& a, const Matrix4& b) {
  Matrix4 out{};
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k) {
      const Real aik = a[i * 4 + k];
      if (aik == 0) continue;
      for (int j = 0; j < 4; ++j) out[i * 4 + j] += aik * b[k * 4 + j];
    }
  return out;
}

// F S + S F^T
Matrix4 lyapunov_rhs(const Matrix4& f, const Matrix4& s) {
  const Matrix4 fs = multiply(f, s);
  Matrix4 out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[i * 4 + j] = fs[i * 4 + j] + fs[j * 4 + i];
  return out;
}

Matrix4 axpy(const Matrix4& x, Real a, const Matrix4& y) {
  Matrix4 out{};
  for (int i = 0; i < 16; ++i) out[i] = x[i] + a * y[i];
  return out;
}

Matrix4 rk4_step(const Matrix4& f, const Matrix4& s, Real h) {
  const Matrix4 k1 = lyapunov_rhs(f, s);
  const Matrix4 k2 = lyapunov_rhs(f, axpy(s, h / 2, k1));
  const Matrix4 k3 = lyapunov_rhs(f, axpy(s, h / 2, k2));
  const Matrix4 k4 = lyapunov_rhs(f, axpy(s, h, k3));
  Matrix4 out{};
  for (int i = 0; i < 16; ++i) out[i] = s[i] + h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

Matrix4 symmetrize(const Matrix4& s) {
  Matrix4 out = s;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      const Real avg = 0.5L * (s[i * 4 + j] + s[j * 4 + i]);
      out[i * 4 + j] = avg;
      out[j * 4 + i] = avg;
    }
  return out;
}

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw ValidationError("integration step must be > 0");
}

void check_tau_end(double tau_end) {
  if (!(tau_end >= 0.0) || !std::isfinite(tau_end))
    throw ValidationError("tau_end must be finite and >= 0");
}

int sector_size(int cutoff, int d) { return cutoff + 1 - std::abs(d); }

// Ladder operators: 0 = a1, 1 = a1^dag, 2 = a2, 3 = a2^dag.
struct Ket {
  int n1;
  int n2;
  double coef;
};

std::optional<Ket> apply_ladder(int op, Ket k, int cutoff) {
  switch (op) {
    case 0:
      if (k.n1 == 0) return std::nullopt;
      return Ket{k.n1 - 1, k.n2, k.coef * std::sqrt(static_cast<double>(k.n1))};
    case 1:
      if (k.n1 == cutoff) return std::nullopt;
      return Ket{k.n1 + 1, k.n2, k.coef * std::sqrt(static_cast<double>(k.n1 + 1))};
    case 2:
      if (k.n2 == 0) return std::nullopt;
      return Ket{k.n1, k.n2 - 1, k.coef * std::sqrt(static_cast<double>(k.n2))};
    default:
      if (k.n2 == cutoff) return std::nullopt;
      return Ket{k.n1, k.n2 + 1, k.coef * std::sqrt(static_cast<double>(k.n2 + 1))};
  }
}

// tr(rho O) for O a product of ladder operators, rightmost applied first.
cd expectation(const FockState& rho, std::initializer_list<int> ops_left_to_right) {
  const int nc = rho.n_cut();
  std::vector<int> ops(ops_left_to_right);
  std::reverse(ops.begin(), ops.end());
  cd acc = 0;
  for (int n1 = 0; n1 <= nc; ++n1)
    for (int n2 = 0; n2 <= nc; ++n2) {
      std::optional<Ket> k = Ket{n1, n2, 1.0};
      for (int op : ops) {
        k = apply_ladder(op, *k, nc);
        if (!k) break;
      }
      if (!k) continue;
      // <n| rho O |n> = coef <n| rho |l>
      acc += k->coef * rho.element(n1, n2, k->n1, k->n2);
    }
  return acc;
}

std::vector<double> geometric(Real nbar, int n_cut) {
  std::vector<double> p(static_cast<std::size_t>(n_cut + 1), 0.0);
  if (nbar == 0) {
    p[0] = 1.0;
    return p;
  }
  const Real ratio = nbar / (nbar + 1);
  Real w = 1;
  Real total = 0;
  std::vector<Real> raw(p.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    raw[n] = w;
    total += w;
    w *= ratio;
  }
  for (std::size_t n = 0; n < p.size(); ++n) p[n] = static_cast<double>(raw[n] / total);
  return p;
}

// Sector Hamiltonian over n2 = offset .. offset + size - 1, n1 = n2 + d.
Eigen::MatrixXcd sector_hamiltonian(const PdcParams& params, int cutoff, int d) {
  const int size = sector_size(cutoff, d);
  const int offset = FockState::sector_offset(d);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(size, size);
  const cd pump = std::polar(1.0, -params.phi);
  for (int i = 0; i < size; ++i) {
    const int n2 = offset + i;
    const int n1 = n2 + d;
    h(i, i) = -params.y * static_cast<double>(n1 + n2);
    if (i + 1 < size) {
      // <n1+1, n2+1| a1^dag a2^dag |n1, n2>
      const double amp = std::sqrt(static_cast<double>(n1 + 1) * static_cast<double>(n2 + 1));
      h(i + 1, i) = -pump * amp;
      h(i, i + 1) = -std::conj(pump) * amp;
    }
  }
  return h;
}

double photon_difference(const FockState& rho) {
  double acc = 0.0;
  for (int d = -rho.n_cut(); d <= rho.n_cut(); ++d) acc += d * rho.sector(d).trace().real();
  return acc;
}

}  // namespace

// ---------------------------------------------------------------------------
// Moment ODE

Matrix4 drift_matrix(const PdcParams& params, DriftFrame frame) {
  params.validate();
  const Real y = params.y;
  const Real detuning = frame == DriftFrame::verbatim
                            ? (static_cast<Real>(params.omega2_bar) - params.omega1_bar) / 2
                            : 0;
  const Real w1 = detuning + y;  // mode-1 rotation rate in the frame
  const Real w2 = detuning - y;  // mode-2 rotation rate (of b2) with opposite sign
  // db1/dtau = i w1 b1 + i b2^dag,  db2^dag/dtau = -i b1 + i w2 b2^dag
  return Matrix4{0, -w1, 0, 1,  //
                 w1, 0, 1, 0,   //
                 0, 1, 0, w2,   //
                 1, 0, -w2, 0};
}

Matrix4 integrate_lyapunov_rk4(const Matrix4& drift, const Matrix4& sigma0, double tau_end,
                               double step) {
  check_step(step);
  check_tau_end(tau_end);
  Matrix4 s = sigma0;
  Real tau = 0;
  const Real end = tau_end;
  while (tau < end) {
    const Real h = std::min<Real>(step, end - tau);
    s = rk4_step(drift, s, h);
    tau += h;
    if (end - tau < 1e-15L * std::max<Real>(1, end)) break;
  }
  return symmetrize(s);
}

CovarianceMatrix rotate_to_lab_frame(const CovarianceMatrix& rotating, const PdcParams& params,
                                     double tau, DriftFrame frame) {
  const Real t = tau;
  const Real y = params.y;
  if (frame == DriftFrame::verbatim) {
    const Real rate = (static_cast<Real>(params.omega1_bar) + params.omega2_bar) / 2 + y;
    return rotate_local_phases(rotating, rate * t, rate * t);
  }
  return rotate_local_phases(rotating, (params.omega1_bar + y) * t, (params.omega2_bar + y) * t);
}

MomentTrajectory evolve_moments_ode(const PdcParams& params, double tau_end, double temperature_k,
                                    double step, DriftFrame frame, std::size_t max_samples) {
  check_step(step);
  if (step > kMaxOdeStep) {
    std::ostringstream msg;
    msg << "ODE step " << step << " exceeds the oracle limit " << kMaxOdeStep;
    throw ValidationError(msg.str());
  }
  check_tau_end(tau_end);
  const ThermalInit init = thermal_init(params, temperature_k);
  const Matrix4 f = drift_matrix(params, frame);

  const Real d1 = init.nbar1 + 0.5L;
  const Real d2 = init.nbar2 + 0.5L;
  Matrix4 s{d1, 0, 0, 0, 0, d1, 0, 0, 0, 0, d2, 0, 0, 0, 0, d2};

  MomentTrajectory traj;
  traj.samples.push_back({0.0, CovarianceMatrix(s)});
  if (tau_end == 0.0) return traj;

  const auto total_steps = static_cast<std::size_t>(std::ceil(tau_end / step - 1e-9));
  const std::size_t stride = std::max<std::size_t>(1, total_steps / std::max<std::size_t>(1, max_samples));
  const Real h = static_cast<Real>(tau_end) / static_cast<Real>(total_steps);

  for (std::size_t i = 1; i <= total_steps; ++i) {
    s = rk4_step(f, s, h);
    if (i % stride != 0 && i != total_steps) continue;
    const double tau = i == total_steps ? tau_end : static_cast<double>(h * static_cast<Real>(i));
    CovarianceMatrix lab = rotate_to_lab_frame(CovarianceMatrix(symmetrize(s)), params, tau, frame);
    if (!physicality_check(lab)) {
      std::ostringstream msg;
      msg << "moment integration became unphysical at tau = " << tau << " (step " << step << ")";
      throw IntegrationError(msg.str());
    }
    traj.samples.push_back({tau, std::move(lab)});
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Fock state

FockState::FockState(int n_cut) : n_cut_(n_cut) {
  if (n_cut < 0) throw ValidationError("Fock cutoff must be >= 0");
  sectors_.reserve(static_cast<std::size_t>(2 * n_cut + 1));
  for (int d = -n_cut; d <= n_cut; ++d) {
    const int size = sector_size(n_cut, d);
    sectors_.push_back(Eigen::MatrixXcd::Zero(size, size));
  }
}

FockState FockState::vacuum(int n_cut) {
  FockState s(n_cut);
  s.sector(0)(0, 0) = 1.0;
  return s;
}

FockState FockState::thermal(Real nbar1, Real nbar2, int n_cut) {
  if (!(nbar1 >= 0) || !(nbar2 >= 0)) throw ValidationError("thermal occupations must be >= 0");
  FockState s(n_cut);
  const std::vector<double> p1 = geometric(nbar1, n_cut);
  const std::vector<double> p2 = geometric(nbar2, n_cut);
  for (int n1 = 0; n1 <= n_cut; ++n1)
    for (int n2 = 0; n2 <= n_cut; ++n2) {
      const int d = n1 - n2;
      const int i = n2 - sector_offset(d);
      s.sector(d)(i, i) = p1[static_cast<std::size_t>(n1)] * p2[static_cast<std::size_t>(n2)];
    }
  return s;
}

FockState FockState::from_dense(const Eigen::MatrixXcd& rho, int n_cut) {
  FockState s(n_cut);
  const auto dim = static_cast<Eigen::Index>(s.dimension());
  if (rho.rows() != dim || rho.cols() != dim)
    throw ValidationError("dense density matrix has the wrong dimension for this cutoff");
  const int stride = n_cut + 1;
  for (int n1 = 0; n1 <= n_cut; ++n1)
    for (int n2 = 0; n2 <= n_cut; ++n2)
      for (int m1 = 0; m1 <= n_cut; ++m1)
        for (int m2 = 0; m2 <= n_cut; ++m2) {
          const cd v = rho(n1 * stride + n2, m1 * stride + m2);
          const int d = n1 - n2;
          if (d != m1 - m2) {
            if (std::abs(v) > 1e-14)
              throw ValidationError("coherence between different photon-difference sectors");
            continue;
          }
          s.sector(d)(n2 - sector_offset(d), m2 - sector_offset(d)) = v;
        }
  return s;
}

std::complex<double> FockState::element(int n1, int n2, int m1, int m2) const {
  if (n1 < 0 || n2 < 0 || m1 < 0 || m2 < 0) return 0.0;
  if (n1 > n_cut_ || n2 > n_cut_ || m1 > n_cut_ || m2 > n_cut_) return 0.0;
  const int d = n1 - n2;
  if (d != m1 - m2) return 0.0;
  const int off = sector_offset(d);
  return sector(d)(n2 - off, m2 - off);
}

Eigen::MatrixXcd FockState::dense() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  const int stride = n_cut_ + 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (int d = -n_cut_; d <= n_cut_; ++d) {
    const Eigen::MatrixXcd& blk = sector(d);
    const int off = sector_offset(d);
    for (Eigen::Index i = 0; i < blk.rows(); ++i)
      for (Eigen::Index j = 0; j < blk.cols(); ++j) {
        const int n2 = off + static_cast<int>(i);
        const int m2 = off + static_cast<int>(j);
        out((n2 + d) * stride + n2, (m2 + d) * stride + m2) = blk(i, j);
      }
  }
  return out;
}

double FockState::trace() const {
  double acc = 0.0;
  for (const auto& blk : sectors_) acc += blk.trace().real();
  return acc;
}

double FockState::hermiticity_error() const {
  double err = 0.0;
  for (const auto& blk : sectors_)
    if (blk.size() > 0) err = std::max(err, (blk - blk.adjoint()).cwiseAbs().maxCoeff());
  return err;
}

double FockState::min_eigenvalue() const {
  double lo = 0.0;
  bool first = true;
  for (const auto& blk : sectors_) {
    if (blk.size() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk, Eigen::EigenvaluesOnly);
    const double v = es.eigenvalues().minCoeff();
    lo = first ? v : std::min(lo, v);
    first = false;
  }
  return lo;
}

// ---------------------------------------------------------------------------
// Fock evolution

FockState evolve_fock(const PdcParams& params, double tau_end, double temperature_k, int n_cut,
                      double step, FockDiagnostics* diagnostics) {
  return evolve_fock(params, tau_end, thermal_init(params, temperature_k), n_cut, step,
                     diagnostics);
}

FockState evolve_fock(const PdcParams& params, double tau_end, const ThermalInit& init, int n_cut,
                      double step, FockDiagnostics* diagnostics) {
  params.validate();
  check_tau_end(tau_end);
  check_step(step);
  const Real nmax = std::max(init.nbar1, init.nbar2);
  if (nmax > kFockMaxOccupation) {
    std::ostringstream msg;
    msg << "Fock oracle is limited to occupations <= " << kFockMaxOccupation << " (got "
        << static_cast<double>(nmax) << ")";
    throw ValidationError(msg.str());
  }
  if (static_cast<Real>(n_cut) < 8 * (1 + nmax)) {
    std::ostringstream msg;
    msg << "n_cut = " << n_cut << " below 8 (1 + max nbar) = " << static_cast<double>(8 * (1 + nmax));
    throw ValidationError(msg.str());
  }

  const int work = n_cut + n_cut / 2 + 4;
  FockState rho(work);
  {
    const FockState start = FockState::thermal(init.nbar1, init.nbar2, n_cut);
    for (int d = -n_cut; d <= n_cut; ++d) {
      const Eigen::MatrixXcd& src = start.sector(d);
      rho.sector(d).topLeftCorner(src.rows(), src.cols()) = src;
    }
  }

  const double diff0 = photon_difference(rho);
  double drift = 0.0;
  int steps = 0;
  if (tau_end > 0.0) {
    steps = static_cast<int>(std::ceil(tau_end / step - 1e-9));
    steps = std::max(steps, 1);
    const double h = tau_end / steps;
    std::vector<Eigen::MatrixXcd> props;
    props.reserve(static_cast<std::size_t>(2 * work + 1));
    for (int d = -work; d <= work; ++d) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sector_hamiltonian(params, work, d));
      const Eigen::VectorXcd phases =
          (es.eigenvalues().cast<cd>() * cd(0.0, -h)).array().exp().matrix();
      props.push_back(es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint());
    }
    for (int s = 0; s < steps; ++s) {
      for (int d = -work; d <= work; ++d) {
        const Eigen::MatrixXcd& u = props[static_cast<std::size_t>(d + work)];
        Eigen::MatrixXcd& blk = rho.sector(d);
        blk = (u * blk * u.adjoint()).eval();
        blk = (0.5 * (blk + blk.adjoint())).eval();
      }
      drift = std::max(drift, std::fabs(photon_difference(rho) - diff0));
    }
  }

  FockState out(n_cut);
  for (int d = -n_cut; d <= n_cut; ++d) {
    const Eigen::Index size = sector_size(n_cut, d);
    out.sector(d) = rho.sector(d).topLeftCorner(size, size);
  }
  const double leak = out.leakage();
  if (diagnostics != nullptr) *diagnostics = {steps, work, leak, drift};
  if (leak > kFockLeakageLimit) {
    std::ostringstream msg;
    msg << "Fock truncation leakage " << leak << " exceeds " << kFockLeakageLimit
        << "; raise n_cut above " << n_cut;
    throw TruncationError(msg.str());
  }
  return out;
}

double fock_log_negativity(const FockState& state) {
  if (state.hermiticity_error() > 1e-12) throw ValidationError("density matrix is not Hermitian");
  const int nc = state.n_cut();
  // rho^{T_2} only couples states of equal total photon number.
  double norm = 0.0;
  for (int total = 0; total <= 2 * nc; ++total) {
    const int lo = std::max(0, total - nc);
    const int hi = std::min(total, nc);
    const int size = hi - lo + 1;
    Eigen::MatrixXcd blk(size, size);
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) {
        const int n1 = lo + i, n2 = total - n1;
        const int m1 = lo + j, m2 = total - m1;
        // <n1 n2| rho^{T_2} |m1 m2> = <n1 m2| rho |m1 n2>
        blk(i, j) = state.element(n1, m2, m1, n2);
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk, Eigen::EigenvaluesOnly);
    norm += es.eigenvalues().cwiseAbs().sum();
  }
  return std::max(0.0, std::log(norm));
}

FockMoments fock_moments(const FockState& state) {
  const double tr = state.trace();
  if (!(tr > 0.0)) throw ValidationError("density matrix has non-positive trace");

  std::array<cd, 4> mean{};
  for (int op = 0; op < 4; ++op) mean[static_cast<std::size_t>(op)] = expectation(state, {op}) / tr;
  std::array<std::array<cd, 4>, 4> second{};
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v)
      second[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = expectation(state, {u, v}) / tr;

  const double r = 1.0 / std::sqrt(2.0);
  const cd i(0.0, 1.0);
  // Quadratures as combinations of (a1, a1^dag, a2, a2^dag).
  const std::array<std::array<cd, 4>, 4> c{{
      {r, r, 0, 0},
      {-i * r, i * r, 0, 0},
      {0, 0, r, r},
      {0, 0, -i * r, i * r},
  }};

  std::array<Real, 16> raw{};
  for (int k = 0; k < 4; ++k)
    for (int l = 0; l < 4; ++l) {
      cd acc = 0;
      for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v) {
          const auto su = static_cast<std::size_t>(u);
          const auto sv = static_cast<std::size_t>(v);
          acc += c[static_cast<std::size_t>(k)][su] * c[static_cast<std::size_t>(l)][sv] *
                 (second[su][sv] - mean[su] * mean[sv]);
        }
      raw[static_cast<std::size_t>(k * 4 + l)] = acc.real();
    }
  for (int k = 0; k < 4; ++k)
    for (int l = k + 1; l < 4; ++l) {
      const Real avg = 0.5L * (raw[static_cast<std::size_t>(k * 4 + l)] + raw[static_cast<std::size_t>(l * 4 + k)]);
      raw[static_cast<std::size_t>(k * 4 + l)] = avg;
      raw[static_cast<std::size_t>(l * 4 + k)] = avg;
    }
  return {CovarianceMatrix(raw), {mean[0], mean[2]}};
}

CovarianceMatrix moments_from_fock(const FockState& state) { return fock_moments(state).cm; }

}  // namespace pdcent

#include "pdcent/gaussian_core.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "pdcent/errors.hpp"

namespace pdcent {

namespace {

constexpr Real kQuarter = 0.25L;
constexpr Real kSixteenth = 0.0625L;
constexpr double kPhysicalitySlack = 1e-9;
// Relative slack on delta^2 - 4 i1 before declaring the spectrum complex.
constexpr Real kDiscriminantSlack = 1e-14L;

Real cofactor_det4(const std::array<Real, 16>& m) {
  auto at = [&](int r, int c) { return m[r * 4 + c]; };
  // Expansion along the first row using 2x2 minors of the bottom rows.
  const Real s0 = at(2, 0) * at(3, 1) - at(2, 1) * at(3, 0);
  const Real s1 = at(2, 0) * at(3, 2) - at(2, 2) * at(3, 0);
  const Real s2 = at(2, 0) * at(3, 3) - at(2, 3) * at(3, 0);
  const Real s3 = at(2, 1) * at(3, 2) - at(2, 2) * at(3, 1);
  const Real s4 = at(2, 1) * at(3, 3) - at(2, 3) * at(3, 1);
  const Real s5 = at(2, 2) * at(3, 3) - at(2, 3) * at(3, 2);
  const Real c0 = at(1, 1) * s5 - at(1, 2) * s4 + at(1, 3) * s3;
  const Real c1 = at(1, 0) * s5 - at(1, 2) * s2 + at(1, 3) * s1;
  const Real c2 = at(1, 0) * s4 - at(1, 1) * s2 + at(1, 3) * s0;
  const Real c3 = at(1, 0) * s3 - at(1, 1) * s1 + at(1, 2) * s0;
  return at(0, 0) * c0 - at(0, 1) * c1 + at(0, 2) * c2 - at(0, 3) * c3;
}

Mat2 multiply(const Mat2& a, const Mat2& b) {
  return {a.xx * b.xx + a.xy * b.yx, a.xx * b.xy + a.xy * b.yy,
          a.yx * b.xx + a.yy * b.yx, a.yx * b.xy + a.yy * b.yy};
}

// Ascending symplectic pair from (sum of squares, product of squares).
bool spectrum_from_invariants(Real sum_sq, Real prod_sq, Real& lo, Real& hi) {
  Real disc = sum_sq * sum_sq - 4 * prod_sq;
  if (disc < 0) {
    if (disc < -kDiscriminantSlack * sum_sq * sum_sq) return false;
    disc = 0;
  }
  const Real hi_sq = 0.5L * (sum_sq + std::sqrt(disc));
  if (hi_sq <= 0 || prod_sq < 0) return false;
  hi = std::sqrt(hi_sq);
  lo = std::sqrt(prod_sq / hi_sq);
  return true;
}

}  // namespace

CovarianceMatrix::CovarianceMatrix() : CovarianceMatrix(vacuum()) {}

CovarianceMatrix::CovarianceMatrix(const std::array<Real, 16>& row_major) : m_(row_major) {
  Real scale = 1;
  for (Real v : m_) {
    if (!std::isfinite(v)) throw ValidationError("covariance matrix has a non-finite entry");
    scale = std::max(scale, std::fabs(v));
  }
  for (int i = 0; i < kDim; ++i) {
    for (int j = i + 1; j < kDim; ++j) {
      const Real diff = std::fabs(m_[i * kDim + j] - m_[j * kDim + i]);
      if (diff > kSymmetryTolerance * scale) {
        std::ostringstream msg;
        msg << "covariance matrix not symmetric at (" << i << "," << j << "): |diff| = "
            << static_cast<double>(diff);
        throw ValidationError(msg.str());
      }
      m_[j * kDim + i] = m_[i * kDim + j];
    }
  }
}

CovarianceMatrix CovarianceMatrix::vacuum() { return diagonal(0.5L, 0.5L, 0.5L, 0.5L); }

CovarianceMatrix CovarianceMatrix::diagonal(Real s11, Real s22, Real s33, Real s44) {
  std::array<Real, 16> e{};
  e[0] = s11;
  e[5] = s22;
  e[10] = s33;
  e[15] = s44;
  return CovarianceMatrix(e);
}

Real CovarianceMatrix::max_abs() const {
  Real out = 0;
  for (Real v : m_) out = std::max(out, std::fabs(v));
  return out;
}

BlockDecomposition block_decompose(const CovarianceMatrix& cm) {
  BlockDecomposition b;
  b.alpha = {cm(0, 0), cm(0, 1), cm(1, 0), cm(1, 1)};
  b.beta = {cm(2, 2), cm(2, 3), cm(3, 2), cm(3, 3)};
  b.gamma = {cm(0, 2), cm(0, 3), cm(1, 2), cm(1, 3)};
  return b;
}

CovarianceMatrix BlockDecomposition::reassemble() const {
  const Mat2 gt = gamma.transposed();
  return CovarianceMatrix(std::array<Real, 16>{
      alpha.xx, alpha.xy, gamma.xx, gamma.xy,  //
      alpha.yx, alpha.yy, gamma.yx, gamma.yy,  //
      gt.xx, gt.xy, beta.xx, beta.xy,          //
      gt.yx, gt.yy, beta.yx, beta.yy});
}

Real determinant(const CovarianceMatrix& cm) {
  const BlockDecomposition b = block_decompose(cm);
  const Real det_alpha = b.alpha.det();
  if (b.alpha.xx > 0 && det_alpha > 0) {
    // det sigma = det(alpha) det(beta - gamma^T alpha^-1 gamma). For strongly
    // correlated states the cancellation then happens at second order in the
    // entries instead of fourth.
    const Mat2 adj_alpha{b.alpha.yy, -b.alpha.xy, -b.alpha.yx, b.alpha.xx};
    const Mat2 x = multiply(multiply(b.gamma.transposed(), adj_alpha), b.gamma);
    const Mat2 schur{b.beta.xx - x.xx / det_alpha, b.beta.xy - x.xy / det_alpha,
                     b.beta.yx - x.yx / det_alpha, b.beta.yy - x.yy / det_alpha};
    return det_alpha * schur.det();
  }
  return cofactor_det4(cm.entries());
}

SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm) {
  const BlockDecomposition b = block_decompose(cm);
  SymplecticInvariants inv;
  const Real det_a = b.alpha.det();
  const Real det_b = b.beta.det();
  inv.det_gamma = b.gamma.det();
  inv.i1 = determinant(cm);
  inv.i2 = det_a + det_b + 2 * inv.det_gamma;
  inv.s0 = inv.i1 - kQuarter * inv.i2 + kSixteenth;
  inv.s = inv.s0 + 0.5L * (inv.det_gamma - std::fabs(inv.det_gamma));
  inv.delta_tilde = det_a + det_b - 2 * inv.det_gamma;
  if (!spectrum_from_invariants(inv.delta_tilde, inv.i1, inv.nu_minus_pt, inv.nu_plus_pt)) {
    std::ostringstream msg;
    msg << "partially transposed symplectic spectrum is complex (delta_tilde = "
        << static_cast<double>(inv.delta_tilde) << ", i1 = " << static_cast<double>(inv.i1)
        << "); covariance matrix is unphysical";
    throw NumericalDomainError(msg.str());
  }
  return inv;
}

Real separability_indicator(const CovarianceMatrix& cm) { return symplectic_invariants(cm).s; }

Real log_negativity(const CovarianceMatrix& cm) {
  const Real nu = symplectic_invariants(cm).nu_minus_pt;
  return std::max<Real>(0, -std::log(2 * nu));
}

EntanglementReport entanglement_report(const CovarianceMatrix& cm) {
  const SymplecticInvariants inv = symplectic_invariants(cm);
  EntanglementReport r;
  r.s = inv.s;
  r.entangled = inv.s < 0;
  r.nu_minus_pt = inv.nu_minus_pt;
  r.nu_plus_pt = inv.nu_plus_pt;
  r.log_negativity = std::max<Real>(0, -std::log(2 * inv.nu_minus_pt));
  return r;
}

bool symplectic_eigenvalues(const CovarianceMatrix& cm, Real& nu_minus, Real& nu_plus) {
  const BlockDecomposition b = block_decompose(cm);
  const Real delta = b.alpha.det() + b.beta.det() + 2 * b.gamma.det();
  return spectrum_from_invariants(delta, determinant(cm), nu_minus, nu_plus);
}

bool physicality_check(const CovarianceMatrix& cm) {
  // Both symplectic eigenvalues >= c  <=>  sigma + i c Omega >= 0, tested by a
  // complex Cholesky factorization. Going through the invariants instead
  // loses half the digits when the two eigenvalues are nearly degenerate
  // (pure states).
  using C = std::complex<Real>;
  const Real c = 0.5L - kPhysicalitySlack;
  std::array<C, 16> h{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) h[i * 4 + j] = cm(i, j);
  for (int mode = 0; mode < 2; ++mode) {
    const int q = 2 * mode, p = q + 1;
    h[q * 4 + p] += C(0, c);
    h[p * 4 + q] -= C(0, c);
  }
  std::array<C, 16> l{};
  for (int j = 0; j < 4; ++j) {
    Real d = h[j * 4 + j].real();
    for (int k = 0; k < j; ++k) d -= std::norm(l[j * 4 + k]);
    if (!(d > 0)) return false;
    const Real ljj = std::sqrt(d);
    l[j * 4 + j] = ljj;
    for (int i = j + 1; i < 4; ++i) {
      C acc = h[i * 4 + j];
      for (int k = 0; k < j; ++k) acc -= l[i * 4 + k] * std::conj(l[j * 4 + k]);
      l[i * 4 + j] = acc / ljj;
    }
  }
  return true;
}

CovarianceMatrix rotate_local_phases(const CovarianceMatrix& cm, Real angle1, Real angle2) {
  const Real c1 = std::cos(angle1), s1 = std::sin(angle1);
  const Real c2 = std::cos(angle2), s2 = std::sin(angle2);
  const std::array<Real, 16> r{c1, s1, 0, 0, -s1, c1, 0, 0, 0, 0, c2, s2, 0, 0, -s2, c2};
  std::array<Real, 16> tmp{};
  std::array<Real, 16> out{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Real acc = 0;
      for (int k = 0; k < 4; ++k) acc += r[i * 4 + k] * cm(k, j);
      tmp[i * 4 + j] = acc;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Real acc = 0;
      for (int k = 0; k < 4; ++k) acc += tmp[i * 4 + k] * r[j * 4 + k];
      out[i * 4 + j] = acc;
    }
  return CovarianceMatrix(out);
}

}  // namespace pdcent

#pragma once

// Covariance-matrix algebra for two-mode Gaussian states.
//
// Conventions: quadratures ordered (q1, p1, q2, p2) with q = (a + a^dag)/sqrt(2)
// and p = (a - a^dag)/(i sqrt(2)), so the vacuum covariance matrix is I/2.
// Entries are held in long double: the states of interest are strongly
// squeezed (entries ~1e4) while the determinant stays O(1), and the
// invariants below lose too many digits in double.

#include <array>

namespace pdcent {

using Real = long double;

struct Mat2 {
  Real xx = 0, xy = 0, yx = 0, yy = 0;

  Real det() const { return xx * yy - xy * yx; }
  Mat2 transposed() const { return {xx, yx, xy, yy}; }
};

class CovarianceMatrix {
 public:
  static constexpr int kDim = 4;
  static constexpr double kSymmetryTolerance = 1e-12;

  // Vacuum.
  CovarianceMatrix();

  // Row-major entries. Throws ValidationError if the matrix is not symmetric
  // within kSymmetryTolerance * max(1, max|entry|) or holds non-finite values.
  // The stored matrix is exactly symmetric (upper triangle is mirrored).
  explicit CovarianceMatrix(const std::array<Real, 16>& row_major);

  static CovarianceMatrix vacuum();
  static CovarianceMatrix diagonal(Real s11, Real s22, Real s33, Real s44);

  Real operator()(int row, int col) const { return m_[row * kDim + col]; }
  const std::array<Real, 16>& entries() const { return m_; }
  Real max_abs() const;

 private:
  std::array<Real, 16> m_{};
};

struct BlockDecomposition {
  Mat2 alpha;  // mode-1 local CM
  Mat2 beta;   // mode-2 local CM
  Mat2 gamma;  // intermodal correlations (rows of mode 1, columns of mode 2)

  CovarianceMatrix reassemble() const;
};

struct SymplecticInvariants {
  Real i1 = 0;           // det sigma
  Real i2 = 0;           // det alpha + det beta + 2 det gamma
  Real s0 = 0;           // i1 - i2/4 + 1/16
  Real s = 0;            // s0 + (det gamma - |det gamma|)/2
  Real det_gamma = 0;
  Real delta_tilde = 0;  // det alpha + det beta - 2 det gamma
  Real nu_minus_pt = 0;  // partially transposed symplectic spectrum
  Real nu_plus_pt = 0;
};

struct EntanglementReport {
  Real log_negativity = 0;  // natural-log units
  Real s = 0;
  bool entangled = false;   // s < 0
  Real nu_minus_pt = 0;
  Real nu_plus_pt = 0;
};

BlockDecomposition block_decompose(const CovarianceMatrix& cm);

// 4x4 determinant through the Schur complement of the mode-1 block when that
// block is positive definite, cofactor expansion otherwise.
Real determinant(const CovarianceMatrix& cm);

// Throws NumericalDomainError when delta_tilde^2 < 4 i1 beyond rounding,
// which only happens for unphysical input.
SymplecticInvariants symplectic_invariants(const CovarianceMatrix& cm);

Real separability_indicator(const CovarianceMatrix& cm);

// max(0, -ln(2 nu_minus_pt)).
Real log_negativity(const CovarianceMatrix& cm);

EntanglementReport entanglement_report(const CovarianceMatrix& cm);

// Symplectic eigenvalues of the matrix itself (not the partial transpose),
// ascending. Returns false if they are complex.
bool symplectic_eigenvalues(const CovarianceMatrix& cm, Real& nu_minus, Real& nu_plus);

// Positive definite and both symplectic eigenvalues >= 1/2 - 1e-9.
bool physicality_check(const CovarianceMatrix& cm);

// Local phase-space rotations q_j' = cos(a_j) q_j + sin(a_j) p_j,
// p_j' = -sin(a_j) q_j + cos(a_j) p_j, i.e. a_j -> exp(-i a_j) a_j.
CovarianceMatrix rotate_local_phases(const CovarianceMatrix& cm, Real angle1, Real angle2);

}  // namespace pdcent

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pdcent/errors.hpp"
#include "pdcent/pdc_dynamics.hpp"

using namespace pdcent;

namespace {

double d(Real v) { return static_cast<double>(v); }

// Independent reference for the occupations at 300 K (40-digit arithmetic).
constexpr double kNbar1At300 = 199.852523012059137750;
constexpr double kNbar2At300 = 99.6768854063334970483;

}  // namespace

TEST(ThermalOccupation, ZeroTemperatureIsExactlyZero) {
  EXPECT_EQ(thermal_occupation(1e12, 0.0), 0);
}

TEST(ThermalOccupation, LnTwoGivesOne) {
  const double omega = std::log(2.0) * constants::kBoltzmann / constants::kHbar;  // at 1 K
  EXPECT_NEAR(d(thermal_occupation(omega, 1.0)), 1.0, 1e-14);
}

TEST(ThermalOccupation, DefaultFrequenciesAt300K) {
  const ThermalInit init = thermal_init(default_parameters(), 300.0);
  EXPECT_NEAR(d(init.nbar1) / kNbar1At300, 1.0, 1e-13);
  EXPECT_NEAR(d(init.nbar2) / kNbar2At300, 1.0, 1e-13);
}

TEST(ThermalOccupation, HighTemperatureLimit) {
  const double omega = 1e10, t = 1e4;
  const double x = constants::kHbar * omega / (constants::kBoltzmann * t);
  EXPECT_NEAR(d(thermal_occupation(omega, t)) * x, 1.0 - x / 2, 1e-9);
}

TEST(ThermalOccupation, RejectsBadInput) {
  EXPECT_THROW(thermal_occupation(0.0, 300.0), ValidationError);
  EXPECT_THROW(thermal_occupation(-1.0, 300.0), ValidationError);
  EXPECT_THROW(thermal_occupation(1e12, -1.0), ValidationError);
  EXPECT_THROW(thermal_occupation(1e12, std::nan("")), ValidationError);
}

TEST(PdcParams, Validation) {
  EXPECT_NO_THROW(default_parameters(0.99).validate());
  EXPECT_THROW(default_parameters(1.0).validate(), ValidationError);
  EXPECT_THROW(default_parameters(-0.1).validate(), ValidationError);
  PdcParams p;
  p.omega1_bar = 0;
  EXPECT_THROW(p.validate(), ValidationError);
  p = PdcParams{};
  p.g = -1;
  EXPECT_THROW(p.validate(), ValidationError);
  EXPECT_THROW(covariance_matrix(default_parameters(), -0.5, 0.0), ValidationError);
  EXPECT_THROW(ab_coefficients(1.0, 1.0), ValidationError);
}

TEST(PdcParams, DefaultValues) {
  const PdcParams p = default_parameters(0.25);
  EXPECT_DOUBLE_EQ(p.omega1_bar, 200.0);
  EXPECT_DOUBLE_EQ(p.omega2_bar, 400.0);
  EXPECT_DOUBLE_EQ(p.g, constants::kPi * 1e-2 * 3.12e10);
  EXPECT_DOUBLE_EQ(p.y, 0.25);
  EXPECT_DOUBLE_EQ(p.omega1(), 200.0 * p.g);
}

TEST(AbCoefficients, Examples) {
  const ModeCoefficients c0 = ab_coefficients(0.4, 0.0);
  EXPECT_EQ(c0.a_coef, std::complex<Real>(1, 0));
  EXPECT_EQ(c0.b_coef, std::complex<Real>(0, 0));

  const ModeCoefficients c1 = ab_coefficients(0.0, 1.0);
  EXPECT_NEAR(d(c1.a_coef.real()), std::cosh(1.0), 1e-15);
  EXPECT_NEAR(d(c1.a_coef.imag()), 0.0, 1e-15);
  EXPECT_NEAR(d(c1.b_coef.real()), 0.0, 1e-15);
  EXPECT_NEAR(d(c1.b_coef.imag()), std::sinh(1.0), 1e-15);

  // Near-degenerate: x ~ 1.4e-7 uses the series branch, A ~ 1 + i y tau, B ~ i tau.
  const ModeCoefficients c2 = ab_coefficients(1.0 - 1e-14, 2.0);
  EXPECT_NEAR(d(c2.a_coef.real()), 1.0, 1e-9);
  EXPECT_NEAR(d(c2.a_coef.imag()), 2.0, 1e-9);
  EXPECT_NEAR(d(c2.b_coef.real()), 0.0, 1e-9);
  EXPECT_NEAR(d(c2.b_coef.imag()), 2.0, 1e-9);
}

TEST(AbCoefficients, MismatchedValueAgainstDirectFormula) {
  const double y = 0.6, tau = 2.0, x = 0.8;
  const ModeCoefficients c = ab_coefficients(y, tau);
  EXPECT_NEAR(d(c.a_coef.real()), std::cosh(x * tau), 1e-14);
  EXPECT_NEAR(d(c.a_coef.imag()), y * std::sinh(x * tau) / x, 1e-14);
  EXPECT_NEAR(d(c.b_coef.imag()), std::sinh(x * tau) / x, 1e-14);
}

TEST(AbCoefficients, CanonicalConstraintOnGrid) {
  for (int iy = 0; iy < 20; ++iy)
    for (int k = 0; k <= 100; ++k) {
      const double y = 0.05 * iy, tau = 0.1 * k;
      const ModeCoefficients c = ab_coefficients(y, tau);
      EXPECT_NEAR(d(std::norm(c.a_coef) - std::norm(c.b_coef)), 1.0, 1e-10) << y << " " << tau;
    }
}

TEST(AbCoefficients, ContinuousAcrossDegenerateBranch) {
  // x = sqrt((1 - y)(1 + y)) on both sides of the switch at 1e-6.
  const double y_in = std::sqrt(1.0 - 0.99e-12);   // x just below the switch
  const double y_out = std::sqrt(1.0 - 1.01e-12);  // x just above
  for (double tau : {0.5, 3.0, 10.0}) {
    const ModeCoefficients a = ab_coefficients(y_in, tau), b = ab_coefficients(y_out, tau);
    EXPECT_NEAR(d(std::abs(a.a_coef - b.a_coef)), 0.0, 1e-9 * (1 + d(std::abs(a.a_coef))));
    EXPECT_NEAR(d(std::abs(a.b_coef - b.b_coef)), 0.0, 1e-9 * (1 + d(std::abs(a.b_coef))));
  }
}

TEST(SqueezingParameter, Examples) {
  EXPECT_NEAR(d(squeezing_parameter(0.0, 1.7)), 1.7, 1e-15);
  EXPECT_NEAR(d(squeezing_parameter(0.6, 2.0)), 1.6, 1e-15);
  EXPECT_EQ(squeezing_parameter(0.3, 0.0), 0);
  EXPECT_NEAR(d(squeezing_parameter(1.0 - 1e-14, 5.0)), 5.0 * std::sqrt(2e-14), 1e-9);
  EXPECT_THROW(squeezing_parameter(0.3, -1.0), ValidationError);
}

TEST(PairGain, Examples) {
  EXPECT_NEAR(d(pair_gain(0.0, 1.0)), std::pow(std::sinh(1.0), 2), 1e-14);
  EXPECT_NEAR(d(pair_gain(0.6, 2.0)), std::pow(std::sinh(1.6) / 0.8, 2), 1e-13);
  EXPECT_NEAR(d(pair_gain(1.0 - 1e-14, 3.0)), 9.0, 1e-9);
}

TEST(MeanPhotonNumbers, Examples) {
  const PdcParams p = default_parameters(0.0);
  const PhotonNumbers n0 = mean_photon_numbers(p, 0.0, 300.0);
  EXPECT_NEAR(d(n0.n1), kNbar1At300, 1e-10);
  EXPECT_NEAR(d(n0.n2), kNbar2At300, 1e-10);
  const PhotonNumbers nv = mean_photon_numbers(p, 0.8, 0.0);
  EXPECT_NEAR(d(nv.n1), std::pow(std::sinh(0.8), 2), 1e-14);
  EXPECT_NEAR(d(nv.n2), std::pow(std::sinh(0.8), 2), 1e-14);
}

TEST(MeanPhotonNumbers, AgreeWithCoefficientForm) {
  // n1 = |A|^2 nbar1 + |B|^2 (nbar2 + 1)
  for (double y : {0.0, 0.4, 0.9})
    for (double t : {0.0, 20.0, 300.0})
      for (double tau : {0.3, 1.1, 4.0}) {
        const PdcParams p = default_parameters(y);
        const ThermalInit init = thermal_init(p, t);
        const ModeCoefficients c = ab_coefficients(y, tau);
        const Real n1 = std::norm(c.a_coef) * init.nbar1 + std::norm(c.b_coef) * (init.nbar2 + 1);
        const Real n2 = std::norm(c.a_coef) * init.nbar2 + std::norm(c.b_coef) * (init.nbar1 + 1);
        const PhotonNumbers n = mean_photon_numbers(p, tau, init);
        EXPECT_NEAR(d(n.n1 / n1), 1.0, 1e-12);
        EXPECT_NEAR(d(n.n2 / n2), 1.0, 1e-12);
        // Local diagonal of the CM is n + 1/2.
        const auto cm = covariance_matrix(p, tau, init);
        EXPECT_NEAR(d(cm(0, 0) / (n.n1 + 0.5L)), 1.0, 1e-12);
        EXPECT_NEAR(d(cm(2, 2) / (n.n2 + 0.5L)), 1.0, 1e-12);
      }
}

TEST(MeanPhotonNumbers, DifferenceIsConservedOnRandomDraws) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> uy(0.0, 0.999), ut(0.0, 600.0), utau(0.0, 8.0);
  for (int trial = 0; trial < 300; ++trial) {
    const PdcParams p = default_parameters(uy(rng));
    const ThermalInit init = thermal_init(p, ut(rng));
    const PhotonNumbers n = mean_photon_numbers(p, utau(rng), init);
    EXPECT_NEAR(d(n.n1 - n.n2 - (init.nbar1 - init.nbar2)), 0.0, 1e-9);
  }
}

TEST(CovarianceMatrix, InitialStateIsThermalProduct) {
  const PdcParams p = default_parameters(0.5);
  const ThermalInit init = thermal_init(p, 150.0);
  const auto cm = covariance_matrix(p, 0.0, init);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) EXPECT_EQ(cm(i, j), 0) << i << j;
  EXPECT_EQ(cm(0, 0), init.nbar1 + 0.5L);
  EXPECT_EQ(cm(3, 3), init.nbar2 + 0.5L);
}

TEST(CovarianceMatrix, CorrelationSignStructure) {
  for (double y : {0.0, 0.5, 0.9})
    for (double tau : {0.4, 1.3, 2.881}) {
      const auto cm = covariance_matrix(default_parameters(y), tau, 50.0);
      EXPECT_EQ(cm(1, 3), -cm(0, 2));
      EXPECT_EQ(cm(1, 2), cm(0, 3));
      EXPECT_EQ(cm(0, 1), 0);
      EXPECT_EQ(cm(2, 3), 0);
    }
}

TEST(DetGamma, ClosedFormMatchesMatrixOnGrid) {
  for (double y : {0.0, 0.2, 0.5, 0.8, 0.95})
    for (double t : {0.0, 10.0, 300.0})
      for (int k = 1; k <= 30; ++k) {
        const double tau = 0.2 * k;
        const PdcParams p = default_parameters(y);
        const Real closed = det_gamma_closed_form(p, tau, t);
        const Real numeric = block_decompose(covariance_matrix(p, tau, t)).gamma.det();
        EXPECT_NEAR(d(numeric / closed), 1.0, 1e-10) << y << " " << t << " " << tau;
      }
}

TEST(DetGamma, Examples) {
  EXPECT_EQ(det_gamma_closed_form(default_parameters(0.3), 0.0, 300.0), 0);
  const Real sc = std::sinh(1.0L) * std::cosh(1.0L);
  EXPECT_NEAR(d(det_gamma_closed_form(default_parameters(0.0), 1.0, 0.0)), d(-sc * sc), 1e-14);
}

TEST(DetGamma, NonPositiveAndMonotoneInTau) {
  for (double y : {0.0, 0.5, 0.99})
    for (double t : {0.0, 300.0}) {
      Real prev = 0;
      for (int k = 1; k <= 100; ++k) {
        const Real v = det_gamma_closed_form(default_parameters(y), 0.05 * k, t);
        EXPECT_LT(v, 0);
        EXPECT_LT(v, prev);
        prev = v;
      }
    }
}

TEST(CovarianceMatrix, EntanglementIndependentOfCarrierFrequencies) {
  // I1, I2, S and E_N do not depend on omega1_bar + omega2_bar at fixed occupations.
  const ThermalInit init{0.0, 3.0L, 1.5L};
  for (double y : {0.0, 0.7})
    for (double tau : {0.5, 2.0}) {
      PdcParams ref = default_parameters(y);
      const SymplecticInvariants a = symplectic_invariants(covariance_matrix(ref, tau, init));
      for (double w : {1.0, 37.5, 1234.0}) {
        PdcParams p = ref;
        p.omega1_bar = w;
        p.omega2_bar = 3 * w;
        const auto cm = covariance_matrix(p, tau, init);
        const SymplecticInvariants b = symplectic_invariants(cm);
        EXPECT_NEAR(d(b.i1 / a.i1), 1.0, 1e-11);
        EXPECT_NEAR(d(b.i2 / a.i2), 1.0, 1e-11);
        EXPECT_NEAR(d(b.s - a.s), 0.0, 1e-9 * std::fabs(d(a.s)));
        EXPECT_NEAR(d(log_negativity(cm)), d(log_negativity(covariance_matrix(ref, tau, init))), 1e-11);
      }
    }
}

TEST(CovarianceMatrix, InvariantsConservedAlongTrajectory) {
  for (double y : {0.0, 0.5, 0.9})
    for (double t : {0.0, 50.0, 300.0}) {
      const PdcParams p = default_parameters(y);
      const SymplecticInvariants ref = symplectic_invariants(covariance_matrix(p, 0.0, t));
      for (int k = 0; k < 50; ++k) {
        const SymplecticInvariants inv = symplectic_invariants(covariance_matrix(p, 0.1 * k, t));
        EXPECT_NEAR(d(inv.i1 / ref.i1), 1.0, 1e-9);
        EXPECT_NEAR(d(inv.i2 / ref.i2), 1.0, 1e-9);
      }
    }
}

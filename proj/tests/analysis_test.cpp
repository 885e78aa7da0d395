#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "pdcent/analysis.hpp"
#include "pdcent/errors.hpp"

using namespace pdcent;

namespace {

double d(Real v) { return static_cast<double>(v); }

// 40-digit reference values from an independent bisection on S(tau) and S(T).
constexpr double kBte_y0_300K = 2.79388154874313;
constexpr double kBte_y05_300K = 3.06143600260197;
constexpr double kBte_y09_300K = 4.54025130158083;
constexpr double kBte_y05_50K = 2.03398846672265;
constexpr double kTc_y0 = 357.101748707529;
constexpr double kTc_y03 = 300.723801855025;
constexpr double kTc_y05 = 219.279570371937;
constexpr double kTc_y07 = 132.72834796196;
constexpr double kS0At300K = 402820122.794905170;

}  // namespace

TEST(S0Threshold, Examples) {
  EXPECT_EQ(s0_threshold(0, 0), 0);
  EXPECT_EQ(s0_threshold(1, 1), 4);
  const ThermalInit init = thermal_init(default_parameters(), 300.0);
  EXPECT_NEAR(d(s0_threshold(init.nbar1, init.nbar2)) / kS0At300K, 1.0, 1e-13);
  EXPECT_THROW(s0_threshold(-1, 0), ValidationError);
  EXPECT_THROW(s0_threshold(0, -0.5L), ValidationError);
}

TEST(S0Threshold, MatchesInvariantsOfInitialState) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (int trial = 0; trial < 200; ++trial) {
    const ThermalInit init{0.0, u(rng), u(rng)};
    const SymplecticInvariants inv = symplectic_invariants(covariance_matrix(default_parameters(), 0.0, init));
    const Real expected = s0_threshold(init.nbar1, init.nbar2);
    EXPECT_NEAR(d(inv.s0 / expected), 1.0, 1e-10);
  }
}

TEST(BirthTime, ZeroTemperatureIsZeroForAnyMismatch) {
  for (double y : {0.0, 0.5, 0.9, 0.999}) {
    EXPECT_EQ(birth_time(default_parameters(y), 0.0).tau_e, 0.0);
    EXPECT_EQ(birth_time_bisection(default_parameters(y), 0.0), 0.0);
  }
}

TEST(BirthTime, ReferenceValues) {
  EXPECT_NEAR(birth_time(default_parameters(0.0), 300.0).tau_e, kBte_y0_300K, 1e-9);
  EXPECT_NEAR(birth_time(default_parameters(0.5), 300.0).tau_e, kBte_y05_300K, 1e-9);
  EXPECT_NEAR(birth_time(default_parameters(0.9), 300.0).tau_e, kBte_y09_300K, 1e-9);
  EXPECT_NEAR(birth_time(default_parameters(0.5), 50.0).tau_e, kBte_y05_50K, 1e-9);
}

TEST(BirthTime, OrderedInMismatchAt300K) {
  const double a = birth_time(default_parameters(0.0), 300.0).tau_e;
  const double b = birth_time(default_parameters(0.5), 300.0).tau_e;
  const double c = birth_time(default_parameters(0.9), 300.0).tau_e;
  EXPECT_LT(a, b);
  EXPECT_LT(b, c);
}

TEST(BirthTime, ClosedFormAgreesWithBisection) {
  for (double y : {0.0, 0.2, 0.5, 0.8, 0.95, 0.99})
    for (double t : {1.0, 10.0, 50.0, 150.0, 300.0, 600.0}) {
      const PdcParams p = default_parameters(y);
      const BteResult r = birth_time(p, t);
      EXPECT_EQ(r.method, BteMethod::closed_form);
      EXPECT_NEAR(r.tau_e, birth_time_bisection(p, t), 1e-8) << y << " " << t;
    }
}

TEST(BirthTime, SeparatesSeparableFromEntangled) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> uy(0.0, 0.99), ut(1.0, 600.0);
  const double eps = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const PdcParams p = default_parameters(uy(rng));
    const double t = ut(rng);
    const double tau_e = birth_time(p, t).tau_e;
    EXPECT_GE(separability_indicator(covariance_matrix(p, tau_e - eps, t)), 0) << p.y << " " << t;
    EXPECT_LT(separability_indicator(covariance_matrix(p, tau_e + eps, t)), 0) << p.y << " " << t;
  }
}

TEST(BirthTime, MonotoneInTemperatureAndMismatch) {
  for (double y : {0.0, 0.5, 0.9}) {
    double prev = 0;
    for (int k = 0; k <= 40; ++k) {
      const double v = birth_time(default_parameters(y), 15.0 * k).tau_e;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
  for (double t : {50.0, 300.0}) {
    double prev = 0;
    for (int k = 0; k < 100; ++k) {
      const double v = birth_time(default_parameters(0.01 * k), t).tau_e;
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(BirthTime, RejectsNegativeTemperature) {
  EXPECT_THROW(birth_time(default_parameters(), -1.0), ValidationError);
}

TEST(CriticalTemperature, ReferenceValues) {
  const struct {
    double y, t_c;
  } cases[] = {{0.0, kTc_y0}, {0.3, kTc_y03}, {0.5, kTc_y05}, {0.7, kTc_y07}};
  for (const auto& c : cases) {
    const CriticalTemperature r = critical_temperature(default_parameters(c.y), 2.881);
    ASSERT_EQ(r.status, RootStatus::found);
    EXPECT_NEAR(r.t_c / c.t_c, 1.0, 1e-9) << c.y;
  }
}

TEST(CriticalTemperature, NearQuotedFigureValueAtZeroMismatch) {
  // Read off the zero-mismatch end of the phase-diagram curve: about 3.6e2 K.
  const CriticalTemperature r = critical_temperature(default_parameters(0.0), 2.881);
  EXPECT_NEAR(r.t_c, 360.0, 0.05 * 360.0);
}

TEST(CriticalTemperature, BoundaryIsExactSignChange) {
  for (double y : {0.0, 0.25, 0.6, 0.85}) {
    const PdcParams p = default_parameters(y);
    const CriticalTemperature r = critical_temperature(p, 2.881);
    ASSERT_EQ(r.status, RootStatus::found);
    EXPECT_LT(separability_indicator(covariance_matrix(p, 2.881, r.t_c * (1 - 1e-4))), 0);
    EXPECT_GT(separability_indicator(covariance_matrix(p, 2.881, r.t_c * (1 + 1e-4))), 0);
    EXPECT_GT(log_negativity(covariance_matrix(p, 2.881, r.t_c * (1 - 1e-4))), 0);
    EXPECT_EQ(log_negativity(covariance_matrix(p, 2.881, r.t_c * (1 + 1e-4))), 0);
  }
}

TEST(CriticalTemperature, StatusCases) {
  EXPECT_EQ(critical_temperature(default_parameters(0.0), 0.0).status, RootStatus::never_entangled);
  EXPECT_EQ(critical_temperature(default_parameters(0.0), 2.881, 100.0).status, RootStatus::no_root_in_bracket);
  EXPECT_THROW(critical_temperature(default_parameters(0.0), -1.0), ValidationError);
  EXPECT_THROW(critical_temperature(default_parameters(0.0), 1.0, -10.0), ValidationError);
}

TEST(PhaseBoundary, StrictlyDecreasingAndEntangledAt300K) {
  std::vector<double> ys;
  for (int i = 0; i <= 9; ++i) ys.push_back(0.1 * i);
  const auto pts = phase_boundary(default_parameters(), 2.881, ys);
  ASSERT_EQ(pts.size(), ys.size());
  for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].t_c, pts[i - 1].t_c);
  EXPECT_GT(pts[3].t_c, 300.0);
  EXPECT_LT(separability_indicator(covariance_matrix(default_parameters(0.3), 2.881, 300.0)), 0);
}

TEST(PhaseBoundary, MatchesSinglePointSearchAndIgnoresParamsY) {
  const double ys[] = {0.0};
  const auto pts = phase_boundary(default_parameters(0.8), 2.881, ys);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].y, 0.0);
  EXPECT_EQ(pts[0].t_c, critical_temperature(default_parameters(0.0), 2.881).t_c);
}

TEST(PhaseBoundary, OmitsPointsWithoutRoot) {
  const double ys[] = {0.0, 0.9};
  const auto pts = phase_boundary(default_parameters(), 2.881, ys, 200.0);
  ASSERT_EQ(pts.size(), 1u);
  EXPECT_EQ(pts[0].y, 0.9);
}

TEST(Witness, ZeroTemperatureIsMinusPairGain) {
  for (double y : {0.0, 0.6})
    for (double tau : {0.5, 2.0}) {
      const WitnessValue w = witness(default_parameters(y), tau, 0.0);
      EXPECT_EQ(w.threshold, 0);
      EXPECT_NEAR(d(w.w / -pair_gain(y, tau)), 1.0, 1e-14);
    }
}

TEST(Witness, EqualOccupationsAtStart) {
  PdcParams p = default_parameters();
  p.omega2_bar = p.omega1_bar;
  const ThermalInit init = thermal_init(p, 300.0);
  const WitnessValue w = witness(p, 0.0, 300.0);
  EXPECT_NEAR(d(w.w / (init.nbar1 * init.nbar1)), 1.0, 1e-12);
}

TEST(Witness, ComponentsAreConsistent) {
  for (double t : {0.0, 100.0, 400.0}) {
    const PdcParams p = default_parameters(0.4);
    const WitnessValue w = witness(p, 2.881, t);
    const PhotonNumbers n = mean_photon_numbers(p, 2.881, t);
    EXPECT_EQ(w.w, w.threshold - w.mean_pair_photons);
    EXPECT_NEAR(d(w.mean_pair_photons), d((n.n1 + n.n2) / 2), 1e-9 * d(w.mean_pair_photons));
    const ThermalInit init = thermal_init(p, t);
    EXPECT_NEAR(d(w.threshold), d(std::sqrt(s0_threshold(init.nbar1, init.nbar2))), 1e-9 * (1 + d(w.threshold)));
  }
}

TEST(Witness, CrossingTracksCriticalTemperature) {
  for (double y : {0.0, 0.5, 0.7}) {
    const PdcParams p = default_parameters(y);
    const CriticalTemperature tc = critical_temperature(p, 2.881);
    const CriticalTemperature tw = witness_crossing_temperature(p, 2.881);
    ASSERT_EQ(tw.status, RootStatus::found);
    EXPECT_NEAR(tw.t_c / tc.t_c, 1.0, 0.01) << y;
  }
}

TEST(LogNegativity, NonIncreasingInMismatch) {
  for (double t : {0.0, 50.0, 300.0})
    for (double tau : {1.0, 2.881, 4.543}) {
      double prev = INFINITY;
      for (int k = 0; k < 100; ++k) {
        const double en = d(log_negativity(covariance_matrix(default_parameters(0.01 * k), tau, t)));
        EXPECT_LE(en, prev);
        prev = en;
      }
    }
}

#pragma once

// Figure datasets, single-point reports and the oracle equivalence run behind
// the command-line tool.

#include <optional>
#include <string>
#include <vector>

#include "pdcent/analysis.hpp"
#include "pdcent/pdc_dynamics.hpp"

namespace pdcent {

// "a:b:n" (n evenly spaced points, end points included) or a comma list.
// Throws ValidationError on malformed or empty input.
std::vector<double> parse_grid(const std::string& text);

struct RunConfig {
  double nu1_hz = 3.12e10;
  std::optional<double> g_hz;           // default pi * 1e-2 * nu1
  std::optional<double> omega1_bar;     // default 2 pi nu1 / g
  std::optional<double> omega2_bar;     // default 2 * omega1_bar
  std::optional<double> y;
  std::optional<double> tau;
  std::optional<double> temp_k;
  std::optional<std::vector<double>> y_grid;
  std::optional<std::vector<double>> temp_grid;

  double coupling() const;
  double resolved_omega1_bar() const;
  double resolved_omega2_bar() const;
  PdcParams params(double mismatch) const;
  // Throws ValidationError for non-positive frequencies or coupling.
  void validate() const;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Header line, comma-separated, LF endings, 12 significant digits.
  std::string render() const;
};

std::string format_number(double v);

// Default grids; each is overridden by the matching RunConfig field.
//  fig1: T in [0, 400] K (81 points) x y in {0, 0.5, 0.9}
//  fig2: y in [0, 0.99] (100 points) x T in {50, 150, 300} K
//  fig3: y in [0, 0.99] (100 points) x T in {0, 50, 300} K, tau = 4.543
//  fig4: y in [0, 0.9] (19 points), tau = 2.881
//  fig5: T in [0, 600] K (121 points), y in {0, 0.5, 0.7}, tau = 2.881
CsvTable figure1(const RunConfig& cfg);
CsvTable figure2(const RunConfig& cfg);
CsvTable figure3(const RunConfig& cfg);
CsvTable figure4(const RunConfig& cfg);
CsvTable figure5(const RunConfig& cfg);

inline constexpr double kFig3Tau = 4.543;
inline constexpr double kFig4Tau = 2.881;

struct PointReport {
  double y = 0, tau = 0, temperature_k = 0;
  Real nbar1 = 0, nbar2 = 0, n1 = 0, n2 = 0;
  Real squeezing_r = 0, i1 = 0, i2 = 0, s0 = 0, s = 0, det_gamma = 0;
  Real nu_minus_pt = 0, log_negativity = 0, witness = 0;
  bool entangled = false;

  std::string render() const;  // key=value lines
};

// Needs y, tau and temp_k in the config.
PointReport evaluate_point(const RunConfig& cfg);

// Linear interpolation of the first sign change of (a - b) along xs.
std::optional<double> interpolated_crossing(const std::vector<double>& xs,
                                            const std::vector<double>& a,
                                            const std::vector<double>& b);

struct OracleCheckResult {
  double ode_max_abs = 0;          // closed form vs RK4 moments, entrywise
  int ode_points = 0;
  double fock_cm_max_abs = 0;      // closed form vs Fock moments, entrywise
  double fock_en_max_abs = 0;      // Gaussian vs Fock log-negativity
  double fock_leakage_max = 0;
  int fock_points = 0;

  static constexpr double kOdeTolerance = 1e-8;
  static constexpr double kFockCmTolerance = 1e-5;
  static constexpr double kFockEnTolerance = 1e-3;
  static constexpr double kLeakageTolerance = 1e-6;

  bool passed() const;
  std::string render() const;
};

struct FockOraclePoint {
  double y;
  double temperature_k;
  double tau;
  int n_cut;
};

// Small-occupation points (nbar <= 0.5, tau <= 1) used by the equivalence run.
std::vector<FockOraclePoint> default_fock_points();

OracleCheckResult run_oracle_check(const PdcParams& base);

}  // namespace pdcent

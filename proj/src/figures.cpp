#include "pdcent/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "pdcent/errors.hpp"
#include "pdcent/fock_oracle.hpp"
#include "pdcent/gaussian_core.hpp"

namespace pdcent {

namespace {

double parse_number(const std::string& token) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ValidationError("cannot parse number '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
  if (used != token.size() || !std::isfinite(v)) throw ValidationError("cannot parse number '" + token + "'");
  return v;
}

std::vector<double> linspace(double a, double b, long n) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  if (n == 1) {
    out.push_back(a);
    return out;
  }
  for (long i = 0; i < n; ++i) {
    out.push_back(i == n - 1 ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}

std::vector<double> require_mismatch_grid(std::vector<double> ys) {
  if (ys.empty()) throw ValidationError("empty y grid");
  for (double y : ys)
    if (!(y >= 0.0 && y < 1.0)) {
      std::ostringstream msg;
      msg << "y grid value " << y << " outside [0, 1)";
      throw ValidationError(msg.str());
    }
  return ys;
}

std::vector<double> require_temperature_grid(std::vector<double> ts) {
  if (ts.empty()) throw ValidationError("empty temperature grid");
  for (double t : ts)
    if (!(t >= 0.0)) {
      std::ostringstream msg;
      msg << "temperature grid value " << t << " is negative";
      throw ValidationError(msg.str());
    }
  return ts;
}

std::vector<double> y_values(const RunConfig& cfg, std::vector<double> fallback) {
  return require_mismatch_grid(cfg.y_grid ? *cfg.y_grid : std::move(fallback));
}

std::vector<double> t_values(const RunConfig& cfg, std::vector<double> fallback) {
  return require_temperature_grid(cfg.temp_grid ? *cfg.temp_grid : std::move(fallback));
}

double tau_or(const RunConfig& cfg, double fallback) {
  const double tau = cfg.tau.value_or(fallback);
  if (!(tau >= 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be finite and >= 0");
  return tau;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw ValidationError("grid '" + text + "' is not of the form a:b:n");
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    const double n = parse_number(parts[2]);
    if (n < 1 || n != std::floor(n) || n > 1e7)
      throw ValidationError("grid '" + text + "' needs a positive integer point count");
    return linspace(a, b, static_cast<long>(n));
  }
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_number(item));
  }
  if (out.empty()) throw ValidationError("empty grid");
  return out;
}

double RunConfig::coupling() const { return g_hz.value_or(constants::kPi * 1e-2 * nu1_hz); }

double RunConfig::resolved_omega1_bar() const {
  return omega1_bar.value_or(2.0 * constants::kPi * nu1_hz / coupling());
}

double RunConfig::resolved_omega2_bar() const {
  return omega2_bar.value_or(2.0 * resolved_omega1_bar());
}

void RunConfig::validate() const {
  if (!(nu1_hz > 0.0) || !std::isfinite(nu1_hz)) throw ValidationError("nu1 must be > 0 Hz");
  if (!(coupling() > 0.0) || !std::isfinite(coupling())) throw ValidationError("g must be > 0");
  if (!(resolved_omega1_bar() > 0.0) || !(resolved_omega2_bar() > 0.0))
    throw ValidationError("dimensionless frequencies must be > 0");
}

PdcParams RunConfig::params(double mismatch) const {
  validate();
  PdcParams p;
  p.g = coupling();
  p.omega1_bar = resolved_omega1_bar();
  p.omega2_bar = resolved_omega2_bar();
  p.y = mismatch;
  p.validate();
  return p;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string CsvTable::render() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

CsvTable figure1(const RunConfig& cfg) {
  const auto ys = y_values(cfg, {0.0, 0.5, 0.9});
  const auto ts = t_values(cfg, linspace(0.0, 400.0, 81));
  CsvTable table{{"temperature_K", "y", "tau_e"}, {}};
  for (double y : ys) {
    const PdcParams p = cfg.params(y);
    for (double t : ts) table.rows.push_back({t, y, birth_time(p, t).tau_e});
  }
  return table;
}

CsvTable figure2(const RunConfig& cfg) {
  const auto ys = y_values(cfg, linspace(0.0, 0.99, 100));
  const auto ts = t_values(cfg, {50.0, 150.0, 300.0});
  CsvTable table{{"y", "temperature_K", "tau_e"}, {}};
  for (double t : ts)
    for (double y : ys) table.rows.push_back({y, t, birth_time(cfg.params(y), t).tau_e});
  return table;
}

CsvTable figure3(const RunConfig& cfg) {
  const auto ys = y_values(cfg, linspace(0.0, 0.99, 100));
  const auto ts = t_values(cfg, {0.0, 50.0, 300.0});
  const double tau = tau_or(cfg, kFig3Tau);
  CsvTable table{{"y", "temperature_K", "log_negativity"}, {}};
  for (double t : ts)
    for (double y : ys) {
      const Real en = log_negativity(covariance_matrix(cfg.params(y), tau, t));
      table.rows.push_back({y, t, static_cast<double>(en)});
    }
  return table;
}

CsvTable figure4(const RunConfig& cfg) {
  const auto ys = y_values(cfg, linspace(0.0, 0.9, 19));
  const double tau = tau_or(cfg, kFig4Tau);
  CsvTable table{{"y", "t_c_kelvin"}, {}};
  for (const PhasePoint& pt : phase_boundary(cfg.params(0.0), tau, ys))
    table.rows.push_back({pt.y, pt.t_c});
  return table;
}

CsvTable figure5(const RunConfig& cfg) {
  const auto ys = y_values(cfg, {0.0, 0.5, 0.7});
  const auto ts = t_values(cfg, linspace(0.0, 600.0, 121));
  const double tau = tau_or(cfg, kFig4Tau);
  CsvTable table{{"temperature_K", "sqrt_s0"}, {}};
  for (double y : ys) table.header.push_back("mean_photons_y_" + format_number(y));
  std::vector<PdcParams> params;
  for (double y : ys) params.push_back(cfg.params(y));
  for (double t : ts) {
    std::vector<double> row{t, static_cast<double>(witness(params.front(), tau, t).threshold)};
    for (const PdcParams& p : params)
      row.push_back(static_cast<double>(witness(p, tau, t).mean_pair_photons));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string PointReport::render() const {
  std::ostringstream os;
  auto line = [&](const char* key, double v) { os << key << '=' << format_number(v) << '\n'; };
  line("y", y);
  line("tau", tau);
  line("temperature_K", temperature_k);
  line("nbar1", static_cast<double>(nbar1));
  line("nbar2", static_cast<double>(nbar2));
  line("n1", static_cast<double>(n1));
  line("n2", static_cast<double>(n2));
  line("squeezing_r", static_cast<double>(squeezing_r));
  line("I1", static_cast<double>(i1));
  line("I2", static_cast<double>(i2));
  line("S0", static_cast<double>(s0));
  line("S", static_cast<double>(s));
  line("det_gamma", static_cast<double>(det_gamma));
  line("nu_minus_pt", static_cast<double>(nu_minus_pt));
  line("E_N", static_cast<double>(log_negativity));
  line("W", static_cast<double>(witness));
  os << "verdict=" << (entangled ? "entangled" : "separable") << '\n';
  return os.str();
}

PointReport evaluate_point(const RunConfig& cfg) {
  PointReport r;
  r.y = cfg.y.value_or(0.0);
  r.tau = tau_or(cfg, 0.0);
  r.temperature_k = cfg.temp_k.value_or(0.0);
  const PdcParams p = cfg.params(r.y);
  const ThermalInit init = thermal_init(p, r.temperature_k);
  const PhotonNumbers n = mean_photon_numbers(p, r.tau, init);
  const CovarianceMatrix cm = covariance_matrix(p, r.tau, init);
  const SymplecticInvariants inv = symplectic_invariants(cm);
  r.nbar1 = init.nbar1;
  r.nbar2 = init.nbar2;
  r.n1 = n.n1;
  r.n2 = n.n2;
  r.squeezing_r = squeezing_parameter(r.y, r.tau);
  r.i1 = inv.i1;
  r.i2 = inv.i2;
  r.s0 = inv.s0;
  r.s = inv.s;
  r.det_gamma = inv.det_gamma;
  r.nu_minus_pt = inv.nu_minus_pt;
  r.log_negativity = std::max<Real>(0, -std::log(2 * inv.nu_minus_pt));
  r.witness = witness(p, r.tau, r.temperature_k).w;
  r.entangled = inv.s < 0;
  return r;
}

std::optional<double> interpolated_crossing(const std::vector<double>& xs,
                                            const std::vector<double>& a,
                                            const std::vector<double>& b) {
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d0 = a[i - 1] - b[i - 1];
    const double d1 = a[i] - b[i];
    if (d0 == 0.0) return xs[i - 1];
    if ((d0 < 0.0) != (d1 < 0.0)) return xs[i - 1] + (xs[i] - xs[i - 1]) * d0 / (d0 - d1);
  }
  return std::nullopt;
}

bool OracleCheckResult::passed() const {
  return ode_max_abs <= kOdeTolerance && fock_cm_max_abs <= kFockCmTolerance &&
         fock_en_max_abs <= kFockEnTolerance && fock_leakage_max <= kLeakageTolerance;
}

std::string OracleCheckResult::render() const {
  char buf[512];
  std::snprintf(buf, sizeof(buf),
                "ode_points=%d\node_max_abs_dev=%.3e (tol %.0e)\n"
                "fock_points=%d\nfock_cm_max_abs_dev=%.3e (tol %.0e)\n"
                "fock_log_negativity_max_abs_dev=%.3e (tol %.0e)\n"
                "fock_max_leakage=%.3e (tol %.0e)\nstatus=%s\n",
                ode_points, ode_max_abs, kOdeTolerance, fock_points, fock_cm_max_abs,
                kFockCmTolerance, fock_en_max_abs, kFockEnTolerance, fock_leakage_max,
                kLeakageTolerance, passed() ? "pass" : "fail");
  return buf;
}

std::vector<FockOraclePoint> default_fock_points() {
  // At the default frequencies nbar1 <= 0.5 requires T <= 1.36 K.
  return {
      {0.0, 0.0, 0.5, 40},  {0.0, 1.0, 1.0, 60}, {0.5, 0.8, 1.0, 56},
      {0.5, 1.3, 0.6, 48},  {0.9, 1.2, 1.0, 48}, {0.3, 0.0, 1.0, 48},
  };
}

OracleCheckResult run_oracle_check(const PdcParams& base) {
  OracleCheckResult res;
  const double ys[] = {0.0, 0.5, 0.9};
  const double ts[] = {0.0, 50.0, 300.0};
  const double taus[] = {0.5, 1.5, kFig4Tau};
  for (double y : ys)
    for (double t : ts)
      for (double tau : taus) {
        PdcParams p = base;
        p.y = y;
        const CovarianceMatrix closed = covariance_matrix(p, tau, t);
        const MomentTrajectory traj = evolve_moments_ode(p, tau, t, 1e-4, DriftFrame::symmetrized, 4);
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            res.ode_max_abs = std::max(
                res.ode_max_abs, static_cast<double>(std::fabs(closed(i, j) - traj.final_cm()(i, j))));
        ++res.ode_points;
      }

  for (const FockOraclePoint& pt : default_fock_points()) {
    PdcParams p = base;
    p.y = pt.y;
    const FockState rho = evolve_fock(p, pt.tau, pt.temperature_k, pt.n_cut);
    const CovarianceMatrix closed = covariance_matrix(p, pt.tau, pt.temperature_k);
    const CovarianceMatrix fock = rotate_to_lab_frame(moments_from_fock(rho), p, pt.tau);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        res.fock_cm_max_abs =
            std::max(res.fock_cm_max_abs, static_cast<double>(std::fabs(closed(i, j) - fock(i, j))));
    res.fock_en_max_abs = std::max(
        res.fock_en_max_abs, std::fabs(static_cast<double>(log_negativity(closed)) - fock_log_negativity(rho)));
    res.fock_leakage_max = std::max(res.fock_leakage_max, rho.leakage());
    ++res.fock_points;
  }
  return res;
}

}  // namespace pdcent

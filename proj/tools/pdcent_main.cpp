// pdcent: figure datasets and point evaluations for phase-mismatched
// parametric down-conversion at finite temperature.
//
// Exit codes: fig*/oracle-check return 0 on success; eval returns 0 when the
// state is entangled and 1 when separable; usage and parameter errors give 2.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pdcent/errors.hpp"
#include "pdcent/figures.hpp"

namespace {

constexpr int kExitUsage = 2;

int write_output(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return 0;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open " << path << " for writing\n";
    return kExitUsage;
  }
  out << text;
  return out ? 0 : kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement of phase-mismatched PDC at finite temperature"};
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value configuration file (flags take precedence)");

  pdcent::RunConfig cfg;
  std::string out_path;
  std::string y_grid;
  std::string temp_grid;
  double g_hz = 0, omega1 = 0, omega2 = 0, y = 0, tau = 0, temp = 0;

  app.add_option("--nu1-hz", cfg.nu1_hz, "signal frequency nu1 in Hz")->capture_default_str();
  auto* opt_g = app.add_option("--g-hz", g_hz, "coupling g (default pi*1e-2*nu1)");
  auto* opt_w1 = app.add_option("--omega1-bar", omega1, "omega1/g (default 2*pi*nu1/g)");
  auto* opt_w2 = app.add_option("--omega2-bar", omega2, "omega2/g (default 2*omega1_bar)");
  auto* opt_y = app.add_option("--y", y, "mismatch y = delta/g in [0,1)");
  auto* opt_tau = app.add_option("--tau", tau, "dimensionless interaction time g t");
  auto* opt_temp = app.add_option("--temp-k", temp, "medium temperature in K");
  auto* opt_yg = app.add_option("--y-grid", y_grid, "y values: a:b:n or comma list");
  auto* opt_tg = app.add_option("--temp-grid", temp_grid, "temperatures in K: a:b:n or comma list");
  app.add_option("--out", out_path, "output file (default stdout)");

  auto* fig1 = app.add_subcommand("fig1", "birth time of entanglement vs temperature");
  auto* fig2 = app.add_subcommand("fig2", "birth time of entanglement vs mismatch");
  auto* fig3 = app.add_subcommand("fig3", "log-negativity vs mismatch");
  auto* fig4 = app.add_subcommand("fig4", "critical temperature vs mismatch");
  auto* fig5 = app.add_subcommand("fig5", "mean photon number and sqrt(S0) vs temperature");
  auto* eval = app.add_subcommand("eval", "single-point report");
  auto* oracle = app.add_subcommand("oracle-check", "closed forms vs brute-force oracles");
  for (auto* sub : {fig1, fig2, fig3, fig4, fig5, eval, oracle}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*opt_g) cfg.g_hz = g_hz;
    if (*opt_w1) cfg.omega1_bar = omega1;
    if (*opt_w2) cfg.omega2_bar = omega2;
    if (*opt_y) cfg.y = y;
    if (*opt_tau) cfg.tau = tau;
    if (*opt_temp) cfg.temp_k = temp;
    if (*opt_yg) cfg.y_grid = pdcent::parse_grid(y_grid);
    if (*opt_tg) cfg.temp_grid = pdcent::parse_grid(temp_grid);
    cfg.validate();

    if (*eval) {
      const pdcent::PointReport report = pdcent::evaluate_point(cfg);
      if (const int rc = write_output(report.render(), out_path); rc != 0) return rc;
      return report.entangled ? 0 : 1;
    }
    if (*oracle) {
      const pdcent::OracleCheckResult res = pdcent::run_oracle_check(cfg.params(0.0));
      if (const int rc = write_output(res.render(), out_path); rc != 0) return rc;
      return res.passed() ? 0 : 1;
    }
    pdcent::CsvTable table;
    if (*fig1) table = pdcent::figure1(cfg);
    if (*fig2) table = pdcent::figure2(cfg);
    if (*fig3) table = pdcent::figure3(cfg);
    if (*fig4) table = pdcent::figure4(cfg);
    if (*fig5) table = pdcent::figure5(cfg);
    return write_output(table.render(), out_path);
  } catch (const pdcent::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

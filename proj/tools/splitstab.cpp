#include <CLI11.hpp>

#include "commands.hpp"

namespace cli = splitstab::cli;

namespace {

void add_common_options(CLI::App* cmd, cli::RunConfig& cfg) {
  cmd->add_option("--splitting", cfg.splitting,
                  "Splitting name (see `splitstab catalog`)");
  cmd->add_option("--eps", cfg.eps_list, "Stiffness parameter(s) in (0, 1]");
  cmd->add_option_function<std::string>(
         "--eps-grid",
         [&cfg](const std::string& s) {
           double lo, hi;
           int n;
           if (std::sscanf(s.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
             throw CLI::ValidationError("--eps-grid", "expected lo:hi:n");
           cfg.eps_list = cli::log_spaced(lo, hi, n);
         },
         "Log-spaced eps grid, lo:hi:n")
      ->excludes("--eps");
  cmd->add_option("--a", cfg.a, "Advective speed for the prototype systems");
  cmd->add_option("--dx", cfg.dx, "Cell width");
  cmd->add_option("--nu", cfg.nu, "Advective CFL number (sets dt = nu*dx/a)");
  cmd->add_option("--dt", cfg.dt, "Time step (overrides --nu)");
  cmd->add_option("--alpha-tilde-rule", cfg.alpha_tilde_rule,
                  "Implicit viscosity rule: zero | stiff-eig")
      ->check(CLI::IsMember({"zero", "stiff-eig"}));
  cmd->add_option("--kmax", cfg.k_max, "Largest Fourier mode to scan");
  cmd->add_option("--T", cfg.t_end, "Final time");
  cmd->add_option("--out", cfg.out, "Output CSV path");
  cmd->set_config("--config", "", "Plain-text key=value config file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"IMEX flux-splitting stability toolkit"};
  app.require_subcommand(1);

  cli::RunConfig cfg;
  int rc = 0;

  CLI::App* scan = app.add_subcommand(
      "scan", "Bisect the largest stable CFL number over an eps grid");
  add_common_options(scan, cfg);
  scan->add_option("--nu-hi-factor", cfg.nu_hi_factor,
                   "Bisection bracket as a multiple of nu1");
  scan->callback([&] { rc = cli::cmd_scan(cfg); });

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run the IMEX solver and emit the final profile");
  add_common_options(simulate, cfg);
  simulate->add_option("--blowup-threshold", cfg.blowup_threshold,
                       "L2 growth ratio treated as blow-up");
  simulate->callback([&] { rc = cli::cmd_simulate(cfg); });

  CLI::App* analyze = app.add_subcommand(
      "analyze", "Emit frequency-matrix spectra per Fourier mode");
  add_common_options(analyze, cfg);
  analyze->callback([&] {
    cfg.k_max = analyze->count("--kmax") ? cfg.k_max : 64;
    rc = cli::cmd_analyze(cfg);
  });

  CLI::App* symbol = app.add_subcommand(
      "symbol", "Emit the spectral radius of the discrete amplification symbol");
  add_common_options(symbol, cfg);
  symbol->add_option("--theta-points", cfg.theta_points,
                     "Number of theta samples on [-pi, pi]");
  symbol->callback([&] { rc = cli::cmd_symbol(cfg); });

  CLI::App* catalog =
      app.add_subcommand("catalog", "List the cataloged splittings");
  catalog->callback([&] { rc = cli::cmd_catalog(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int parse_rc = app.exit(e);
    return parse_rc == 0 ? 0 : cli::kConfigError;
  }
  return rc;
}

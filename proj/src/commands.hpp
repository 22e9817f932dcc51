#pragma once

#include <optional>
#include <string>
#include <vector>

namespace splitstab::cli {

// Exit codes shared by all subcommands.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kBlowUp = 3;
inline constexpr int kNumericalFailure = 4;

struct RunConfig {
  std::string splitting = "prototype";
  std::vector<double> eps_list;           // empty -> default log grid
  double a = 2.0;
  double dx = 1e-2;
  std::optional<double> nu;               // advective CFL number
  std::optional<double> dt;               // overrides nu when set
  std::string alpha_tilde_rule = "zero";  // zero | stiff-eig
  int k_max = 8;
  double t_end = 0.1;
  double nu_hi_factor = 4.0;              // bisection bracket, nu_hi = factor*nu1
  int theta_points = 64;
  double blowup_threshold = 1e3;
  std::string out = "out.csv";
};

/// Default 13-point log-spaced eps grid on [1e-6, 1].
std::vector<double> default_eps_grid();
std::vector<double> log_spaced(double lo, double hi, int n);

int cmd_scan(const RunConfig& cfg);
int cmd_simulate(const RunConfig& cfg);
int cmd_analyze(const RunConfig& cfg);
int cmd_symbol(const RunConfig& cfg);
int cmd_catalog();

}  // namespace splitstab::cli

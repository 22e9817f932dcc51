#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include "splitstab/imex.hpp"
#include "splitstab/modeq.hpp"
#include "splitstab/models.hpp"

namespace splitstab::cli {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  const std::filesystem::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open output file: " + tmp.string());
    f << content;
  }
  std::filesystem::rename(tmp, target);
}

unsigned sweep_threads() {
  if (const char* env = std::getenv("SPLITSTAB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n >= 1) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs fn(i) for i in [0, n), on at most sweep_threads() workers. Results
/// must be written to per-index slots so the merge stays deterministic.
void parallel_for_index(size_t n, const std::function<void(size_t)>& fn) {
  const unsigned workers = std::min<size_t>(sweep_threads(), n);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) {
    pool.emplace_back([&] {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

AlphaTildeRule parse_rule(const std::string& name) {
  if (name == "zero") return AlphaTildeRule::zero;
  if (name == "stiff-eig") return AlphaTildeRule::stiff_eig;
  throw std::invalid_argument("unknown alpha-tilde rule: " + name);
}

std::vector<double> eps_or_default(const RunConfig& cfg) {
  return cfg.eps_list.empty() ? default_eps_grid() : cfg.eps_list;
}

double resolve_dt(const RunConfig& cfg, double a) {
  if (cfg.dt) return *cfg.dt;
  if (cfg.nu) return *cfg.nu * cfg.dx / a;
  throw std::invalid_argument("either --dt or --nu is required");
}

std::string sidecar_path(const std::string& out) {
  const std::string suffix = ".csv";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size()) + ".l2.csv";
  return out + ".l2.csv";
}

}  // namespace

std::vector<double> log_spaced(double lo, double hi, int n) {
  if (n < 2 || !(lo > 0.0) || !(hi > 0.0))
    throw std::invalid_argument("log_spaced: need n >= 2 and positive bounds");
  std::vector<double> out;
  out.reserve(static_cast<size_t>(n));
  const double l0 = std::log10(hi), l1 = std::log10(lo);
  for (int i = 0; i < n; ++i)
    out.push_back(std::pow(10.0, l0 + (l1 - l0) * i / (n - 1)));
  return out;
}

std::vector<double> default_eps_grid() { return log_spaced(1e-6, 1.0, 13); }

int cmd_scan(const RunConfig& cfg) {
  try {
    const FluxSplitting sp = splitting_by_name(cfg.splitting, cfg.a);
    const AlphaTildeRule rule = parse_rule(cfg.alpha_tilde_rule);
    const std::vector<double> eps = eps_or_default(cfg);
    const double a = sp.system.advective_speed();

    std::vector<std::string> rows(eps.size());
    try {
      parallel_for_index(eps.size(), [&](size_t i) {
        const double e = eps[i];
        const double alpha_hat = default_alpha_hat(sp, e);
        const double alpha_tilde = alpha_tilde_for(sp, e, rule);
        const CflBounds b = cfl_bounds(a, e, alpha_hat, alpha_tilde);
        const double nu_max = max_stable_ratio(sp, e, cfg.dx, rule,
                                               cfg.nu_hi_factor * b.nu1,
                                               cfg.k_max);
        std::ostringstream row;
        row << fmt(e) << ',' << fmt(nu_max) << ',' << fmt(b.nu1) << ','
            << fmt(b.nu2) << ',' << fmt(b.phi) << ',' << fmt(b.psi) << ','
            << fmt(alpha_hat) << ',' << fmt(alpha_tilde) << '\n';
        rows[i] = row.str();
      });
    } catch (const NumericalError& e) {
      std::cerr << "numerical failure: " << e.what() << '\n';
      return kNumericalFailure;
    }

    std::string csv =
        "eps,nu_max_numeric,nu1,nu2,phi,psi,alpha_hat,alpha_tilde\n";
    for (const auto& r : rows) csv += r;
    write_atomic(cfg.out, csv);
    return kOk;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int cmd_simulate(const RunConfig& cfg) {
  try {
    const FluxSplitting sp = splitting_by_name(cfg.splitting, cfg.a);
    const std::vector<double> eps_list = eps_or_default(cfg);
    const double a = sp.system.advective_speed();
    const int d = sp.system.dim;
    const Grid grid(static_cast<int>(std::lround(1.0 / cfg.dx)));
    const AlphaTildeRule rule = parse_rule(cfg.alpha_tilde_rule);
    const bool multi = eps_list.size() > 1;

    bool any_blowup = false;
    std::ostringstream csv, l2csv;
    csv << (multi ? "eps,x," : "x,");
    for (int c = 1; c <= d; ++c) csv << 'u' << c << ',';
    csv << "w1\n";
    l2csv << (multi ? "eps,step,l2\n" : "step,l2\n");

    for (double eps : eps_list) {
      SchemeParams p{grid.dx(), 0.0, default_alpha_hat(sp, eps),
                     alpha_tilde_for(sp, eps, rule)};
      p.dt = resolve_dt(cfg, a);

      // Initial data: cos(4 pi x) in the slow characteristic variable,
      // w = Q^-1 u with Q from the system's eigendecomposition.
      const RealEigen ed = real_eigendecomposition(sp.system.build(eps));
      int slow = 0;
      for (int i = 1; i < d; ++i)
        if (std::abs(ed.values[i] - a) < std::abs(ed.values[slow] - a)) slow = i;
      VecC coeff = ed.vectors.col(slow).cast<std::complex<double>>();
      const GridField u0 = init_fourier(grid, d, {{2, coeff}});

      RunResult res = run(u0, sp, eps, p, cfg.t_end, cfg.blowup_threshold);
      any_blowup = any_blowup || res.blew_up;

      const MatR q_inv = ed.vectors.fullPivLu().inverse();
      for (int j = 0; j < grid.num_cells; ++j) {
        if (multi) csv << fmt(eps) << ',';
        csv << fmt(grid.center(j));
        const VecR uj = res.final.block(j);
        for (int c = 0; c < d; ++c) csv << ',' << fmt(uj[c]);
        csv << ',' << fmt((q_inv.row(slow) * uj).value()) << '\n';
      }
      for (size_t n = 0; n < res.l2_history.size(); ++n) {
        if (multi) l2csv << fmt(eps) << ',';
        l2csv << n << ',' << fmt(res.l2_history[n]) << '\n';
      }
    }
    write_atomic(cfg.out, csv.str());
    write_atomic(sidecar_path(cfg.out), l2csv.str());
    return any_blowup ? kBlowUp : kOk;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int cmd_analyze(const RunConfig& cfg) {
  try {
    const FluxSplitting sp = splitting_by_name(cfg.splitting, cfg.a);
    const std::vector<double> eps_list = eps_or_default(cfg);
    const double a = sp.system.advective_speed();
    const int d = sp.system.dim;
    const bool closed_form = sp.kind == SplitKind::characteristic;

    std::ostringstream csv;
    csv << "eps,k";
    for (int i = 1; i <= d; ++i) csv << ",re_mu" << i << ",im_mu" << i;
    if (closed_form)
      for (int i = 1; i <= d; ++i) csv << ",re_closed" << i;
    csv << '\n';

    for (double eps : eps_list) {
      SchemeParams p{cfg.dx, 0.0, default_alpha_hat(sp, eps),
                     alpha_tilde_for(sp, eps, parse_rule(cfg.alpha_tilde_rule))};
      p.dt = resolve_dt(cfg, a);
      const MatR amat = sp.system.build(eps);
      const MatR b = viscosity_matrix(sp, eps, p);
      for (int k = 1; k <= cfg.k_max; ++k) {
        const Spectrum s = eig(frequency_matrix(amat, b, k));
        csv << fmt(eps) << ',' << k;
        for (const auto& mu : s.values)
          csv << ',' << fmt(mu.real()) << ',' << fmt(mu.imag());
        if (closed_form) {
          // Commuting splittings: Re mu_i = 2 pi^2 k^2 dt * (lhat_i^2 -
          // ltilde_i^2 - (ahat+atilde) dx/dt), sorted to match the spectrum.
          const VecR lh = sp.char_data->lambda_hat(eps);
          const VecR lt = sp.char_data->lambda_tilde(eps);
          std::vector<double> re(static_cast<size_t>(d));
          const double pi2k2 = std::numbers::pi * std::numbers::pi * k * k;
          const double visc = (p.alpha_hat + p.alpha_tilde) * p.dx / p.dt;
          for (int i = 0; i < d; ++i)
            re[static_cast<size_t>(i)] =
                2.0 * pi2k2 * p.dt * (lh[i] * lh[i] - lt[i] * lt[i] - visc);
          std::sort(re.begin(), re.end());
          for (double v : re) csv << ',' << fmt(v);
        }
        csv << '\n';
      }
    }
    write_atomic(cfg.out, csv.str());
    return kOk;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int cmd_symbol(const RunConfig& cfg) {
  try {
    const FluxSplitting sp = splitting_by_name(cfg.splitting, cfg.a);
    const std::vector<double> eps_list = eps_or_default(cfg);
    const double a = sp.system.advective_speed();

    std::ostringstream csv;
    csv << "eps,theta,spectral_radius\n";
    double max_radius = 0.0;
    for (double eps : eps_list) {
      SchemeParams p{cfg.dx, 0.0, default_alpha_hat(sp, eps),
                     alpha_tilde_for(sp, eps, parse_rule(cfg.alpha_tilde_rule))};
      p.dt = resolve_dt(cfg, a);
      for (int i = 0; i < cfg.theta_points; ++i) {
        const double theta =
            -std::numbers::pi +
            2.0 * std::numbers::pi * i / (cfg.theta_points - 1);
        const MatC g = discrete_symbol(sp, eps, p, theta);
        double radius = 0.0;
        for (const auto& v : eig(g).values) radius = std::max(radius, std::abs(v));
        max_radius = std::max(max_radius, radius);
        csv << fmt(eps) << ',' << fmt(theta) << ',' << fmt(radius) << '\n';
      }
    }
    write_atomic(cfg.out, csv.str());
    std::cout << "max_spectral_radius=" << fmt(max_radius) << '\n';
    return kOk;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

int cmd_catalog() {
  for (const auto& name : catalog_names()) std::cout << name << '\n';
  return kOk;
}

}  // namespace splitstab::cli

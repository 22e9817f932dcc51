#include "splitstab/models.hpp"

#include <cmath>
#include <stdexcept>

namespace splitstab {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

void require_eps(double eps) {
  if (!(eps > 0.0) || !(eps <= 1.0))
    throw std::invalid_argument("eps must lie in (0, 1]");
}

bool real_spectrum_complete(const MatR& m) {
  const Spectrum s = eig(m);
  const double tol = 1e-9 * std::max(1.0, m.norm());
  for (const auto& v : s.values)
    if (std::abs(v.imag()) > tol) return false;
  // Completeness of eigenvectors: distinct eigenvalues suffice; otherwise
  // compare the rank of the eigenvector matrix against the dimension.
  bool distinct = true;
  for (size_t i = 1; i < s.values.size(); ++i)
    if (std::abs(s.values[i] - s.values[i - 1]) <= tol) distinct = false;
  if (distinct) return true;
  Eigen::EigenSolver<MatR> solver(m);
  Eigen::FullPivLU<MatC> lu(solver.eigenvectors());
  lu.setThreshold(1e-9);
  return lu.rank() == m.rows();
}

}  // namespace

SystemSpec prototype_system(double a) {
  if (!(a > 0.0)) throw std::invalid_argument("prototype_system: a must be positive");
  SystemSpec sys;
  sys.name = "prototype";
  sys.dim = 3;
  sys.params = {{"a", a}};
  sys.build = [a](double eps) {
    require_eps(eps);
    MatR m(3, 3);
    const double s = 1.0 / (eps * eps);
    m << a, 1, 0, s, a, s, 0, 1, a;
    return m;
  };
  return sys;
}

FluxSplitting prototype_characteristic_splitting(double a) {
  FluxSplitting sp;
  sp.system = prototype_system(a);
  sp.kind = SplitKind::characteristic;
  sp.build_hat = [a](double eps) {
    require_eps(eps);
    MatR m(3, 3);
    m << a, eps, 0, 1.0 / eps, a, 1.0 / eps, 0, eps, a;
    return m;
  };
  sp.build_tilde = [a](double eps) {
    require_eps(eps);
    const double c = 1.0 - eps;
    MatR m(3, 3);
    m << 0, c, 0, c / (eps * eps), 0, c / (eps * eps), 0, c, 0;
    return m;
  };
  CharData cd;
  const SystemSpec sys = sp.system;
  cd.q = [sys](double eps) { return real_eigendecomposition(sys.build(eps)).vectors; };
  cd.lambda_hat = [a](double eps) {
    require_eps(eps);
    return VecR{{a - kSqrt2, a, a + kSqrt2}};
  };
  cd.lambda_tilde = [a](double eps) {
    require_eps(eps);
    const double s = kSqrt2 * (1.0 - eps) / eps;
    return VecR{{-s, 0.0, s}};
  };
  sp.char_data = cd;
  return sp;
}

FluxSplitting prototype_noncommuting_splitting(double a) {
  FluxSplitting sp;
  sp.system = prototype_system(a);
  sp.kind = SplitKind::general;
  sp.build_hat = [a](double eps) {
    require_eps(eps);
    if (eps >= 1.0)
      throw std::invalid_argument(
          "prototype_noncommuting_splitting: requires eps < 1");
    MatR m(3, 3);
    m << a, 1.0 - eps, 0, 1, a, 1, 0, 1.0 - eps, a;
    return m;
  };
  sp.build_tilde = [](double eps) {
    require_eps(eps);
    if (eps >= 1.0)
      throw std::invalid_argument(
          "prototype_noncommuting_splitting: requires eps < 1");
    const double c = (1.0 - eps * eps) / (eps * eps);
    MatR m(3, 3);
    m << 0, eps, 0, c, 0, c, 0, eps, 0;
    return m;
  };
  return sp;
}

SystemSpec euler_linearized_system(double gamma) {
  SystemSpec sys;
  sys.name = "euler-linearized";
  sys.dim = 3;
  sys.params = {{"a", 1.0}, {"gamma", gamma}};
  sys.build = [gamma](double eps) {
    require_eps(eps);
    const double e2 = eps * eps;
    MatR m(3, 3);
    m << 0, 1, 0,  //
        -1.5 + 0.5 * gamma, 3.0 - gamma, (gamma - 1.0) / e2,
        gamma * e2 - e2 - gamma, gamma - 1.5 * gamma * e2 + 1.5 * e2, gamma;
    return m;
  };
  return sys;
}

FluxSplitting euler_paper_splitting() {
  FluxSplitting sp;
  sp.system = euler_linearized_system();
  sp.kind = SplitKind::general;
  sp.build_hat = [](double eps) {
    require_eps(eps);
    const double e2 = eps * eps, e4 = e2 * e2;
    MatR m(3, 3);
    m << 0, 5, 0,  //
        -5 + e2, 10 - 2 * e2, 2,
        -6 - e2 + 2 * e4, 6 + e2 - 3 * e4, 5 + 2 * e2;
    return MatR(m / 5.0);
  };
  sp.build_tilde = [](double eps) {
    require_eps(eps);
    const double e2 = eps * eps, e4 = e2 * e2;
    MatR m(3, 3);
    m << 0, 0, 0,  //
        1 - e2, -2 + 2 * e2, -2 * (e2 - 1) / e2,
        -1 + 3 * e2 - 2 * e4, 1 - 4 * e2 + 3 * e4, 2 - 2 * e2;
    return MatR(m / 5.0);
  };
  return sp;
}

FluxSplitting euler_characteristic_splitting() {
  SystemSpec sys = euler_linearized_system();
  FluxSplitting sp =
      generic_characteristic_splitting(sys, freeze_at_one_rule(sys));
  sp.system.name = "euler-characteristic";
  return sp;
}

std::function<VecR(const VecR&, double)> freeze_at_one_rule(const SystemSpec& sys) {
  const VecR lambda_one = real_eigendecomposition(sys.build(1.0)).values;
  return [lambda_one](const VecR&, double) { return lambda_one; };
}

FluxSplitting generic_characteristic_splitting(
    SystemSpec sys, std::function<VecR(const VecR&, double)> hat_rule) {
  FluxSplitting sp;
  sp.system = sys;
  sp.kind = SplitKind::characteristic;
  auto decompose = [sys](double eps) { return real_eigendecomposition(sys.build(eps)); };
  CharData cd;
  cd.q = [decompose](double eps) { return decompose(eps).vectors; };
  cd.lambda_hat = [decompose, hat_rule](double eps) {
    return hat_rule(decompose(eps).values, eps);
  };
  cd.lambda_tilde = [decompose, hat_rule](double eps) {
    const VecR lam = decompose(eps).values;
    return VecR(lam - hat_rule(lam, eps));
  };
  sp.build_hat = [decompose, hat_rule](double eps) {
    const RealEigen ed = decompose(eps);
    const VecR lh = hat_rule(ed.values, eps);
    return MatR(ed.vectors * lh.asDiagonal() *
                ed.vectors.fullPivLu().inverse());
  };
  sp.build_tilde = [sp_hat = sp.build_hat, sys](double eps) {
    return MatR(sys.build(eps) - sp_hat(eps));
  };
  sp.char_data = cd;
  return sp;
}

AdmissibilityReport check_admissible(const FluxSplitting& sp,
                                     const std::vector<double>& eps_grid) {
  if (eps_grid.empty())
    throw std::invalid_argument("check_admissible: empty eps grid");
  AdmissibilityReport rep;
  rep.eps_samples = eps_grid;
  rep.hat_eig_sup = 0.0;
  bool all_hyperbolic = true;
  for (double eps : eps_grid) {
    bool hat_ok = false, tilde_ok = false;
    try {
      const MatR hat = sp.build_hat(eps);
      const MatR tilde = sp.build_tilde(eps);
      hat_ok = real_spectrum_complete(hat);
      tilde_ok = real_spectrum_complete(tilde);
      if (hat_ok) {
        for (const auto& v : eig(hat).values)
          rep.hat_eig_sup = std::max(rep.hat_eig_sup, std::abs(v.real()));
      }
    } catch (const std::exception&) {
      // Construction failure at this sample counts as non-hyperbolic.
    }
    rep.hyperbolic_hat.push_back(hat_ok);
    rep.hyperbolic_tilde.push_back(tilde_ok);
    all_hyperbolic = all_hyperbolic && hat_ok && tilde_ok;
  }
  rep.verdict = all_hyperbolic && std::isfinite(rep.hat_eig_sup);
  return rep;
}

FluxSplitting splitting_by_name(const std::string& name, double a) {
  if (name == "prototype") return prototype_characteristic_splitting(a);
  if (name == "prototype-noncommuting") return prototype_noncommuting_splitting(a);
  if (name == "euler-paper") return euler_paper_splitting();
  if (name == "euler-characteristic") return euler_characteristic_splitting();
  throw std::invalid_argument("unknown splitting: " + name);
}

std::vector<std::string> catalog_names() {
  return {"prototype", "prototype-noncommuting", "euler-paper",
          "euler-characteristic"};
}

}  // namespace splitstab

#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "splitstab/smallmat.hpp"

namespace splitstab {

/// A parametrized family eps in (0,1] -> A(eps) of flux matrices.
struct SystemSpec {
  std::string name;
  int dim = 0;
  std::function<MatR(double)> build;
  std::map<std::string, double> params;

  /// Speed of the slow (advective) wave; every cataloged system stores it
  /// under key "a".
  double advective_speed() const { return params.at("a"); }
};

enum class SplitKind { characteristic, general };

/// Eigendecomposition data for characteristic splittings:
/// A = Q Lambda Q^-1 with Lambda = Lambda_hat + Lambda_tilde.
struct CharData {
  std::function<MatR(double)> q;
  std::function<VecR(double)> lambda_hat;
  std::function<VecR(double)> lambda_tilde;
};

/// A splitting A = A_hat + A_tilde into nonstiff (explicit) and stiff
/// (implicit) parts.
struct FluxSplitting {
  SystemSpec system;
  std::function<MatR(double)> build_hat;
  std::function<MatR(double)> build_tilde;
  SplitKind kind = SplitKind::general;
  std::optional<CharData> char_data;
};

struct AdmissibilityReport {
  std::vector<double> eps_samples;
  std::vector<bool> hyperbolic_hat;
  std::vector<bool> hyperbolic_tilde;
  double hat_eig_sup = 0.0;
  bool verdict = false;
};

/// The 3x3 system [[a,1,0],[1/e^2,a,1/e^2],[0,1,a]]; eigenvalues a, a±√2/eps.
SystemSpec prototype_system(double a);

/// Characteristic splitting of the prototype with
/// Lambda_hat = diag(a-√2, a, a+√2); fully explicit at eps = 1.
FluxSplitting prototype_characteristic_splitting(double a);

/// Non-characteristic splitting of the prototype; admissible only for
/// eps < 1 and not uniformly stable in eps.
FluxSplitting prototype_noncommuting_splitting(double a);

/// Linearized low Mach number Euler system about (rho, rho*v, E) = (1,1,1).
SystemSpec euler_linearized_system(double gamma = 1.4);

/// The linearized pressure-based splitting of the Euler system.
FluxSplitting euler_paper_splitting();

/// Characteristic splitting of the Euler system with Lambda_hat frozen at
/// eps = 1.
FluxSplitting euler_characteristic_splitting();

/// Builds a characteristic splitting from an eigenvalue split rule
/// Lambda -> Lambda_hat (applied to the ascending-sorted spectrum of A(eps)).
FluxSplitting generic_characteristic_splitting(
    SystemSpec sys, std::function<VecR(const VecR&, double)> hat_rule);

/// Rule freezing Lambda_hat at the eps = 1 spectrum of the given system.
std::function<VecR(const VecR&, double)> freeze_at_one_rule(const SystemSpec& sys);

/// Checks Definition-style admissibility on a finite eps grid: both parts
/// hyperbolic per sample, and sup |eig(A_hat)| bounded over the grid.
AdmissibilityReport check_admissible(const FluxSplitting& sp,
                                     const std::vector<double>& eps_grid);

/// Catalog lookup for the CLI names: prototype, prototype-noncommuting,
/// euler-paper, euler-characteristic. Throws std::invalid_argument on an
/// unknown name.
FluxSplitting splitting_by_name(const std::string& name, double a = 2.0);
std::vector<std::string> catalog_names();

}  // namespace splitstab

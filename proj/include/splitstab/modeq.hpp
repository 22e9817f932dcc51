#pragma once

#include "splitstab/models.hpp"
#include "splitstab/smallmat.hpp"

namespace splitstab {

/// Discretization parameters of the IMEX scheme.
struct SchemeParams {
  double dx = 0.0;
  double dt = 0.0;
  double alpha_hat = 0.0;
  double alpha_tilde = 0.0;
};

enum class Verdict { stable, marginal, unstable };

struct StabilityReport {
  std::vector<int> k_list;
  std::vector<Spectrum> spectra;
  double max_real_overall = 0.0;
  Verdict verdict = Verdict::unstable;
  int witness_k = 0;
};

/// Closed-form CFL quantities for the prototype characteristic splitting.
struct CflBounds {
  double nu1 = 0.0;
  double phi = 0.0;
  double psi = 0.0;
  double nu2 = 0.0;
};

struct CharRealParts {
  double mu0 = 0.0;
  double mu_plus = 0.0;
  double mu_minus = 0.0;
};

enum class AlphaTildeRule { zero, stiff_eig };

/// Effective viscosity matrix of the modified equation:
/// B = (dt/2) * [ ((alpha_hat+alpha_tilde) dx/dt) I - (A_hat - A_tilde) A ].
MatR viscosity_matrix(const FluxSplitting& sp, double eps, const SchemeParams& p);

/// Per-mode generator of the modified equation, -i 2 pi k A - 4 pi^2 k^2 B.
MatC frequency_matrix(const MatR& a, const MatR& b, int k);

/// Scans eig(frequency_matrix) over k = 1..k_max and classifies the sign of
/// the largest real part.
StabilityReport stability_scan(const FluxSplitting& sp, double eps,
                               const SchemeParams& p, int k_max);

/// Closed-form real parts of the three frequency-matrix eigenvalues for the
/// prototype characteristic splitting.
CharRealParts char_real_parts(double a, double eps, const SchemeParams& p, int k);

/// nu1 = (alpha_hat+alpha_tilde)/a, phi(a) = sqrt2/(a+2 sqrt2),
/// psi = 1 for eps <= phi(a) else (a/(a+sqrt2))^2, nu2 = nu1*psi.
CflBounds cfl_bounds(double a, double eps, double alpha_hat, double alpha_tilde);

/// Default explicit viscosity, max |eig(A_hat(eps))|.
double default_alpha_hat(const FluxSplitting& sp, double eps);

/// Implicit viscosity for the given rule: 0, or max |eig(A_tilde(eps))|.
double alpha_tilde_for(const FluxSplitting& sp, double eps, AlphaTildeRule rule);

/// Largest advective CFL number nu in (0, nu_hi] with a stable scan verdict,
/// bisected to relative tolerance 1e-3; 0 if even nu_hi*2^-60 is unstable.
double max_stable_ratio(const FluxSplitting& sp, double eps, double dx,
                        AlphaTildeRule rule, double nu_hi, int k_max);

/// Exact one-step Fourier symbol of the IMEX update,
/// G(theta) = (I + (dt/dx) S_tilde)^-1 (I - (dt/dx) S_hat) with
/// S(theta) = i sin(theta) A_part + (1-cos(theta)) alpha_part I.
MatC discrete_symbol(const FluxSplitting& sp, double eps, const SchemeParams& p,
                     double theta);

}  // namespace splitstab

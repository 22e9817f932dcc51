#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace splitstab {

using MatR = Eigen::MatrixXd;
using MatC = Eigen::MatrixXcd;
using VecR = Eigen::VectorXd;
using VecC = Eigen::VectorXcd;

/// Thrown when an eigenvalue iteration or a linear solve cannot deliver the
/// requested accuracy; carries a diagnostic (residual or condition estimate).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// All eigenvalues of a matrix, sorted by real part ascending, then by
/// imaginary part, so spectra compare deterministically across runs.
struct Spectrum {
  std::vector<std::complex<double>> values;
  double max_real = 0.0;
};

Spectrum eig(const MatC& m);
Spectrum eig(const MatR& m);

/// a*b - b*a. Dimensions must agree.
MatR commutator(const MatR& a, const MatR& b);

/// Solves m*x = rhs; guarantees ||m*x - rhs|| <= 1e-12*(||m||*||x|| + ||rhs||)
/// or throws NumericalError with a condition estimate.
VecC solve_linear(const MatC& m, const VecC& rhs);

/// Real eigendecomposition A = Q diag(values) Q^-1 for matrices with a real
/// spectrum. Eigenvalues sorted ascending; Q columns have unit Euclidean norm
/// and a positive first nonzero component.
struct RealEigen {
  VecR values;
  MatR vectors;
};

RealEigen real_eigendecomposition(const MatR& a);

}  // namespace splitstab

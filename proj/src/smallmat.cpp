#include "splitstab/smallmat.hpp"

#include <algorithm>
#include <sstream>

namespace splitstab {

namespace {

Spectrum make_spectrum(VecC raw) {
  Spectrum s;
  s.values.assign(raw.data(), raw.data() + raw.size());
  std::sort(s.values.begin(), s.values.end(),
            [](const std::complex<double>& x, const std::complex<double>& y) {
              if (x.real() != y.real()) return x.real() < y.real();
              return x.imag() < y.imag();
            });
  s.max_real = s.values.empty() ? 0.0 : s.values.back().real();
  return s;
}

}  // namespace

Spectrum eig(const MatC& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("eig: matrix must be square and nonempty");
  if (!m.allFinite()) throw std::invalid_argument("eig: non-finite entries");
  Eigen::ComplexEigenSolver<MatC> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream msg;
    msg << "eig: iteration did not converge for dim " << m.rows()
        << ", matrix norm " << m.norm();
    throw NumericalError(msg.str());
  }
  return make_spectrum(solver.eigenvalues());
}

Spectrum eig(const MatR& m) { return eig(MatC(m.cast<std::complex<double>>())); }

MatR commutator(const MatR& a, const MatR& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimension mismatch");
  return a * b - b * a;
}

VecC solve_linear(const MatC& m, const VecC& rhs) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("solve_linear: matrix must be square");
  if (rhs.size() != m.rows())
    throw std::invalid_argument("solve_linear: rhs length mismatch");
  Eigen::FullPivLU<MatC> lu(m);
  VecC x = lu.solve(rhs);
  const double residual = (m * x - rhs).norm();
  const double bound = 1e-12 * (m.norm() * x.norm() + rhs.norm());
  if (!x.allFinite() || residual > bound) {
    Eigen::JacobiSVD<MatC> svd(m);
    const double smin = svd.singularValues().minCoeff();
    const double cond = smin > 0.0
                            ? svd.singularValues().maxCoeff() / smin
                            : std::numeric_limits<double>::infinity();
    std::ostringstream msg;
    msg << "solve_linear: singular to working precision, cond ~ " << cond
        << ", residual " << residual;
    throw NumericalError(msg.str());
  }
  return x;
}

RealEigen real_eigendecomposition(const MatR& a) {
  Eigen::EigenSolver<MatR> solver(a);
  if (solver.info() != Eigen::Success)
    throw NumericalError("real_eigendecomposition: iteration did not converge");
  const VecC lam = solver.eigenvalues();
  const double imag_tol = 1e-9 * std::max(1.0, a.norm());
  if (lam.imag().cwiseAbs().maxCoeff() > imag_tol)
    throw NumericalError("real_eigendecomposition: spectrum is not real");

  const Eigen::Index d = a.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) order[static_cast<size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return lam[i].real() < lam[j].real();
  });

  RealEigen out;
  out.values.resize(d);
  out.vectors.resize(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    const Eigen::Index i = order[static_cast<size_t>(c)];
    out.values[c] = lam[i].real();
    VecR v = solver.eigenvectors().col(i).real();
    v.normalize();
    for (Eigen::Index r = 0; r < d; ++r) {
      if (std::abs(v[r]) > 1e-12) {
        if (v[r] < 0.0) v = -v;
        break;
      }
    }
    out.vectors.col(c) = v;
  }
  return out;
}

}  // namespace splitstab

#include "splitstab/imex.hpp"

#include <cmath>
#include <numbers>

namespace splitstab {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

GridField init_fourier(Grid grid, int dim,
                       const std::vector<std::pair<int, VecC>>& modes) {
  GridField u(grid, dim);
  for (const auto& [k, coeff] : modes) {
    if (coeff.size() != dim)
      throw std::invalid_argument("init_fourier: coefficient length mismatch");
    if (2 * std::abs(k) >= grid.num_cells)
      throw std::invalid_argument("init_fourier: mode not resolvable on grid");
    for (int j = 0; j < grid.num_cells; ++j) {
      const std::complex<double> phase =
          std::exp(std::complex<double>(0.0, 2.0 * kPi * k * grid.center(j)));
      u.block(j) += (coeff * phase).real();
    }
  }
  return u;
}

PeriodicBlockTridiagonal::PeriodicBlockTridiagonal(const MatR& lower,
                                                   const MatR& diag,
                                                   const MatR& upper,
                                                   int num_blocks)
    : num_blocks_(num_blocks),
      dim_(static_cast<int>(diag.rows())),
      lower_(lower),
      diag_(diag),
      upper_(upper) {
  if (num_blocks < 3)
    throw std::invalid_argument("PeriodicBlockTridiagonal: need >= 3 blocks");
  if (diag.rows() != diag.cols() || lower.rows() != dim_ ||
      lower.cols() != dim_ || upper.rows() != dim_ || upper.cols() != dim_)
    throw std::invalid_argument("PeriodicBlockTridiagonal: block shape mismatch");

  // Block-LU of the open-boundary tridiagonal T: the Schur diagonals obey
  // D_0 = D, D_i = D - L D_{i-1}^-1 U.
  diag_lu_.reserve(static_cast<size_t>(num_blocks_));
  MatR schur = diag;
  for (int i = 0; i < num_blocks_; ++i) {
    diag_lu_.emplace_back(schur);
    if (!diag_lu_.back().isInvertible())
      throw NumericalError("PeriodicBlockTridiagonal: singular pivot block");
    if (i + 1 < num_blocks_) schur = diag - lower_ * diag_lu_.back().solve(upper_);
  }

  // Wrap couplings as a rank-2d update: block (0, J-1) = L, block (J-1, 0) = U,
  // i.e. A = T + U_cols K V^T with U_cols = [E_0, E_{J-1}], K = blkdiag(L, U),
  // V = [E_{J-1}, E_0].
  const Eigen::Index n = static_cast<Eigen::Index>(num_blocks_) * dim_;
  MatR u_cols = MatR::Zero(n, 2 * dim_);
  u_cols.topLeftCorner(dim_, dim_).setIdentity();
  u_cols.bottomRightCorner(dim_, dim_).setIdentity();

  correction_cols_.resize(n, 2 * dim_);
  for (Eigen::Index c = 0; c < 2 * dim_; ++c)
    correction_cols_.col(c) = thomas_solve(u_cols.col(c));

  MatR k_blocks = MatR::Zero(2 * dim_, 2 * dim_);
  k_blocks.topLeftCorner(dim_, dim_) = lower_;
  k_blocks.bottomRightCorner(dim_, dim_) = upper_;
  // V^T T^-1 U_cols: V picks the last block (first column group) and the
  // first block (second column group).
  MatR w(2 * dim_, 2 * dim_);
  w.topRows(dim_) = correction_cols_.bottomRows(dim_);
  w.bottomRows(dim_) = correction_cols_.topRows(dim_);
  Eigen::FullPivLU<MatR> cap(MatR::Identity(2 * dim_, 2 * dim_) + w * k_blocks);
  if (!cap.isInvertible())
    throw NumericalError("PeriodicBlockTridiagonal: singular wrap correction");
  correction_map_ = k_blocks * cap.inverse();

  op_norm_ = std::sqrt(static_cast<double>(num_blocks_)) *
             std::sqrt(lower_.squaredNorm() + diag_.squaredNorm() +
                       upper_.squaredNorm());
}

VecR PeriodicBlockTridiagonal::apply(const VecR& x) const {
  VecR y(x.size());
  for (int i = 0; i < num_blocks_; ++i) {
    const int im = (i + num_blocks_ - 1) % num_blocks_;
    const int ip = (i + 1) % num_blocks_;
    y.segment(static_cast<Eigen::Index>(i) * dim_, dim_) =
        lower_ * x.segment(static_cast<Eigen::Index>(im) * dim_, dim_) +
        diag_ * x.segment(static_cast<Eigen::Index>(i) * dim_, dim_) +
        upper_ * x.segment(static_cast<Eigen::Index>(ip) * dim_, dim_);
  }
  return y;
}

VecR PeriodicBlockTridiagonal::thomas_solve(const VecR& rhs) const {
  const int j = num_blocks_;
  VecR z(rhs.size());
  z.head(dim_) = rhs.head(dim_);
  for (int i = 1; i < j; ++i) {
    z.segment(static_cast<Eigen::Index>(i) * dim_, dim_) =
        rhs.segment(static_cast<Eigen::Index>(i) * dim_, dim_) -
        lower_ * diag_lu_[static_cast<size_t>(i - 1)].solve(
                     z.segment(static_cast<Eigen::Index>(i - 1) * dim_, dim_));
  }
  VecR x(rhs.size());
  x.tail(dim_) = diag_lu_.back().solve(z.tail(dim_));
  for (int i = j - 2; i >= 0; --i) {
    x.segment(static_cast<Eigen::Index>(i) * dim_, dim_) =
        diag_lu_[static_cast<size_t>(i)].solve(
            z.segment(static_cast<Eigen::Index>(i) * dim_, dim_) -
            upper_ * x.segment(static_cast<Eigen::Index>(i + 1) * dim_, dim_));
  }
  return x;
}

VecR PeriodicBlockTridiagonal::corrected_solve(const VecR& rhs) const {
  VecR y = thomas_solve(rhs);
  VecR vty(2 * dim_);
  vty.head(dim_) = y.tail(dim_);
  vty.tail(dim_) = y.head(dim_);
  return y - correction_cols_ * (correction_map_ * vty);
}

VecR PeriodicBlockTridiagonal::solve(const VecR& rhs) const {
  if (rhs.size() != static_cast<Eigen::Index>(num_blocks_) * dim_)
    throw std::invalid_argument("PeriodicBlockTridiagonal: rhs size mismatch");
  VecR x = corrected_solve(rhs);
  // Iterative refinement: the block-LU sweep has no pivoting across blocks
  // and can lose accuracy when the off-diagonal blocks dominate; as long as
  // it contracts, refinement restores the residual bound.
  for (int it = 0; it < 40; ++it) {
    const VecR r = rhs - apply(x);
    if (!x.allFinite() || !r.allFinite())
      throw NumericalError("PeriodicBlockTridiagonal: solve diverged");
    if (r.norm() <= 1e-13 * (op_norm_ * x.norm() + rhs.norm())) return x;
    x += corrected_solve(r);
  }
  const double res = (rhs - apply(x)).norm();
  if (res > 1e-12 * (op_norm_ * x.norm() + rhs.norm()))
    throw NumericalError(
        "PeriodicBlockTridiagonal: refinement stalled, residual " +
        std::to_string(res));
  return x;
}

GridField solve_periodic_block_tridiagonal(const MatR& lower, const MatR& diag,
                                           const MatR& upper,
                                           const GridField& rhs) {
  PeriodicBlockTridiagonal op(lower, diag, upper, rhs.grid.num_cells);
  GridField x(rhs.grid, rhs.dim);
  x.values = op.solve(rhs.values);
  return x;
}

namespace {

PeriodicBlockTridiagonal make_implicit_operator(const MatR& a_tilde,
                                                const SchemeParams& p, Grid g) {
  const Eigen::Index d = a_tilde.rows();
  const double r = p.dt / (2.0 * g.dx());
  const MatR id = MatR::Identity(d, d);
  const MatR lower = -r * a_tilde - r * p.alpha_tilde * id;
  const MatR diag = id + (p.dt / g.dx()) * p.alpha_tilde * id;
  const MatR upper = r * a_tilde - r * p.alpha_tilde * id;
  return PeriodicBlockTridiagonal(lower, diag, upper, g.num_cells);
}

}  // namespace

ImexStepper::ImexStepper(const FluxSplitting& sp, double eps,
                         const SchemeParams& p, Grid grid)
    : grid_(grid),
      dim_(sp.system.dim),
      params_(p),
      a_hat_(sp.build_hat(eps)),
      implicit_(make_implicit_operator(sp.build_tilde(eps), p, grid)) {
  if (std::abs(p.dx - grid.dx()) > 1e-14 * grid.dx())
    throw std::invalid_argument("ImexStepper: params.dx does not match grid");
}

GridField ImexStepper::step(const GridField& u) const {
  const int j_cells = grid_.num_cells;
  const double r = params_.dt / (2.0 * grid_.dx());
  GridField rhs(grid_, dim_);
  for (int j = 0; j < j_cells; ++j) {
    const int jm = (j + j_cells - 1) % j_cells;
    const int jp = (j + 1) % j_cells;
    const VecR um = u.block(jm), uc = u.block(j), up = u.block(jp);
    rhs.block(j) = uc - r * (a_hat_ * (up - um)) +
                   r * params_.alpha_hat * (up - 2.0 * uc + um);
  }
  GridField next(grid_, dim_);
  next.values = implicit_.solve(rhs.values);
  return next;
}

GridField step(const GridField& u, const FluxSplitting& sp, double eps,
               const SchemeParams& p) {
  return ImexStepper(sp, eps, p, u.grid).step(u);
}

RunResult run(const GridField& u0, const FluxSplitting& sp, double eps,
              const SchemeParams& p, double t_end, double blowup_threshold) {
  if (!(t_end > 0.0)) throw std::invalid_argument("run: t_end must be positive");
  const int steps = static_cast<int>(std::lround(t_end / p.dt));
  const ImexStepper stepper(sp, eps, p, u0.grid);

  RunResult res{u0, {}, 1.0, false};
  const double l2_0 = u0.l2_norm();
  res.l2_history.reserve(static_cast<size_t>(steps) + 1);
  res.l2_history.push_back(l2_0);
  for (int n = 0; n < steps; ++n) {
    res.final = stepper.step(res.final);
    const double l2 = res.final.l2_norm();
    res.l2_history.push_back(l2);
    if (l2_0 > 0.0) res.growth = l2 / l2_0;
    if (!std::isfinite(l2) || (l2_0 > 0.0 && res.growth > blowup_threshold)) {
      res.blew_up = true;
      break;
    }
  }
  return res;
}

std::vector<std::pair<double, double>> convergence_study(
    const FluxSplitting& sp, double eps, const SchemeParams& base, int levels,
    double t_end) {
  if (levels < 1) throw std::invalid_argument("convergence_study: levels >= 1");
  const int d = sp.system.dim;
  const MatR a = sp.system.build(eps);

  // Exact per-mode solution: coefficients evolve by exp(-i 2 pi k A t).
  const int mode_k = 1;
  VecC coeff = VecC::Zero(d);
  coeff[0] = 1.0;

  Eigen::ComplexEigenSolver<MatC> es(a.cast<std::complex<double>>());
  const MatC q = es.eigenvectors();
  const VecC lam = es.eigenvalues();
  const VecC w0 = q.fullPivLu().solve(coeff);

  std::vector<std::pair<double, double>> out;
  double dx = base.dx;
  double dt = base.dt;
  for (int lvl = 0; lvl < levels; ++lvl) {
    const int j_cells = static_cast<int>(std::lround(1.0 / dx));
    Grid g(j_cells);
    SchemeParams p{g.dx(), dt, base.alpha_hat, base.alpha_tilde};
    GridField u = init_fourier(g, d, {{mode_k, coeff}});
    const RunResult res = run(u, sp, eps, p, t_end);
    const double t_actual = std::lround(t_end / dt) * dt;
    VecC expdiag(d);
    for (int i = 0; i < d; ++i)
      expdiag[i] = std::exp(std::complex<double>(0.0, -2.0 * kPi * mode_k) *
                            lam[i] * t_actual);
    const VecC coeff_t = q * expdiag.asDiagonal() * w0;
    GridField exact = init_fourier(g, d, {{mode_k, coeff_t}});
    exact.values -= res.final.values;
    out.emplace_back(g.dx(), exact.l2_norm());
    dx *= 0.5;
    dt *= 0.5;
  }
  return out;
}

}  // namespace splitstab

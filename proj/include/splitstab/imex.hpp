#pragma once

#include <utility>
#include <vector>

#include "splitstab/modeq.hpp"
#include "splitstab/models.hpp"
#include "splitstab/smallmat.hpp"

namespace splitstab {

/// Uniform periodic subdivision of [0, 1] into J cells.
struct Grid {
  int num_cells = 0;

  explicit Grid(int j) : num_cells(j) {
    if (j < 4) throw std::invalid_argument("Grid: need at least 4 cells");
  }
  double dx() const { return 1.0 / num_cells; }
  double center(int j) const { return (j + 0.5) * dx(); }
};

/// Periodic cell-average field with d components per cell, stored as J
/// contiguous blocks of length d.
struct GridField {
  Grid grid;
  int dim = 0;
  VecR values;

  GridField(Grid g, int d)
      : grid(g), dim(d), values(VecR::Zero(static_cast<Eigen::Index>(g.num_cells) * d)) {
    if (d < 1) throw std::invalid_argument("GridField: dim must be >= 1");
  }

  Eigen::VectorBlock<VecR> block(int j) { return values.segment(static_cast<Eigen::Index>(j) * dim, dim); }
  Eigen::VectorBlock<const VecR> block(int j) const {
    return values.segment(static_cast<Eigen::Index>(j) * dim, dim);
  }

  /// sqrt(dx * sum_j ||u_j||^2)
  double l2_norm() const { return values.norm() * std::sqrt(grid.dx()); }
};

struct RunResult {
  GridField final;
  std::vector<double> l2_history;
  double growth = 1.0;
  bool blew_up = false;
};

/// u_j = Re sum_modes coeff * exp(i 2 pi k x_j). Modes with |k| >= J/2 are
/// rejected as unresolvable.
GridField init_fourier(Grid grid, int dim,
                       const std::vector<std::pair<int, VecC>>& modes);

/// Block-tridiagonal periodic solver with constant blocks: block LU on the
/// interior plus a rank-2d correction for the wrap couplings. Factorizes on
/// construction; solve() is reusable.
class PeriodicBlockTridiagonal {
 public:
  PeriodicBlockTridiagonal(const MatR& lower, const MatR& diag,
                           const MatR& upper, int num_blocks);
  VecR solve(const VecR& rhs) const;
  int num_blocks() const { return num_blocks_; }
  int block_dim() const { return dim_; }

 private:
  int num_blocks_ = 0;
  int dim_ = 0;
  MatR lower_, diag_, upper_;
  double op_norm_ = 0.0;
  std::vector<Eigen::FullPivLU<MatR>> diag_lu_;  // factorized Schur diagonals
  MatR correction_cols_;                          // T^-1 [E_0, E_{J-1}]
  MatR correction_map_;                           // K (I + V^T T^-1 U K)^-1
  VecR thomas_solve(const VecR& rhs) const;
  VecR corrected_solve(const VecR& rhs) const;
  VecR apply(const VecR& x) const;
};

/// One-off wrapper over PeriodicBlockTridiagonal matching the field layout.
GridField solve_periodic_block_tridiagonal(const MatR& lower, const MatR& diag,
                                           const MatR& upper,
                                           const GridField& rhs);

/// One IMEX update: explicit nonstiff flux at level n, implicit stiff flux at
/// level n+1. The implicit operator is factorized on construction and reused.
class ImexStepper {
 public:
  ImexStepper(const FluxSplitting& sp, double eps, const SchemeParams& p,
              Grid grid);
  GridField step(const GridField& u) const;

 private:
  Grid grid_;
  int dim_;
  SchemeParams params_;
  MatR a_hat_;
  PeriodicBlockTridiagonal implicit_;
};

GridField step(const GridField& u, const FluxSplitting& sp, double eps,
               const SchemeParams& p);

RunResult run(const GridField& u0, const FluxSplitting& sp, double eps,
              const SchemeParams& p, double t_end,
              double blowup_threshold = 1e3);

/// Refinement study against the exact Fourier-mode solution of the PDE;
/// dt/dx is held fixed while dx halves per level. Returns (dx, L2 error).
std::vector<std::pair<double, double>> convergence_study(
    const FluxSplitting& sp, double eps, const SchemeParams& base, int levels,
    double t_end);

}  // namespace splitstab

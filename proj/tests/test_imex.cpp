#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "splitstab/imex.hpp"

using namespace splitstab;

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kPi = std::numbers::pi;

/// Evolves a single complex Fourier coefficient through n solver steps by
/// splitting it into real and imaginary fields; the scheme is real-linear, so
/// the combination recovers the complex-mode update exactly.
VecC evolve_mode_with_solver(const FluxSplitting& sp, double eps,
                             const SchemeParams& p, Grid grid, int k,
                             const VecC& coeff, int steps) {
  const int d = sp.system.dim;
  GridField ur = init_fourier(grid, d, {{k, coeff}});
  GridField ui = init_fourier(grid, d, {{k, VecC(coeff * std::complex<double>(0, -1))}});
  const ImexStepper stepper(sp, eps, p, grid);
  for (int n = 0; n < steps; ++n) {
    ur = stepper.step(ur);
    ui = stepper.step(ui);
  }
  // Read the coefficient back off cell 0: c = (u_r + i u_i) * e^{-i2pik x_0}.
  const std::complex<double> phase =
      std::exp(std::complex<double>(0.0, -2.0 * kPi * k * grid.center(0)));
  VecC out(d);
  for (int c = 0; c < d; ++c)
    out[c] = std::complex<double>(ur.block(0)[c], ui.block(0)[c]) * phase;
  return out;
}

}  // namespace

TEST_CASE("init_fourier") {
  Grid g(16);
  SUBCASE("single cosine mode") {
    VecC coeff = VecC::Zero(3);
    coeff[0] = 1.0;
    const GridField u = init_fourier(g, 3, {{2, coeff}});
    for (int j = 0; j < 16; ++j) {
      CHECK(u.block(j)[0] == doctest::Approx(std::cos(4.0 * kPi * g.center(j))));
      CHECK(u.block(j)[1] == 0.0);
    }
  }
  SUBCASE("empty modes give the zero field") {
    CHECK(init_fourier(g, 3, {}).l2_norm() == 0.0);
  }
  SUBCASE("k=0 gives a constant field") {
    VecC coeff(2);
    coeff << 1.5, -0.5;
    const GridField u = init_fourier(g, 2, {{0, coeff}});
    for (int j = 0; j < 16; ++j) CHECK(u.block(j)[1] == doctest::Approx(-0.5));
  }
  SUBCASE("unresolvable mode throws") {
    CHECK_THROWS_AS(init_fourier(g, 1, {{8, VecC::Ones(1)}}),
                    std::invalid_argument);
  }
}

TEST_CASE("periodic block tridiagonal: identity operator") {
  Grid g(8);
  GridField rhs(g, 2);
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (Eigen::Index i = 0; i < rhs.values.size(); ++i) rhs.values[i] = dist(rng);
  const GridField x = solve_periodic_block_tridiagonal(
      MatR::Zero(2, 2), MatR::Identity(2, 2), MatR::Zero(2, 2), rhs);
  CHECK((x.values - rhs.values).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("periodic block tridiagonal: d=1, J=4 against a dense solve") {
  const double c = 0.1;
  Grid g(4);
  GridField rhs(g, 1);
  rhs.values << 1, 0, 0, 0;
  const GridField x = solve_periodic_block_tridiagonal(
      MatR::Constant(1, 1, -c), MatR::Identity(1, 1), MatR::Constant(1, 1, c),
      rhs);

  MatR dense = MatR::Identity(4, 4);
  for (int j = 0; j < 4; ++j) {
    dense(j, (j + 1) % 4) += c;
    dense(j, (j + 3) % 4) += -c;
  }
  const VecR expected = dense.partialPivLu().solve(rhs.values);
  CHECK((x.values - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("periodic block tridiagonal: residual bound on random blocks") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Grid g(16);
  const int d = 3;
  for (int trial = 0; trial < 10; ++trial) {
    MatR lower(d, d), upper(d, d), diag(d, d);
    for (int i = 0; i < d * d; ++i) {
      lower(i / d, i % d) = 0.3 * dist(rng);
      upper(i / d, i % d) = 0.3 * dist(rng);
      diag(i / d, i % d) = 0.2 * dist(rng);
    }
    diag += 2.0 * MatR::Identity(d, d);
    GridField rhs(g, d);
    for (Eigen::Index i = 0; i < rhs.values.size(); ++i) rhs.values[i] = dist(rng);

    const GridField x =
        solve_periodic_block_tridiagonal(lower, diag, upper, rhs);

    // Dense reconstruction of the periodic operator for the residual.
    VecR ax = VecR::Zero(rhs.values.size());
    for (int j = 0; j < 16; ++j) {
      ax.segment(j * d, d) = diag * x.block(j) +
                             lower * x.block((j + 15) % 16) +
                             upper * x.block((j + 1) % 16);
    }
    const double opnorm = diag.norm() + lower.norm() + upper.norm();
    CHECK((ax - rhs.values).norm() <=
          1e-12 * (opnorm * x.values.norm() + rhs.values.norm()));
  }
}

TEST_CASE("periodic block tridiagonal: singular diagonal throws") {
  Grid g(4);
  GridField rhs(g, 1);
  CHECK_THROWS_AS(solve_periodic_block_tridiagonal(MatR::Zero(1, 1),
                                                   MatR::Zero(1, 1),
                                                   MatR::Zero(1, 1), rhs),
                  NumericalError);
}

TEST_CASE("step: constant fields are fixed points") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  Grid g(16);
  VecC coeff(3);
  coeff << 0.7, -0.2, 1.1;
  const GridField u = init_fourier(g, 3, {{0, coeff}});
  const SchemeParams p{g.dx(), g.dx() / 10.0, 2.0 + kSqrt2, 0.5};
  const GridField next = step(u, sp, 0.3, p);
  CHECK((next.values - u.values).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("step: A_tilde=0 reduces to the explicit scheme") {
  FluxSplitting sp = prototype_characteristic_splitting(2.0);
  const MatR a = sp.system.build(1.0);
  Grid g(32);
  const SchemeParams p{g.dx(), g.dx() / 10.0, 2.0 + kSqrt2, 0.0};
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridField u(g, 3);
  for (Eigen::Index i = 0; i < u.values.size(); ++i) u.values[i] = dist(rng);

  const GridField next = step(u, sp, 1.0, p);  // tilde vanishes at eps=1

  const double r = p.dt / (2.0 * g.dx());
  for (int j = 0; j < 32; ++j) {
    const VecR um = u.block((j + 31) % 32), uc = u.block(j),
               up = u.block((j + 1) % 32);
    const VecR expected =
        uc - r * (a * (up - um)) + r * p.alpha_hat * (up - 2.0 * uc + um);
    CHECK((next.block(j) - expected).cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("step: mean of every component is preserved") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  Grid g(24);
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridField u(g, 3);
  for (Eigen::Index i = 0; i < u.values.size(); ++i) u.values[i] = dist(rng);
  const SchemeParams p{g.dx(), g.dx() / 10.0, 2.0 + kSqrt2, 1.0};
  const GridField next = step(u, sp, 0.2, p);
  for (int c = 0; c < 3; ++c) {
    double before = 0.0, after = 0.0;
    for (int j = 0; j < 24; ++j) {
      before += u.block(j)[c];
      after += next.block(j)[c];
    }
    CHECK(std::abs(after - before) <= 1e-13 * 24 * (1.0 + std::abs(before)));
  }
}

TEST_CASE("step: linearity") {
  const FluxSplitting sp = prototype_characteristic_splitting(1.0);
  Grid g(16);
  const SchemeParams p{g.dx(), g.dx() / 8.0, 1.0 + kSqrt2, 0.0};
  const ImexStepper stepper(sp, 0.4, p, g);
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  GridField u(g, 3), v(g, 3), w(g, 3);
  for (Eigen::Index i = 0; i < u.values.size(); ++i) {
    u.values[i] = dist(rng);
    v.values[i] = dist(rng);
  }
  const double alpha = 1.7, beta = -0.6;
  w.values = alpha * u.values + beta * v.values;
  const GridField sw = stepper.step(w);
  const VecR combo =
      alpha * stepper.step(u).values + beta * stepper.step(v).values;
  CHECK((sw.values - combo).cwiseAbs().maxCoeff() <=
        1e-12 * (1.0 + combo.cwiseAbs().maxCoeff()));
}

TEST_CASE("step: single Fourier mode follows the discrete symbol") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  Grid g(32);
  const double eps = 0.2;
  const SchemeParams p{g.dx(), g.dx() / 10.0, 2.0 + kSqrt2, 0.3};
  const int k = 3;
  VecC coeff(3);
  coeff << std::complex<double>(1.0, 0.5), std::complex<double>(-0.3, 0.0),
      std::complex<double>(0.2, -0.8);

  const VecC after = evolve_mode_with_solver(sp, eps, p, g, k, coeff, 1);
  const MatC gsym = discrete_symbol(sp, eps, p, 2.0 * kPi * k * g.dx());
  CHECK((after - gsym * coeff).norm() <= 1e-10 * coeff.norm());
}

TEST_CASE("run: stability verdict matches long-time growth") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  Grid g(64);
  VecC coeff = VecC::Zero(3);
  coeff[0] = 1.0;
  const GridField u0 = init_fourier(g, 3, {{2, coeff}});

  SUBCASE("stable config stays bounded") {
    const SchemeParams p{g.dx(), 0.5 * g.dx() / 2.0, 2.0 + kSqrt2, 0.0};
    REQUIRE(stability_scan(sp, 0.05, p, 32).verdict == Verdict::stable);
    const RunResult res = run(u0, sp, 0.05, p, 0.1);
    CHECK_FALSE(res.blew_up);
    CHECK(res.growth <= 2.0);
  }
  SUBCASE("unstable config grows past 10") {
    const FluxSplitting bad = prototype_noncommuting_splitting(2.0);
    const double eps = 1e-3;
    const SchemeParams p{g.dx(), g.dx() / 4.0, default_alpha_hat(bad, eps), 0.0};
    REQUIRE(stability_scan(bad, eps, p, 32).verdict == Verdict::unstable);
    const RunResult res = run(u0, bad, eps, p, 1.0, 1e12);
    CHECK(res.growth > 10.0);
  }
}

TEST_CASE("run: zero initial data reports growth 1") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  Grid g(16);
  const GridField u0(g, 3);
  const SchemeParams p{g.dx(), g.dx() / 10.0, 2.0 + kSqrt2, 0.0};
  const RunResult res = run(u0, sp, 0.5, p, 0.05);
  CHECK(res.growth == 1.0);
  CHECK_FALSE(res.blew_up);
}

TEST_CASE("convergence_study: first order on the prototype") {
  const FluxSplitting sp = prototype_characteristic_splitting(2.0);
  const SchemeParams base{1.0 / 50, 1.0 / 500, 2.0 + kSqrt2, 0.0};
  const auto errors = convergence_study(sp, 1.0, base, 4, 0.1);
  REQUIRE(errors.size() == 4);
  for (size_t i = 1; i < errors.size(); ++i) {
    CHECK(errors[i].second < errors[i - 1].second);  // monotone decrease
    const double order = std::log2(errors[i - 1].second / errors[i].second);
    CHECK(order > 0.8);
    CHECK(order < 1.2);
  }
}

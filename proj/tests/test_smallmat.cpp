#include <doctest.h>

#include <algorithm>
#include <random>

#include "splitstab/models.hpp"
#include "splitstab/smallmat.hpp"

using namespace splitstab;

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

TEST_CASE("eig: diagonal matrix") {
  MatR m = MatR::Zero(3, 3);
  m.diagonal() << 3, 1, 2;
  const Spectrum s = eig(m);
  CHECK(s.values[0].real() == doctest::Approx(1.0));
  CHECK(s.values[1].real() == doctest::Approx(2.0));
  CHECK(s.values[2].real() == doctest::Approx(3.0));
  CHECK(s.max_real == doctest::Approx(3.0));
}

TEST_CASE("eig: prototype matrix at a=2, eps=0.5") {
  const MatR m = prototype_system(2.0).build(0.5);
  const Spectrum s = eig(m);
  // a, a +- sqrt(2)/eps = 2, 2 +- 2*sqrt(2)
  CHECK(s.values[0].real() == doctest::Approx(2.0 - 2.0 * kSqrt2));
  CHECK(s.values[1].real() == doctest::Approx(2.0));
  CHECK(s.values[2].real() == doctest::Approx(4.8284271247461903));
}

TEST_CASE("eig: rotation generator has spectrum {i, -i}") {
  MatR m(2, 2);
  m << 0, 1, -1, 0;
  const Spectrum s = eig(m);
  CHECK(s.values[0].real() == doctest::Approx(0.0));
  CHECK(s.values[0].imag() == doctest::Approx(-1.0));
  CHECK(s.values[1].imag() == doctest::Approx(1.0));
  CHECK(std::abs(s.max_real) < 1e-12);
}

TEST_CASE("eig: conjugate pairs for real input") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    MatR m(4, 4);
    for (int i = 0; i < 16; ++i) m(i / 4, i % 4) = dist(rng);
    Spectrum s = eig(m);
    const double scale = std::max(1.0, m.norm());
    // Every eigenvalue with nonzero imaginary part must have a conjugate.
    for (const auto& v : s.values) {
      if (std::abs(v.imag()) < 1e-10 * scale) continue;
      bool found = false;
      for (const auto& w : s.values)
        if (std::abs(w - std::conj(v)) < 1e-10 * scale * std::abs(v)) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("eig: trace equals eigenvalue sum") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  for (int trial = 0; trial < 25; ++trial) {
    const int d = 2 + trial % 5;
    MatC m(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) m(i, j) = {dist(rng), dist(rng)};
    std::complex<double> sum = 0.0;
    for (const auto& v : eig(m).values) sum += v;
    CHECK(std::abs(sum - m.trace()) <= 1e-10 * std::max(1.0, std::abs(m.trace())));
  }
}

TEST_CASE("eig: recovers spectrum of Q Lambda Q^-1") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 4;
    VecR lambda(d);
    for (int i = 0; i < d; ++i) lambda[i] = -3.0 + 1.5 * i + 0.3 * dist(rng);
    MatR q;
    do {
      q = MatR::Identity(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) q(i, j) += 0.4 * dist(rng);
    } while (std::abs(q.determinant()) < 0.2);
    const MatR m = q * lambda.asDiagonal() * q.inverse();
    const Spectrum s = eig(m);
    std::sort(lambda.data(), lambda.data() + d);
    for (int i = 0; i < d; ++i)
      CHECK(std::abs(s.values[static_cast<size_t>(i)] - lambda[i]) <=
            1e-9 * std::max(1.0, std::abs(lambda[i])));
  }
}

TEST_CASE("commutator: identity commutes with everything") {
  MatR b(3, 3);
  b << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  CHECK(commutator(MatR::Identity(3, 3), b).norm() == 0.0);
}

TEST_CASE("commutator: antisymmetry is exact") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-4.0, 4.0);
  for (int trial = 0; trial < 20; ++trial) {
    MatR a(3, 3), b(3, 3);
    for (int i = 0; i < 9; ++i) {
      a(i / 3, i % 3) = dist(rng);
      b(i / 3, i % 3) = dist(rng);
    }
    CHECK((commutator(a, b) + commutator(b, a)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("commutator: noncommuting splitting spectrum at eps=0.1, a=2") {
  const FluxSplitting sp = prototype_noncommuting_splitting(2.0);
  const double eps = 0.1;
  const MatR c = commutator(sp.build_tilde(eps), sp.build_hat(eps));
  const Spectrum s = eig(c);
  const double expected = 2.0 * (1.0 - eps - eps * eps) / (eps * eps);  // 178
  CHECK(s.values[0].real() == doctest::Approx(-expected));
  CHECK(std::abs(s.values[1]) < 1e-9 * expected);
  CHECK(s.values[2].real() == doctest::Approx(expected));
}

TEST_CASE("commutator: characteristic prototype splitting commutes") {
  for (double a : {0.5, 2.0}) {
    const FluxSplitting sp = prototype_characteristic_splitting(a);
    for (double eps : {1.0, 0.3, 1e-3}) {
      const MatR hat = sp.build_hat(eps), tilde = sp.build_tilde(eps);
      CHECK(commutator(hat, tilde).cwiseAbs().maxCoeff() <=
            1e-10 * hat.norm() * tilde.norm());
    }
  }
}

TEST_CASE("commutator: dimension mismatch throws") {
  CHECK_THROWS_AS(commutator(MatR::Identity(2, 2), MatR::Identity(3, 3)),
                  std::invalid_argument);
}

TEST_CASE("solve_linear: identity and diagonal") {
  VecC v(2);
  v << std::complex<double>(1, 2), std::complex<double>(-3, 0.5);
  CHECK((solve_linear(MatC::Identity(2, 2), v) - v).norm() < 1e-14);

  MatC d = MatC::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  VecC rhs(2);
  rhs << 2.0, 8.0;
  const VecC x = solve_linear(d, rhs);
  CHECK(std::abs(x[0] - 1.0) < 1e-14);
  CHECK(std::abs(x[1] - 2.0) < 1e-14);
}

TEST_CASE("solve_linear: residual bound holds on random systems") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = 2 + trial % 6;
    MatC m(d, d);
    VecC rhs(d);
    for (int i = 0; i < d; ++i) {
      rhs[i] = {dist(rng), dist(rng)};
      for (int j = 0; j < d; ++j) m(i, j) = {dist(rng), dist(rng)};
    }
    m += 2.0 * MatC::Identity(d, d);
    const VecC x = solve_linear(m, rhs);
    CHECK((m * x - rhs).norm() <= 1e-12 * (m.norm() * x.norm() + rhs.norm()));
  }
}

TEST_CASE("solve_linear: Hilbert block cross-checked by residual") {
  MatC m(2, 2);
  m << 1.0, 0.5, 0.5, 1.0 / 3.0;
  VecC rhs(2);
  rhs << 1.0, 0.0;
  const VecC x = solve_linear(m, rhs);
  CHECK((m * x - rhs).norm() <= 1e-12 * (m.norm() * x.norm() + rhs.norm()));
}

TEST_CASE("solve_linear: singular matrix throws with diagnostics") {
  MatC m = MatC::Zero(2, 2);
  m(0, 0) = 1.0;
  VecC rhs(2);
  rhs << 0.0, 1.0;
  CHECK_THROWS_AS(solve_linear(m, rhs), NumericalError);
}

TEST_CASE("real_eigendecomposition: sorted values, normalized columns") {
  const MatR m = prototype_system(2.0).build(0.5);
  const RealEigen ed = real_eigendecomposition(m);
  CHECK(ed.values[0] < ed.values[1]);
  CHECK(ed.values[1] < ed.values[2]);
  for (int c = 0; c < 3; ++c) {
    CHECK(ed.vectors.col(c).norm() == doctest::Approx(1.0));
    for (int r = 0; r < 3; ++r) {
      if (std::abs(ed.vectors(r, c)) > 1e-12) {
        CHECK(ed.vectors(r, c) > 0.0);
        break;
      }
    }
  }
  const MatR rebuilt =
      ed.vectors * ed.values.asDiagonal() * ed.vectors.inverse();
  CHECK((rebuilt - m).norm() <= 1e-9 * m.norm());
}

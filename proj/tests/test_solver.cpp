#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

#include "rcc/error.hpp"
#include "rcc/evaluation.hpp"
#include "rcc/linalg.hpp"
#include "rcc/solver.hpp"

using namespace rcc;

namespace {

CoAssociation blocks(const std::vector<int>& sizes) {
  int n = 0;
  for (int s : sizes) n += s;
  Matrix m = Matrix::Zero(n, n);
  int at = 0;
  for (int s : sizes) {
    m.block(at, at, s, s).setOnes();
    at += s;
  }
  return CoAssociation(m);
}

LabelVector block_truth(const std::vector<int>& sizes) {
  std::vector<int> l;
  for (std::size_t b = 0; b < sizes.size(); ++b) l.insert(l.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
  return LabelVector(l, static_cast<int>(sizes.size()));
}

Matrix random_symmetric(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Matrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = d(rng);
  return 0.5 * (a + a.transpose());
}

Matrix random_orthonormal(std::mt19937_64& rng, int n, int k) {
  std::normal_distribution<double> d;
  Matrix a(n, k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < k; ++j) a(i, j) = d(rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  return qr.householderQ() * Matrix::Identity(n, k);
}

CoAssociation random_coassociation(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) m(i, j) = m(j, i) = d(rng);
  }
  return CoAssociation(m);
}

AdmmState random_state(std::mt19937_64& rng, int n, int k) {
  AdmmState s;
  s.H = random_orthonormal(rng, n, k);
  std::uniform_real_distribution<double> d(0.0, 2.0);
  s.D = Vector(k);
  for (int j = 0; j < k; ++j) s.D(j) = d(rng);
  s.Omega = random_symmetric(rng, n);
  s.E = Matrix::Zero(n, n);
  s.mu = 0.5 + d(rng);
  return s;
}

}  // namespace

TEST_CASE("config validation") {
  RccConfig c;
  c.rho = 1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.mu0 = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.mu_max = 1e-3;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  c.tol_primal = 0.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = {};
  CHECK(c.tolerance_for(50) == doctest::Approx(5e-5));
}

TEST_CASE("E-update examples") {
  AdmmState s;
  s.H = Matrix::Identity(3, 1);
  s.D = Vector::Zero(1);
  s.Omega = Matrix::Zero(3, 3);
  s.mu = 1.0;
  CHECK(update_E(s, CoAssociation(Matrix::Identity(3, 3))) == Matrix::Zero(3, 3));

  std::mt19937_64 rng(4);
  const auto m = random_coassociation(rng, 4);
  auto big = random_state(rng, 4, 2);
  big.mu = 1e12;
  const Matrix target = m.values() - big.low_rank() - big.Omega / big.mu;
  CHECK((update_E(big, m) - target).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("E-update minimizes the augmented Lagrangian entrywise") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 5; ++t) {
    const auto m = random_coassociation(rng, 4);
    const auto s = random_state(rng, 4, 2);
    const Matrix e = update_E(s, m);
    const Matrix c = m.values() - s.low_rank();
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const auto f = [&](double x) {
          return std::abs(x) + s.Omega(i, j) * (x - c(i, j)) + 0.5 * s.mu * (x - c(i, j)) * (x - c(i, j));
        };
        double best = 0.0, best_val = 1e300;
        for (int g = 0; g <= 400000; ++g) {
          const double x = -4.0 + 8.0 * g / 400000.0;
          if (f(x) < best_val) {
            best_val = f(x);
            best = x;
          }
        }
        CHECK(std::abs(e(i, j) - best) < 1e-4);
        CHECK(f(e(i, j)) <= f(e(i, j) + 1e-3));
        CHECK(f(e(i, j)) <= f(e(i, j) - 1e-3));
      }
    }
  }
}

TEST_CASE("HD-update examples") {
  AdmmState s;
  s.E = Matrix::Zero(3, 3);
  s.Omega = Matrix::Zero(3, 3);
  s.mu = 1.0;
  s.H = Matrix::Zero(3, 2);
  Matrix b = Matrix::Zero(3, 3);
  b.diagonal() << 1.0, 0.5, 0.25;
  const auto f = update_HD(s, CoAssociation(b));
  CHECK((f.H - Matrix::Identity(3, 2)).norm() < 1e-12);
  CHECK(f.D(0) == doctest::Approx(1.0));
  CHECK(f.D(1) == doctest::Approx(0.5));

  s.E = Matrix::Zero(4, 4);
  s.Omega = Matrix::Zero(4, 4);
  s.H = Matrix::Zero(4, 1);
  const auto ones = update_HD(s, CoAssociation(Matrix::Ones(4, 4)));
  CHECK(ones.D(0) == doctest::Approx(4.0));
  CHECK((ones.H.col(0) - Vector::Constant(4, 0.5)).norm() < 1e-12);
}

TEST_CASE("HD-update beats random feasible factors") {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ud(0.0, 3.0);
  for (int t = 0; t < 5; ++t) {
    const int n = 6, k = 3;
    Matrix g = random_symmetric(rng, n);
    const Matrix psd = g * g.transpose() / n;
    Matrix scaled = psd / psd.maxCoeff();
    scaled.diagonal().setOnes();
    const CoAssociation m(scaled.cwiseMax(0.0).cwiseMin(1.0));
    AdmmState s;
    s.E = Matrix::Zero(n, n);
    s.Omega = Matrix::Zero(n, n);
    s.mu = 1.0;
    s.H = Matrix::Zero(n, k);
    const auto f = update_HD(s, m);
    CHECK((f.H.transpose() * f.H - Matrix::Identity(k, k)).norm() < 1e-8);
    CHECK(f.D.minCoeff() >= 0.0);
    const double best = (m.values() - f.H * f.D.asDiagonal() * f.H.transpose()).norm();
    for (int r = 0; r < 500; ++r) {
      const Matrix h = random_orthonormal(rng, n, k);
      Vector d(k);
      for (int j = 0; j < k; ++j) d(j) = ud(rng);
      CHECK(best <= (m.values() - h * d.asDiagonal() * h.transpose()).norm() + 1e-12);
    }
  }
}

TEST_CASE("J5 examples") {
  const auto m = blocks({2, 2});
  const Matrix h = (Matrix(4, 2) << 1, 0, 1, 0, 0, 1, 0, 1).finished() / std::sqrt(2.0);
  CHECK(objective_j5(m, h, Vector::Constant(2, 2.0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(objective_j5(m, h, Vector::Zero(2)) == doctest::Approx(8.0));
  std::mt19937_64 rng(8);
  const auto r = random_coassociation(rng, 5);
  const Matrix q = random_orthonormal(rng, 5, 2);
  const Vector d = Vector::LinSpaced(2, 1.0, 0.3);
  CHECK(objective_j5(r, q, d) == doctest::Approx(norms(r.values() - q * d.asDiagonal() * q.transpose()).l1));
}

TEST_CASE("discretize examples") {
  Matrix h = Matrix::Zero(6, 3);
  for (int i = 0; i < 6; ++i) h(i, i % 3) = 1.0;
  const auto l = discretize(h, Vector::Ones(3), 3, 1);
  for (int i = 0; i < 3; ++i) CHECK(l[static_cast<std::size_t>(i)] == l[static_cast<std::size_t>(i + 3)]);
  CHECK(l[0] != l[1]);
  CHECK(l[1] != l[2]);
  const Matrix same = Matrix::Constant(5, 1, 0.4);
  const auto one = discretize(same, Vector::Ones(1), 1, 0);
  for (int x : one.labels()) CHECK(x == 0);
}

TEST_CASE("solver recovers block structure") {
  for (const auto& sizes : {std::vector<int>{10, 14}, std::vector<int>{8, 12, 9}}) {
    const auto m = blocks(sizes);
    RccConfig cfg;
    cfg.k = static_cast<int>(sizes.size());
    const auto r = solve(m, cfg);
    CHECK(r.converged);
    CHECK(r.state.primal_residual <= cfg.tolerance_for(m.n()));
    CHECK(accuracy(block_truth(sizes), r.labels) == 1.0);
    CHECK(r.objective_history.size() == r.trace.size());
    CHECK(static_cast<int>(r.objective_history.size()) == r.state.iter);
  }
}

TEST_CASE("identity consensus is represented exactly") {
  const CoAssociation m(Matrix::Identity(6, 6));
  RccConfig cfg;
  cfg.k = 6;
  const auto r = solve(m, cfg);
  CHECK(r.converged);
  CHECK(r.state.E.cwiseAbs().maxCoeff() < 1e-6);
  CHECK((r.state.low_rank() - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("iterate invariants and penalty schedule") {
  std::mt19937_64 rng(9);
  const auto m = random_coassociation(rng, 20);
  RccConfig cfg;
  cfg.k = 3;
  cfg.max_iter = 120;
  double prev_mu = cfg.mu0;
  int calls = 0;
  const auto r = solve(m, cfg, [&](const AdmmState& s) {
    ++calls;
    CHECK((s.H.transpose() * s.H - Matrix::Identity(3, 3)).norm() < 1e-6);
    CHECK(s.D.minCoeff() >= 0.0);
    CHECK(s.primal_residual >= 0.0);
    CHECK(s.mu == doctest::Approx(std::min(cfg.rho * prev_mu, cfg.mu_max)));
    CHECK(s.mu >= prev_mu);
    CHECK(s.Omega == s.Omega.transpose());
    prev_mu = s.mu;
  });
  CHECK(calls == static_cast<int>(r.trace.size()));
  if (!r.converged) {
    double best = 1e300;
    for (const auto& rec : r.trace) best = std::min(best, rec.primal_residual);
    CHECK(r.state.primal_residual == best);
  }
}

TEST_CASE("non-convergence is reported, not thrown") {
  std::mt19937_64 rng(10);
  const auto m = random_coassociation(rng, 12);
  RccConfig cfg;
  cfg.k = 2;
  cfg.max_iter = 3;
  const auto r = solve(m, cfg);
  CHECK_FALSE(r.converged);
  CHECK(r.trace.size() == 3);
  CHECK(r.labels.size() == 12);
}

TEST_CASE("runtime grows at most cubically") {
  std::mt19937_64 rng(11);
  RccConfig cfg;
  cfg.k = 3;
  cfg.max_iter = 5;
  cfg.tol_primal = 1e-300;
  std::vector<double> seconds;
  for (int n : {100, 200, 400}) {
    const auto m = random_coassociation(rng, n);
    const auto start = std::chrono::steady_clock::now();
    solve(m, cfg);
    seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  // Doubling n may cost at most 8x, with slack for timer noise on small inputs.
  CHECK(seconds[2] <= 8.0 * 8.0 * seconds[0] * 1.5 + 0.05);
  CHECK(seconds[2] <= 8.0 * seconds[1] * 1.5 + 0.05);
}

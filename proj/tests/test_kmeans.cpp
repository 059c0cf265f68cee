#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "rcc/ensemble.hpp"
#include "rcc/error.hpp"
#include "rcc/evaluation.hpp"
#include "rcc/random.hpp"
#include "rcc/synthetic.hpp"

using namespace rcc;

namespace {

DataMatrix column(std::initializer_list<double> xs) {
  DataMatrix d;
  d.rows.resize(static_cast<Eigen::Index>(xs.size()), 1);
  Eigen::Index i = 0;
  for (double x : xs) d.rows(i++, 0) = x;
  return d;
}

KMeansConfig config(int k, std::uint64_t seed = 0) {
  KMeansConfig c;
  c.k = k;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("config validation") {
  auto c = config(0);
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = config(2);
  c.runs = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = config(2);
  c.max_iter = 0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  c = config(2);
  c.tol = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("separated 1-D blobs") {
  const auto d = column({0.0, 0.1, 10.0, 10.1});
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto l = kmeans(d, config(2), s);
    CHECK(l[0] == l[1]);
    CHECK(l[2] == l[3]);
    CHECK(l[0] != l[2]);
  }
}

TEST_CASE("k = 1 and k = n") {
  const auto d = column({0.3, 1.0, 2.5, 7.0, 9.0});
  const auto one = kmeans(d, config(1), 4);
  for (int x : one.labels()) CHECK(x == 0);
  const auto all = kmeans(d, config(5), 4);
  CHECK(std::set<int>(all.labels().begin(), all.labels().end()).size() == 5);
  CHECK_THROWS_AS(kmeans(d, config(6), 0), InvalidInput);
}

TEST_CASE("objective is non-increasing across iterations") {
  const auto blobs = make_blobs(4, 40, 2.0, 9);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto r = kmeans_detailed(blobs.rows, config(4), s);
    for (std::size_t i = 1; i < r.objective_history.size(); ++i) {
      CHECK(r.objective_history[i] <= r.objective_history[i - 1] + 1e-9);
    }
  }
}

TEST_CASE("duplicate points do not leave clusters empty") {
  DataMatrix d;
  d.rows = Matrix::Zero(6, 2);
  d.rows.row(5) << 1.0, 1.0;
  const auto r = kmeans_detailed(d.rows, config(3), 1);
  CHECK(r.labels.size() == 6);
  for (int x : r.labels.labels()) CHECK((x >= 0 && x < 3));
}

TEST_CASE("ensemble reproducibility and structure") {
  const auto blobs = make_blobs(3, 30, 8.0, 2);
  auto cfg = config(3, 17);
  cfg.runs = 1;
  const auto single = build_ensemble(blobs, cfg);
  CHECK(single.size() == 1);
  CHECK(single[0] == kmeans(blobs, cfg, derive_seed(17, 0)));

  cfg.runs = 40;
  const auto a = build_ensemble(blobs, cfg);
  const auto b = build_ensemble(blobs, cfg);
  CHECK(a == b);
  const Matrix m = average_coassociation(a).values();
  const auto& truth = *blobs.truth;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.rows(); ++j) {
      if (truth[static_cast<std::size_t>(i)] == truth[static_cast<std::size_t>(j)]) CHECK(m(i, j) >= 0.9);
    }
  }
}

TEST_CASE("corruption") {
  const auto blobs = make_blobs(3, 10, 6.0, 1);
  auto cfg = config(3, 5);
  cfg.runs = 4;
  const auto e = build_ensemble(blobs, cfg);
  CHECK(corrupt_ensemble(e, 0.0, 1) == e);

  const auto half = corrupt_ensemble(e, 0.5, 1);
  CHECK(half.size() == 4);
  CHECK(half.n() == e.n());
  int replaced = 0;
  for (std::size_t v = 0; v < 4; ++v) replaced += !(half[v] == e[v]);
  CHECK(replaced == 2);
  CHECK(corrupt_ensemble(e, 0.5, 1) == half);
  CHECK_THROWS_AS(corrupt_ensemble(e, 1.5, 1), InvalidInput);

  // Fully random views: off-diagonal co-association near 1/K.
  cfg.runs = 200;
  const auto big = build_ensemble(blobs, cfg);
  const Matrix m = average_coassociation(corrupt_ensemble(big, 1.0, 3)).values();
  const double off = (m.sum() - m.trace()) / static_cast<double>(m.size() - m.rows());
  CHECK(std::abs(off - 1.0 / 3.0) <= 0.05);
}

TEST_CASE("z-scoring") {
  auto d = column({1.0, 2.0, 3.0, 4.0});
  zscore_columns(d);
  CHECK(d.rows.col(0).mean() == doctest::Approx(0.0));
  CHECK(std::sqrt(d.rows.col(0).squaredNorm() / 4.0) == doctest::Approx(1.0));
  auto constant = column({5.0, 5.0});
  zscore_columns(constant);
  CHECK(constant.rows.col(0).cwiseAbs().maxCoeff() == 0.0);
}

#include <doctest.h>

#include <random>
#include <string>
#include <vector>

#include "rcc/error.hpp"
#include "rcc/partition.hpp"

using namespace rcc;

namespace {

// Entrywise oracle, no shared code with the library.
double brute_l2(const std::vector<std::vector<int>>& views, const std::vector<int>& g) {
  double total = 0.0;
  for (const auto& v : views) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        const double a = v[i] == v[j] ? 1.0 : 0.0;
        const double b = g[i] == g[j] ? 1.0 : 0.0;
        total += (a - b) * (a - b);
      }
    }
  }
  return total / static_cast<double>(views.size());
}

std::vector<int> random_labels(std::mt19937& rng, int n, int k) {
  std::uniform_int_distribution<int> d(0, k - 1);
  std::vector<int> out(static_cast<std::size_t>(n));
  for (auto& x : out) x = d(rng);
  return out;
}

}  // namespace

TEST_CASE("label vector validation") {
  CHECK_THROWS_AS(LabelVector(std::vector<int>{}, 2), InvalidInput);
  CHECK_THROWS_AS(LabelVector({0, 2}, 2), InvalidInput);
  CHECK_THROWS_AS(LabelVector({0, -1}, 2), InvalidInput);
  CHECK_THROWS_AS(LabelVector({0, 0}, 0), InvalidInput);
  const LabelVector l({0, 2, 1});
  CHECK(l.k() == 3);
  CHECK(l.size() == 3);
}

TEST_CASE("dense labels follow first appearance") {
  const std::vector<std::string> tokens{"b", "a", "b", "c"};
  const auto l = dense_labels(tokens);
  CHECK(l.labels() == std::vector<int>{0, 1, 0, 2});
  CHECK(l.k() == 3);
}

TEST_CASE("connectivity matrix examples") {
  CHECK(connectivity_matrix(LabelVector({0, 0, 0})).values() == Matrix::Ones(3, 3));
  CHECK(connectivity_matrix(LabelVector({0, 1, 2})).values() == Matrix::Identity(3, 3));
  Matrix expected(3, 3);
  expected << 1, 1, 0, 1, 1, 0, 0, 0, 1;
  CHECK(connectivity_matrix(LabelVector({0, 0, 1})).values() == expected);
}

TEST_CASE("connectivity is invariant under relabeling") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto a = random_labels(rng, 9, 3);
    std::vector<int> perm{2, 0, 1};
    std::vector<int> b;
    for (int x : a) b.push_back(perm[static_cast<std::size_t>(x)]);
    CHECK(connectivity_matrix(LabelVector(a, 3)).values() == connectivity_matrix(LabelVector(b, 3)).values());
  }
}

TEST_CASE("co-association validation") {
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  CHECK_THROWS_AS(CoAssociation{asym}, InvalidInput);
  Matrix out_of_range = Matrix::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(CoAssociation{out_of_range}, InvalidInput);
  CHECK_THROWS_AS(CoAssociation{Matrix(2, 3)}, InvalidInput);
  CHECK_THROWS_AS(Ensemble({LabelVector({0, 1}), LabelVector({0, 1, 1})}), InvalidInput);
  CHECK_THROWS_AS(Ensemble(std::vector<LabelVector>{}), InvalidInput);
}

TEST_CASE("average co-association examples") {
  const Ensemble e({LabelVector({0, 0, 1}), LabelVector({0, 1, 1})});
  Matrix expected(3, 3);
  expected << 1, 0.5, 0, 0.5, 1, 0.5, 0, 0.5, 1;
  CHECK(average_coassociation(e).values() == expected);

  const LabelVector v({0, 1, 1, 0});
  CHECK(average_coassociation(Ensemble({v, v, v})).values() == connectivity_matrix(v).values());

  CHECK(average_coassociation(Ensemble({LabelVector({0, 1}), LabelVector({1, 0})})).values() == Matrix::Identity(2, 2));
}

TEST_CASE("average co-association is a mean with denominator V") {
  std::mt19937 rng(7);
  for (int t = 0; t < 30; ++t) {
    const int views = 1 + t % 5;
    std::vector<LabelVector> ls;
    for (int v = 0; v < views; ++v) ls.emplace_back(random_labels(rng, 7, 3), 3);
    const Matrix m = average_coassociation(Ensemble(ls)).values();
    for (Eigen::Index i = 0; i < 7; ++i) {
      CHECK(m(i, i) == 1.0);
      for (Eigen::Index j = 0; j < 7; ++j) {
        int count = 0;
        for (const auto& l : ls) count += l[static_cast<std::size_t>(i)] == l[static_cast<std::size_t>(j)];
        CHECK(m(i, j) == static_cast<double>(count) / views);
        CHECK(m(i, j) == m(j, i));
      }
    }
  }
}

TEST_CASE("objective examples") {
  const Ensemble e({LabelVector({0, 0, 1}), LabelVector({0, 1, 1})});
  const LabelVector g({0, 0, 1});
  CHECK(objective_l2(e, g) == doctest::Approx(2.0));
  CHECK(objective_l1(e, g) == doctest::Approx(2.0));
  CHECK(objective_j3(average_coassociation(e), g) == doctest::Approx(2.0));
  CHECK(objective_l2(Ensemble({g}), g) == 0.0);
  CHECK(objective_l1(Ensemble({g}), g) == 0.0);
  CHECK(objective_j3(CoAssociation(connectivity_matrix(g).values()), g) == 0.0);
}

TEST_CASE("l1 and l2 objectives agree with each other and with an entrywise oracle") {
  std::mt19937 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int n = 2 + t % 6;
    std::vector<std::vector<int>> raw;
    std::vector<LabelVector> ls;
    for (int v = 0; v < 1 + t % 4; ++v) {
      raw.push_back(random_labels(rng, n, 3));
      ls.emplace_back(raw.back(), 3);
    }
    const auto g = random_labels(rng, n, 3);
    const Ensemble e(ls);
    const double l1 = objective_l1(e, LabelVector(g, 3));
    CHECK(l1 == objective_l2(e, LabelVector(g, 3)));
    CHECK(l1 == doctest::Approx(brute_l2(raw, g)).epsilon(1e-12));
  }
}

TEST_CASE("triangle bound holds in both directions") {
  std::mt19937 rng(5);
  for (int t = 0; t < 300; ++t) {
    const int n = 2 + t % 5;
    std::vector<LabelVector> ls;
    for (int v = 0; v < 1 + t % 4; ++v) ls.emplace_back(random_labels(rng, n, 3), 3);
    const Ensemble e(ls);
    const auto m = average_coassociation(e);
    const double c = bound_constant(e, m);
    const LabelVector g(random_labels(rng, n, 3), 3);
    const double j2 = objective_l1(e, g);
    const double j3 = objective_j3(m, g);
    CHECK(j2 <= c + j3 + 1e-12);
    CHECK(j3 <= j2 + c + 1e-12);
  }
}

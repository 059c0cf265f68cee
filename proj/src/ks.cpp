#include "rcc/ks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "rcc/error.hpp"
#include "rcc/linalg.hpp"
#include "rcc/parallel.hpp"
#include "rcc/solver.hpp"

namespace rcc {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidInput("empirical CDF needs at least one observation");
  for (double v : samples_) {
    if (!std::isfinite(v)) throw InvalidInput("empirical CDF observations must be finite");
  }
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto count = std::upper_bound(samples_.begin(), samples_.end(), x) - samples_.begin();
  return static_cast<double>(count) / static_cast<double>(samples_.size());
}

double cdf_eval(const EmpiricalCdf& cdf, double x) { return cdf(x); }

double ks_sup_distance(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  const auto a = f.samples();
  const auto b = g.samples();
  const double m = static_cast<double>(a.size());
  const double n = static_cast<double>(b.size());
  // Walk the merged breakpoints. Both CDFs are 0 left of the first one, so checking the
  // post-jump gap at every breakpoint also covers every left limit.
  std::size_t i = 0;
  std::size_t j = 0;
  double sup = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    sup = std::max(sup, std::abs(static_cast<double>(i) / m - static_cast<double>(j) / n));
  }
  // Past the end of one sample its CDF is 1; the other's largest gap is at its current step.
  if (i < a.size()) sup = std::max(sup, 1.0 - static_cast<double>(i) / m);
  if (j < b.size()) sup = std::max(sup, 1.0 - static_cast<double>(j) / n);
  return sup;
}

double ks_statistic(const EmpiricalCdf& f, const EmpiricalCdf& g) {
  const double m = static_cast<double>(f.m());
  const double n = static_cast<double>(g.m());
  return std::sqrt(m * n / (m + n)) * ks_sup_distance(f, g);
}

double ks_limit_cdf(double z) {
  if (!(z > 0.0)) return 0.0;
  if (z < 1.0) {
    // Jacobi theta form of the same function; the alternating series cancels badly here.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double sum = 0.0;
    for (int i = 1;; ++i) {
      const double odd = 2.0 * i - 1.0;
      const double term = std::exp(-odd * odd * pi2 / (8.0 * z * z));
      sum += term;
      if (term < 1e-300 || term < 1e-17 * sum) break;
    }
    return std::clamp(std::sqrt(2.0 * std::numbers::pi) / z * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int i = 1;; ++i) {
    const double term = std::exp(-2.0 * i * i * z * z);
    if (term < 1e-12) break;
    sum += (i % 2 == 1) ? term : -term;
  }
  return std::clamp(1.0 - 2.0 * sum, 0.0, 1.0);
}

double critical_value(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie strictly between 0 and 1");
  const double target = 1.0 - alpha;
  double lo = 0.0;
  double hi = 10.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (ks_limit_cdf(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

KsDecision ks_decide(const EmpiricalCdf& f, const EmpiricalCdf& g, double alpha) {
  KsDecision d;
  d.alpha = alpha;
  d.distance = ks_statistic(f, g);
  d.critical = critical_value(alpha);
  d.similar = d.distance <= d.critical;
  return d;
}

SimilarityMatrix pairwise_similarity(std::span<const EmpiricalCdf> cdfs, double alpha) {
  const auto n = static_cast<Eigen::Index>(cdfs.size());
  if (n < 2) throw InvalidInput("pairwise similarity needs at least two entities");
  const double critical = critical_value(alpha);
  Matrix s = Matrix::Identity(n, n);
  detail::parallel_for(static_cast<std::size_t>(n), [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const double v = ks_statistic(cdfs[row], cdfs[static_cast<std::size_t>(j)]) <= critical ? 1.0 : 0.0;
      s(i, j) = v;
      s(j, i) = v;
    }
  });
  return SimilarityMatrix(std::move(s));
}

int connected_components(const SimilarityMatrix& s) {
  const Eigen::Index n = s.n();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  };
  int components = static_cast<int>(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (s.values()(i, j) <= 0.0) continue;
      const auto a = find(i);
      const auto b = find(j);
      if (a != b) {
        parent[static_cast<std::size_t>(a)] = b;
        --components;
      }
    }
  }
  return components;
}

LabelVector similarity_clusters(const SimilarityMatrix& s, int k, std::uint64_t seed) {
  const Eigen::Index n = s.n();
  if (k < 1 || k > n) throw InvalidInput("similarity_clusters: need 1 <= k <= n");

  std::vector<Eigen::Index> connected;
  std::vector<Eigen::Index> isolated;
  for (Eigen::Index i = 0; i < n; ++i) (s.degree()(i) > 0.0 ? connected : isolated).push_back(i);

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  const int split_off = std::min<int>(static_cast<int>(isolated.size()), connected.empty() ? k : k - 1);
  const int remaining_k = k - split_off;
  for (std::size_t r = 0; r < isolated.size(); ++r) {
    labels[static_cast<std::size_t>(isolated[r])] = std::min(k - 1, remaining_k + static_cast<int>(r));
  }
  if (connected.empty()) return LabelVector(std::move(labels), k);

  const auto m = static_cast<Eigen::Index>(connected.size());
  Matrix sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index b = 0; b < m; ++b) sub(a, b) = s.values()(connected[a], connected[b]);
  }
  const int embed_k = std::min<int>(remaining_k, static_cast<int>(m));
  const auto eig = top_k_eigs(normalize_similarity(SimilarityMatrix(std::move(sub))), embed_k);
  const LabelVector inner = discretize(eig.vectors, Vector::Ones(embed_k), embed_k, seed);
  for (Eigen::Index a = 0; a < m; ++a) labels[static_cast<std::size_t>(connected[a])] = inner[a];
  return LabelVector(std::move(labels), k);
}

}  // namespace rcc

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rcc/ensemble.hpp"
#include "rcc/error.hpp"
#include "rcc/parallel.hpp"
#include "rcc/random.hpp"

namespace rcc {

void KMeansConfig::validate() const {
  if (k < 1) throw ConfigError("k-means: k must be >= 1");
  if (runs < 1) throw ConfigError("k-means: runs must be >= 1");
  if (max_iter < 1) throw ConfigError("k-means: max_iter must be >= 1");
  if (!(tol >= 0.0)) throw ConfigError("k-means: tol must be >= 0");
}

void zscore_columns(DataMatrix& data) {
  const double n = static_cast<double>(data.n());
  for (Eigen::Index c = 0; c < data.p(); ++c) {
    auto col = data.rows.col(c);
    const double mean = col.mean();
    col.array() -= mean;
    const double sd = std::sqrt(col.squaredNorm() / n);
    if (sd > 0.0) col /= sd;
  }
}

namespace {

std::vector<Eigen::Index> plus_plus_seeds(const Matrix& points, int k, Rng& rng) {
  const Eigen::Index n = points.rows();
  std::vector<Eigen::Index> chosen;
  chosen.reserve(static_cast<std::size_t>(k));
  std::vector<bool> taken(static_cast<std::size_t>(n), false);
  auto pick = [&](Eigen::Index i) {
    chosen.push_back(i);
    taken[static_cast<std::size_t>(i)] = true;
  };

  pick(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n)));
  std::vector<double> d2(static_cast<std::size_t>(n), std::numeric_limits<double>::infinity());
  while (static_cast<int>(chosen.size()) < k) {
    const auto& last = points.row(chosen.back());
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& d = d2[static_cast<std::size_t>(i)];
      d = std::min(d, (points.row(i) - last).squaredNorm());
      total += d;
    }
    if (total <= 0.0) {
      // Fewer distinct points than k: fall back to the first unused index.
      Eigen::Index i = 0;
      while (taken[static_cast<std::size_t>(i)]) ++i;
      pick(i);
      continue;
    }
    const double target = uniform01(rng) * total;
    double acc = 0.0;
    Eigen::Index sel = n - 1;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += d2[static_cast<std::size_t>(i)];
      if (acc > target && d2[static_cast<std::size_t>(i)] > 0.0) {
        sel = i;
        break;
      }
    }
    while (d2[static_cast<std::size_t>(sel)] <= 0.0 && sel > 0) --sel;
    pick(sel);
  }
  return chosen;
}

}  // namespace

KMeansResult kmeans_detailed(const Matrix& points, const KMeansConfig& cfg, std::uint64_t run_seed) {
  cfg.validate();
  const Eigen::Index n = points.rows();
  const int k = cfg.k;
  if (n < k) {
    throw InvalidInput("k-means needs n >= k (n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }

  Rng rng(run_seed);
  Matrix centers(k, points.cols());
  {
    const auto seeds = plus_plus_seeds(points, k, rng);
    for (int c = 0; c < k; ++c) centers.row(c) = points.row(seeds[static_cast<std::size_t>(c)]);
  }

  std::vector<int> labels(static_cast<std::size_t>(n), 0);
  std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
  KMeansResult result;

  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    for (Eigen::Index i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (points.row(i) - centers.row(0)).squaredNorm();
      for (int c = 1; c < k; ++c) {
        const double d = (points.row(i) - centers.row(c)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      labels[static_cast<std::size_t>(i)] = best;
    }

    Matrix updated = Matrix::Zero(k, points.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      const int c = labels[static_cast<std::size_t>(i)];
      updated.row(c) += points.row(i);
      ++counts[static_cast<std::size_t>(c)];
    }
    double objective = 0.0;
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) updated.row(c) /= counts[static_cast<std::size_t>(c)];
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      auto& d = dist[static_cast<std::size_t>(i)];
      d = (points.row(i) - updated.row(labels[static_cast<std::size_t>(i)])).squaredNorm();
      objective += d;
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) continue;
      const auto far = std::max_element(dist.begin(), dist.end()) - dist.begin();
      updated.row(c) = points.row(far);
      dist[static_cast<std::size_t>(far)] = -1.0;
    }

    double shift = 0.0;
    for (int c = 0; c < k; ++c) shift = std::max(shift, (updated.row(c) - centers.row(c)).norm());
    centers = std::move(updated);
    result.objective_history.push_back(objective);
    result.iterations = iter;
    if (shift <= cfg.tol) {
      result.converged = true;
      break;
    }
  }

  result.labels = LabelVector(std::move(labels), k);
  result.centers = std::move(centers);
  return result;
}

LabelVector kmeans(const DataMatrix& data, const KMeansConfig& cfg, std::uint64_t run_seed) {
  return kmeans_detailed(data.rows, cfg, run_seed).labels;
}

Ensemble build_ensemble(const DataMatrix& data, const KMeansConfig& cfg) {
  cfg.validate();
  std::vector<LabelVector> views(static_cast<std::size_t>(cfg.runs));
  detail::parallel_for(views.size(), [&](std::size_t r) {
    views[r] = kmeans(data, cfg, derive_seed(cfg.seed, r));
  });
  return Ensemble(std::move(views));
}

Ensemble corrupt_ensemble(const Ensemble& e, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw InvalidInput("corruption fraction must lie in [0, 1]");
  const std::size_t total = e.size();
  // The epsilon keeps e.g. 0.2 * 40 from rounding up to 9.
  const auto replaced = std::min<std::size_t>(
      total, static_cast<std::size_t>(std::max(0.0, std::ceil(fraction * static_cast<double>(total) - 1e-9))));

  Rng rng(seed);
  std::vector<std::size_t> order(total);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < replaced; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng() % (total - i));
    std::swap(order[i], order[j]);
  }

  std::vector<LabelVector> views = e.views();
  for (std::size_t i = 0; i < replaced; ++i) {
    auto& view = views[order[i]];
    std::vector<int> noise(view.size());
    for (auto& l : noise) l = static_cast<int>(rng() % static_cast<std::uint64_t>(view.k()));
    view = LabelVector(std::move(noise), view.k());
  }
  return Ensemble(std::move(views));
}

}  // namespace rcc

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcc/partition.hpp"

namespace rcc {

struct KMeansConfig {
  int k = 2;
  int runs = 40;
  int max_iter = 300;
  std::uint64_t seed = 0;
  /// Convergence threshold on the maximum center displacement.
  double tol = 1e-6;

  void validate() const;
};

/// n feature rows of dimension p, with optional ground truth.
struct DataMatrix {
  Matrix rows;
  std::optional<LabelVector> truth;
  std::vector<std::string> feature_names;

  Eigen::Index n() const noexcept { return rows.rows(); }
  Eigen::Index p() const noexcept { return rows.cols(); }
};

/// Per-column z-scoring; constant columns are centered only.
void zscore_columns(DataMatrix& data);

struct KMeansResult {
  LabelVector labels;
  Matrix centers;
  /// Sum of squared distances to assigned centers, one entry per Lloyd iteration.
  std::vector<double> objective_history;
  int iterations = 0;
  bool converged = false;
};

/// Lloyd's algorithm with k-means++ seeding on the rows of `points`.
///
/// Assignment ties go to the lowest cluster index. A cluster that empties out has its
/// center moved onto the point farthest from its own center, so k stays fixed.
/// Deterministic in (points, cfg.k, cfg.max_iter, cfg.tol, run_seed).
KMeansResult kmeans_detailed(const Matrix& points, const KMeansConfig& cfg, std::uint64_t run_seed);

LabelVector kmeans(const DataMatrix& data, const KMeansConfig& cfg, std::uint64_t run_seed);

/// cfg.runs independent k-means partitions; run r uses derive_seed(cfg.seed, r).
Ensemble build_ensemble(const DataMatrix& data, const KMeansConfig& cfg);

/// Replaces ceil(fraction * V) randomly chosen views by uniform random labelings.
Ensemble corrupt_ensemble(const Ensemble& e, double fraction, std::uint64_t seed);

}  // namespace rcc

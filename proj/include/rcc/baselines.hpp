#pragma once

#include <cstdint>

#include "rcc/partition.hpp"

namespace rcc {

/// Symmetric non-negative similarity S with its row sums.
class SimilarityMatrix {
 public:
  SimilarityMatrix() = default;
  explicit SimilarityMatrix(Matrix values);

  Eigen::Index n() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  const Vector& degree() const noexcept { return degree_; }

 private:
  Matrix values_;
  Vector degree_;
};

/// D^{-1/2} S D^{-1/2}. Throws InvalidInput naming the first zero-degree row.
Matrix normalize_similarity(const SimilarityMatrix& s);

/// Spectral consensus under the squared loss: top-k eigenvectors of M (or of its
/// degree-normalized form when `normalize` is set), rounded by k-means on their rows.
LabelVector l2_consensus(const CoAssociation& m_avg, int k, std::uint64_t seed, bool normalize = false);

/// k-means on the rows of M treated as n-dimensional feature vectors.
LabelVector kc_baseline(const CoAssociation& m_avg, int k, std::uint64_t seed);

struct SpectralObjectives {
  double frob_obj = 0.0;   ///< ||S_hat - H H^T||_F^2
  double trace_obj = 0.0;  ///< Tr(H^T S_hat H)
};

/// For column-orthonormal H, frob_obj + 2 trace_obj = ||S_hat||_F^2 + k, so minimizing the
/// squared reconstruction error is the same problem as maximizing the trace.
SpectralObjectives spectral_objectives(const Matrix& s_hat, const Matrix& H);

}  // namespace rcc

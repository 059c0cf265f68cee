#include "rcc/baselines.hpp"

#include <cmath>

#include "rcc/ensemble.hpp"
#include "rcc/error.hpp"
#include "rcc/linalg.hpp"
#include "rcc/solver.hpp"

namespace rcc {

SimilarityMatrix::SimilarityMatrix(Matrix values) : values_(std::move(values)) {
  if (values_.rows() == 0 || values_.rows() != values_.cols()) {
    throw InvalidInput("similarity matrix must be square and non-empty");
  }
  if ((values_.array() < 0.0).any()) throw InvalidInput("similarity entries must be non-negative");
  if (asymmetry(values_) != 0.0) throw InvalidInput("similarity matrix must be symmetric");
  degree_ = values_.rowwise().sum();
}

Matrix normalize_similarity(const SimilarityMatrix& s) {
  const Vector& d = s.degree();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (!(d(i) > 0.0)) throw InvalidInput("isolated node: row " + std::to_string(i) + " has zero degree");
  }
  const Vector inv_sqrt = d.cwiseSqrt().cwiseInverse();
  Matrix out = inv_sqrt.asDiagonal() * s.values() * inv_sqrt.asDiagonal();
  // Round-off in the two-sided product can break exact symmetry.
  return 0.5 * (out + out.transpose());
}

LabelVector l2_consensus(const CoAssociation& m_avg, int k, std::uint64_t seed, bool normalize) {
  if (k < 1 || k > m_avg.n()) throw InvalidInput("l2_consensus: need 1 <= k <= n");
  const Matrix target = normalize ? normalize_similarity(SimilarityMatrix(m_avg.values())) : m_avg.values();
  const auto eig = top_k_eigs(target, k);
  return discretize(eig.vectors, Vector::Ones(k), k, seed);
}

LabelVector kc_baseline(const CoAssociation& m_avg, int k, std::uint64_t seed) {
  if (k < 1 || k > m_avg.n()) throw InvalidInput("kc_baseline: need 1 <= k <= n");
  KMeansConfig cfg;
  cfg.k = k;
  cfg.runs = 1;
  cfg.seed = seed;
  return kmeans_detailed(m_avg.values(), cfg, seed).labels;
}

SpectralObjectives spectral_objectives(const Matrix& s_hat, const Matrix& H) {
  if (s_hat.rows() != s_hat.cols() || H.rows() != s_hat.rows()) throw InvalidInput("spectral_objectives: shape mismatch");
  return {(s_hat - H * H.transpose()).squaredNorm(), (H.transpose() * s_hat * H).trace()};
}

}  // namespace rcc

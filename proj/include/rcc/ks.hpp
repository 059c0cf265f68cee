#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rcc/baselines.hpp"
#include "rcc/partition.hpp"

namespace rcc {

/// Right-continuous empirical CDF of one entity's observations.
class EmpiricalCdf {
 public:
  /// Sorts a copy; throws InvalidInput on an empty or non-finite sample.
  explicit EmpiricalCdf(std::vector<double> samples);

  std::size_t m() const noexcept { return samples_.size(); }
  std::span<const double> samples() const noexcept { return samples_; }

  /// Fraction of observations <= x.
  double operator()(double x) const;

 private:
  std::vector<double> samples_;
};

struct KsDecision {
  double distance = 0.0;  ///< scaled statistic
  double critical = 0.0;
  bool similar = false;   ///< distance <= critical
  double alpha = 0.0;
};

double cdf_eval(const EmpiricalCdf& cdf, double x);

/// sup_x |F(x) - G(x)|, evaluated exactly at the jumps of both step functions.
double ks_sup_distance(const EmpiricalCdf& f, const EmpiricalCdf& g);

/// sqrt(m n / (m + n)) * sup_x |F(x) - G(x)|
double ks_statistic(const EmpiricalCdf& f, const EmpiricalCdf& g);

/// Limiting distribution P(D <= z) = 1 - 2 sum_{i>=1} (-1)^{i-1} exp(-2 i^2 z^2); 0 for z <= 0.
double ks_limit_cdf(double z);

/// C_alpha with ks_limit_cdf(C_alpha) = 1 - alpha, by bisection on [0, 10].
double critical_value(double alpha);

KsDecision ks_decide(const EmpiricalCdf& f, const EmpiricalCdf& g, double alpha);

/// S_ij = 1 when the scaled KS distance is within C_alpha, else 0; unit diagonal.
SimilarityMatrix pairwise_similarity(std::span<const EmpiricalCdf> cdfs, double alpha);

/// Number of connected components of the graph with an edge wherever S_ij > 0.
int connected_components(const SimilarityMatrix& s);

/// Normalized spectral clustering of a similarity graph.
///
/// Zero-degree nodes are split off first and each gets its own label at the top of the
/// label range (labels past k-1 fold into k-1); the rest are embedded with the top
/// eigenvectors of D^{-1/2} S D^{-1/2} and rounded with k-means.
LabelVector similarity_clusters(const SimilarityMatrix& s, int k, std::uint64_t seed);

}  // namespace rcc

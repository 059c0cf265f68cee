#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rcc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Hard assignment of n points to clusters 0..k-1.
class LabelVector {
 public:
  LabelVector() = default;
  /// Throws InvalidInput when empty or when a label falls outside [0, k).
  LabelVector(std::vector<int> labels, int k);
  /// Declares k as one past the largest label.
  explicit LabelVector(std::vector<int> labels);

  std::size_t size() const noexcept { return labels_.size(); }
  int k() const noexcept { return k_; }
  int operator[](std::size_t i) const { return labels_[i]; }
  const std::vector<int>& labels() const noexcept { return labels_; }

  bool operator==(const LabelVector&) const = default;

 private:
  std::vector<int> labels_;
  int k_ = 0;
};

/// Remaps arbitrary tokens to dense ids in order of first appearance.
LabelVector dense_labels(std::span<const std::string> tokens);

/// Symmetric n x n matrix with entries in [0, 1].
class CoAssociation {
 public:
  CoAssociation() = default;
  /// Validates shape, symmetry (exact) and range.
  explicit CoAssociation(Matrix values);

  Eigen::Index n() const noexcept { return values_.rows(); }
  const Matrix& values() const noexcept { return values_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return values_(i, j); }

 private:
  Matrix values_;
};

/// V base partitions over the same n points.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<LabelVector> views);

  std::size_t size() const noexcept { return views_.size(); }
  std::size_t n() const noexcept { return views_.front().size(); }
  const LabelVector& operator[](std::size_t v) const { return views_[v]; }
  const std::vector<LabelVector>& views() const noexcept { return views_; }

  bool operator==(const Ensemble&) const = default;

 private:
  std::vector<LabelVector> views_;
};

CoAssociation connectivity_matrix(const LabelVector& p);

/// Entrywise mean of the per-view connectivity matrices.
CoAssociation average_coassociation(const Ensemble& e);

/// (1/V) sum_v sum_ij (M_ij(G^v) - M_ij(g))^2
double objective_l2(const Ensemble& e, const LabelVector& g);

/// (1/V) sum_v ||M(G^v) - M(g)||_1
double objective_l1(const Ensemble& e, const LabelVector& g);

/// ||M_avg - M(g)||_1
double objective_j3(const CoAssociation& m_avg, const LabelVector& g);

/// C = (1/V) sum_v ||M(G^v) - M_avg||_1, the constant in J2 <= C + J3.
double bound_constant(const Ensemble& e, const CoAssociation& m_avg);

}  // namespace rcc

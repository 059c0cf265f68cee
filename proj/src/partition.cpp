#include "rcc/partition.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "rcc/error.hpp"

namespace rcc {

LabelVector::LabelVector(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
  if (labels_.empty()) throw InvalidInput("label vector must contain at least one point");
  if (k_ < 1) throw InvalidInput("cluster count must be >= 1");
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] < 0 || labels_[i] >= k_) {
      throw InvalidInput("label " + std::to_string(labels_[i]) + " at index " + std::to_string(i) +
                         " outside [0, " + std::to_string(k_) + ")");
    }
  }
}

LabelVector::LabelVector(std::vector<int> labels)
    : LabelVector(labels, labels.empty() ? 1 : *std::max_element(labels.begin(), labels.end()) + 1) {}

LabelVector dense_labels(std::span<const std::string> tokens) {
  std::unordered_map<std::string, int> ids;
  std::vector<int> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    auto [it, inserted] = ids.try_emplace(t, static_cast<int>(ids.size()));
    out.push_back(it->second);
  }
  return LabelVector(std::move(out), std::max<int>(1, static_cast<int>(ids.size())));
}

CoAssociation::CoAssociation(Matrix values) : values_(std::move(values)) {
  if (values_.rows() != values_.cols() || values_.rows() == 0) {
    throw InvalidInput("co-association matrix must be square and non-empty");
  }
  const Eigen::Index n = values_.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double v = values_(i, j);
      if (!(v >= 0.0 && v <= 1.0)) throw InvalidInput("co-association entries must lie in [0, 1]");
      if (v != values_(j, i)) throw InvalidInput("co-association matrix must be symmetric");
    }
  }
}

Ensemble::Ensemble(std::vector<LabelVector> views) : views_(std::move(views)) {
  if (views_.empty()) throw InvalidInput("ensemble needs at least one view");
  for (const auto& v : views_) {
    if (v.size() != views_.front().size()) {
      throw InvalidInput("all views must label the same number of points");
    }
  }
}

namespace {

Matrix raw_connectivity(const LabelVector& p) {
  const auto n = static_cast<Eigen::Index>(p.size());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = p[i] == p[j] ? 1.0 : 0.0;
  }
  return m;
}

void require_same_n(std::size_t a, std::size_t b) {
  if (a != b) throw InvalidInput("partition sizes disagree: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

CoAssociation connectivity_matrix(const LabelVector& p) { return CoAssociation(raw_connectivity(p)); }

CoAssociation average_coassociation(const Ensemble& e) {
  const auto n = static_cast<Eigen::Index>(e.n());
  const double views = static_cast<double>(e.size());
  Matrix m(n, n);
  // Count agreements first so every entry is exactly count / V.
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = 1.0;
    for (Eigen::Index j = i + 1; j < n; ++j) {
      int same = 0;
      for (const auto& v : e.views()) same += v[i] == v[j] ? 1 : 0;
      m(i, j) = m(j, i) = same / views;
    }
  }
  return CoAssociation(std::move(m));
}

double objective_l2(const Ensemble& e, const LabelVector& g) {
  require_same_n(e.n(), g.size());
  const Matrix mg = raw_connectivity(g);
  double total = 0.0;
  for (const auto& v : e.views()) total += (raw_connectivity(v) - mg).array().square().sum();
  return total / static_cast<double>(e.size());
}

double objective_l1(const Ensemble& e, const LabelVector& g) {
  require_same_n(e.n(), g.size());
  const Matrix mg = raw_connectivity(g);
  double total = 0.0;
  for (const auto& v : e.views()) total += (raw_connectivity(v) - mg).array().abs().sum();
  return total / static_cast<double>(e.size());
}

double objective_j3(const CoAssociation& m_avg, const LabelVector& g) {
  require_same_n(static_cast<std::size_t>(m_avg.n()), g.size());
  return (m_avg.values() - raw_connectivity(g)).array().abs().sum();
}

double bound_constant(const Ensemble& e, const CoAssociation& m_avg) {
  require_same_n(e.n(), static_cast<std::size_t>(m_avg.n()));
  double total = 0.0;
  for (const auto& v : e.views()) total += (raw_connectivity(v) - m_avg.values()).array().abs().sum();
  return total / static_cast<double>(e.size());
}

}  // namespace rcc

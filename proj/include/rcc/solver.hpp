#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rcc/partition.hpp"

namespace rcc {

struct RccConfig {
  int k = 2;
  double rho = 1.05;    ///< penalty growth factor, > 1
  double mu0 = 1e-2;    ///< initial penalty
  double mu_max = 1e6;  ///< penalty ceiling
  int max_iter = 300;
  /// Stop once ||E - (M - H D H^T)||_F falls to this; defaults to 1e-6 * n.
  std::optional<double> tol_primal;
  std::uint64_t seed = 0;  ///< seed for the final k-means rounding

  void validate() const;
  double tolerance_for(Eigen::Index n) const { return tol_primal.value_or(1e-6 * static_cast<double>(n)); }
};

/// One ADMM iterate.
struct AdmmState {
  Matrix E;      ///< n x n residual variable
  Matrix H;      ///< n x k, orthonormal columns
  Vector D;      ///< k non-negative diagonal entries
  Matrix Omega;  ///< n x n multiplier
  double mu = 0.0;
  int iter = 0;
  double primal_residual = 0.0;

  Matrix low_rank() const { return H * D.asDiagonal() * H.transpose(); }
};

struct LowRankFactor {
  Matrix H;
  Vector D;
};

struct IterationRecord {
  int iter = 0;
  double mu = 0.0;
  double primal_residual = 0.0;
  double j5 = 0.0;
};

struct RccResult {
  LabelVector labels;
  AdmmState state;
  std::vector<double> objective_history;  ///< J5 after each iteration
  std::vector<IterationRecord> trace;
  bool converged = false;
};

/// Warm start: H, D from the top-k eigenpairs of M (clamped at 0), E = Omega = 0, mu = mu0.
AdmmState initial_state(const CoAssociation& m_avg, const RccConfig& cfg);

/// E-step: soft-threshold A = M - H D H^T - Omega/mu at 1/mu, the exact minimizer of
/// ||E||_1 + <Omega, E - (M - H D H^T)> + mu/2 ||E - (M - H D H^T)||_F^2.
Matrix update_E(const AdmmState& state, const CoAssociation& m_avg);

/// (H, D)-step: top-k eigenpairs of B = M - E - Omega/mu, eigenvalues clamped at 0.
LowRankFactor update_HD(const AdmmState& state, const CoAssociation& m_avg);

/// ||M - H D H^T||_1
double objective_j5(const CoAssociation& m_avg, const Matrix& H, const Vector& D);

/// k-means (k-means++ seeding, fixed seed) on the rows of H D^{1/2}.
LabelVector discretize(const Matrix& H, const Vector& D, int k, std::uint64_t seed);

using IterationObserver = std::function<void(const AdmmState&)>;

/// ADMM for min ||M - H D H^T||_1 s.t. H^T H = I, D >= 0 diagonal.
///
/// Each iteration runs E, then (H, D), then mu <- min(rho mu, mu_max), then
/// Omega <- Omega + mu (E - (M - H D H^T)). Stops when the primal residual reaches the
/// tolerance. Without convergence the lowest-residual iterate is returned with
/// converged = false.
RccResult solve(const CoAssociation& m_avg, const RccConfig& cfg, const IterationObserver& observer = {});

}  // namespace rcc

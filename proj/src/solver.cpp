#include "rcc/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcc/ensemble.hpp"
#include "rcc/error.hpp"
#include "rcc/linalg.hpp"

namespace rcc {

void RccConfig::validate() const {
  if (k < 1) throw ConfigError("solver: k must be >= 1");
  if (!(rho > 1.0)) throw ConfigError("solver: rho must exceed 1");
  if (!(mu0 > 0.0)) throw ConfigError("solver: mu0 must be positive");
  if (!(mu_max >= mu0)) throw ConfigError("solver: mu_max must be >= mu0");
  if (max_iter < 1) throw ConfigError("solver: max_iter must be >= 1");
  if (tol_primal && !(*tol_primal > 0.0)) throw ConfigError("solver: tol_primal must be positive");
}

namespace {

Matrix symmetrized(const Matrix& a) { return 0.5 * (a + a.transpose()); }

LowRankFactor clamped_top_k(const Matrix& b, int k) {
  auto eig = top_k_eigs(b, k);
  return {std::move(eig.vectors), eig.values.cwiseMax(0.0)};
}

}  // namespace

AdmmState initial_state(const CoAssociation& m_avg, const RccConfig& cfg) {
  cfg.validate();
  if (cfg.k > m_avg.n()) throw InvalidInput("solver: k exceeds the number of points");
  const Eigen::Index n = m_avg.n();
  auto factor = clamped_top_k(m_avg.values(), cfg.k);
  AdmmState s;
  s.E = Matrix::Zero(n, n);
  s.H = std::move(factor.H);
  s.D = std::move(factor.D);
  s.Omega = Matrix::Zero(n, n);
  s.mu = cfg.mu0;
  s.primal_residual = (m_avg.values() - s.low_rank()).norm();
  return s;
}

Matrix update_E(const AdmmState& state, const CoAssociation& m_avg) {
  const Matrix a = m_avg.values() - state.low_rank() - state.Omega / state.mu;
  return elementwise_soft_threshold(symmetrized(a), 1.0 / state.mu);
}

LowRankFactor update_HD(const AdmmState& state, const CoAssociation& m_avg) {
  const Matrix b = m_avg.values() - state.E - state.Omega / state.mu;
  return clamped_top_k(symmetrized(b), static_cast<int>(state.H.cols()));
}

double objective_j5(const CoAssociation& m_avg, const Matrix& H, const Vector& D) {
  if (H.rows() != m_avg.n() || H.cols() != D.size()) throw InvalidInput("objective_j5: shape mismatch");
  return (m_avg.values() - H * D.asDiagonal() * H.transpose()).cwiseAbs().sum();
}

LabelVector discretize(const Matrix& H, const Vector& D, int k, std::uint64_t seed) {
  if (H.cols() != D.size()) throw InvalidInput("discretize: H and D disagree on k");
  const Matrix embedding = H * D.cwiseMax(0.0).cwiseSqrt().asDiagonal();
  KMeansConfig cfg;
  cfg.k = k;
  cfg.runs = 1;
  cfg.seed = seed;
  return kmeans_detailed(embedding, cfg, seed).labels;
}

RccResult solve(const CoAssociation& m_avg, const RccConfig& cfg, const IterationObserver& observer) {
  AdmmState state = initial_state(m_avg, cfg);
  const Matrix& m = m_avg.values();
  const double tol = cfg.tolerance_for(m_avg.n());

  RccResult result;
  result.objective_history.reserve(static_cast<std::size_t>(cfg.max_iter));
  AdmmState best;
  double best_residual = std::numeric_limits<double>::infinity();

  for (int t = 1; t <= cfg.max_iter; ++t) {
    state.E = update_E(state, m_avg);
    auto factor = update_HD(state, m_avg);
    state.H = std::move(factor.H);
    state.D = std::move(factor.D);
    state.mu = std::min(cfg.rho * state.mu, cfg.mu_max);

    const Matrix low_rank = state.low_rank();
    const Matrix residual = state.E - (m - low_rank);
    state.Omega += state.mu * residual;
    state.Omega = symmetrized(state.Omega);
    state.iter = t;
    state.primal_residual = residual.norm();
    if (!std::isfinite(state.primal_residual)) throw NumericError("solver: primal residual is not finite");

    const double j5 = (m - low_rank).cwiseAbs().sum();
    result.objective_history.push_back(j5);
    result.trace.push_back({t, state.mu, state.primal_residual, j5});
    if (observer) observer(state);

    if (state.primal_residual <= tol) {
      result.converged = true;
      break;
    }
    if (state.primal_residual < best_residual) {
      best_residual = state.primal_residual;
      best = state;
    }
  }

  result.state = result.converged ? std::move(state) : std::move(best);
  result.labels = discretize(result.state.H, result.state.D, cfg.k, cfg.seed);
  return result;
}

}  // namespace rcc

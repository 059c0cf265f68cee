#include "rcc/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rcc/error.hpp"

namespace rcc {

std::vector<int> hungarian_min_cost(const Matrix& cost) {
  const int n = static_cast<int>(cost.rows());
  if (cost.cols() != n) throw InvalidInput("assignment cost matrix must be square");
  constexpr double inf = std::numeric_limits<double>::infinity();
  // Potentials formulation with 1-based helper arrays; column 0 is a sentinel.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int row = 1; row <= n; ++row) {
    match[0] = row;
    int col0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<bool> used(n + 1, false);
    do {
      used[col0] = true;
      const int r = match[col0];
      double delta = inf;
      int col1 = 0;
      for (int c = 1; c <= n; ++c) {
        if (used[c]) continue;
        const double cur = cost(r - 1, c - 1) - u[r] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (int c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const int col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<int> assignment(n, -1);
  for (int c = 1; c <= n; ++c) assignment[match[c] - 1] = c - 1;
  return assignment;
}

double accuracy(const LabelVector& truth, const LabelVector& pred) {
  if (truth.size() != pred.size()) {
    throw InvalidInput("accuracy: label vectors differ in length (" + std::to_string(truth.size()) + " vs " +
                       std::to_string(pred.size()) + ")");
  }
  const int side = std::max(truth.k(), pred.k());
  Matrix confusion = Matrix::Zero(side, side);
  for (std::size_t i = 0; i < truth.size(); ++i) confusion(pred[i], truth[i]) += 1.0;
  const Matrix cost = (confusion.maxCoeff() - confusion.array()).matrix();
  const auto mapping = hungarian_min_cost(cost);
  double hits = 0.0;
  for (int p = 0; p < side; ++p) hits += confusion(p, mapping[static_cast<std::size_t>(p)]);
  return hits / static_cast<double>(truth.size());
}

Consistency consistency(const LabelVector& a, const LabelVector& b) {
  if (a.size() != b.size()) throw InvalidInput("consistency: label vectors differ in length");
  const std::size_t n = a.size();
  if (n < 2) return {};
  std::size_t agree = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) agree += ((a[i] == a[j]) == (b[i] == b[j])) ? 1 : 0;
  }
  const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  Consistency c;
  c.tpn = static_cast<double>(agree) / pairs;
  c.fpn = 1.0 - c.tpn;
  return c;
}

double mape(std::span<const double> truth, std::span<const double> pred) {
  if (truth.size() != pred.size()) throw InvalidInput("mape: length mismatch");
  if (truth.empty()) throw InvalidInput("mape: no observations");
  double total = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (!(truth[i] > 0.0)) throw InvalidInput("mape: ground truth at index " + std::to_string(i) + " is not positive");
    total += std::abs(truth[i] - pred[i]) / truth[i];
  }
  return total / static_cast<double>(truth.size());
}

void ForecastInput::validate() const {
  if (!(total_supply >= 0.0)) throw InvalidInput("forecast: total supply must be non-negative");
  if (!(win_rate >= 0.0 && win_rate <= 1.0)) throw InvalidInput("forecast: win rate must lie in [0, 1]");
  if (!(ecpm_cost >= 0.0)) throw InvalidInput("forecast: eCPM cost must be non-negative");
}

Forecast forecast(const ForecastInput& in) {
  in.validate();
  const double impressions = in.total_supply * in.win_rate;
  return {impressions, impressions * in.ecpm_cost};
}

SegmentForecastError segment_forecast_error(const LabelVector& assignments,
                                            std::span<const EntityForecast> entities) {
  if (assignments.size() != entities.size()) throw InvalidInput("segment forecast: assignment/entity count mismatch");
  const auto k = static_cast<std::size_t>(assignments.k());
  std::vector<double> weight(k, 0.0), win(k, 0.0), cost(k, 0.0);
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& e = entities[i];
    e.input.validate();
    if (!(e.weight > 0.0)) throw InvalidInput("segment forecast: entity weights must be positive");
    const auto s = static_cast<std::size_t>(assignments[i]);
    weight[s] += e.weight;
    win[s] += e.weight * e.input.win_rate;
    cost[s] += e.weight * e.input.ecpm_cost;
  }

  SegmentForecastError out;
  for (std::size_t s = 0; s < k; ++s) {
    if (weight[s] == 0.0) {
      out.warnings.push_back("segment " + std::to_string(s) + " is empty; excluded from pooling");
      continue;
    }
    win[s] /= weight[s];
    cost[s] /= weight[s];
  }

  std::vector<double> imp_true, imp_pred, spend_true, spend_pred;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    const auto& e = entities[i];
    const auto s = static_cast<std::size_t>(assignments[i]);
    const Forecast f = forecast({e.input.total_supply, win[s], cost[s]});
    imp_true.push_back(e.true_impressions);
    imp_pred.push_back(f.impressions);
    spend_true.push_back(e.true_spend);
    spend_pred.push_back(f.spend);
  }
  out.imp_mape = mape(imp_true, imp_pred);
  out.spend_mape = mape(spend_true, spend_pred);
  return out;
}

}  // namespace rcc

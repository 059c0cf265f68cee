#pragma once

#include <span>
#include <string>
#include <vector>

#include "rcc/partition.hpp"

namespace rcc {

/// Optimal assignment for a square cost matrix (Hungarian algorithm, O(n^3)).
/// Returns assignment[row] = column minimizing the total cost.
std::vector<int> hungarian_min_cost(const Matrix& cost);

/// Fraction of points correctly labeled under the best one-to-one mapping of predicted
/// clusters onto true classes. Unequal cluster counts are padded with empty rows/columns.
double accuracy(const LabelVector& truth, const LabelVector& pred);

struct Consistency {
  double tpn = 1.0;  ///< share of pairs i<j where both partitions agree on same/different
  double fpn = 0.0;  ///< 1 - tpn
};

/// Pairwise agreement of two partitions. With fewer than two points there are no pairs and
/// the partitions are taken to agree.
Consistency consistency(const LabelVector& a, const LabelVector& b);

/// (1/n) sum |y_i - yhat_i| / y_i; every y_i must be positive.
double mape(std::span<const double> truth, std::span<const double> pred);

struct ForecastInput {
  double total_supply = 0.0;
  double win_rate = 0.0;
  double ecpm_cost = 0.0;  ///< cost per single impression (divide per-mille prices by 1000 on ingestion)

  void validate() const;
};

struct Forecast {
  double impressions = 0.0;
  double spend = 0.0;
};

/// impressions = supply * win_rate; spend = impressions * ecpm_cost.
Forecast forecast(const ForecastInput& in);

/// One entity's rates and the realized outcome the forecast is scored against.
struct EntityForecast {
  std::string entity_id;
  ForecastInput input;
  double true_impressions = 0.0;
  double true_spend = 0.0;
  double weight = 1.0;  ///< observation count used for pooling
};

struct SegmentForecastError {
  double imp_mape = 0.0;
  double spend_mape = 0.0;
  std::vector<std::string> warnings;
};

/// Replaces each entity's win rate and cost by the weighted mean over its segment,
/// re-forecasts, and scores against the realized impressions and spend.
SegmentForecastError segment_forecast_error(const LabelVector& assignments,
                                            std::span<const EntityForecast> entities);

}  // namespace rcc

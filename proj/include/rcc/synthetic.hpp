#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "rcc/ensemble.hpp"
#include "rcc/evaluation.hpp"
#include "rcc/io.hpp"

namespace rcc {

/// k isotropic unit-variance Gaussian blobs in the plane, centers evenly spaced on a
/// circle of radius `radius`. Ground truth is attached.
DataMatrix make_blobs(int k, int per_cluster, double radius, std::uint64_t seed);

/// Synthetic advertiser population.
///
/// Segment s of S draws win-rate observations from Beta(k m_s, k (1 - m_s)) with
/// m_s = 0.1 + 0.8 (s + 0.5) / S and k = 30, and per-impression costs from
/// Gamma(shape 6, scale c_s / 6) with c_s = 0.5 + 2 (S - s - 0.5) / S, so the cost order
/// runs opposite to the win-rate order. Entity e belongs to segment e mod S. Each entity
/// has a total supply drawn uniformly from [5000, 20000]; its realized impressions and spend
/// use the segment's true m_s and c_s, while its forecast inputs are the sample means of
/// its own observations. The textual view is the true segment with probability
/// 1 - textual_noise and a uniform random segment otherwise.
struct AdvertiserSpec {
  int segments = 3;
  int entities_per_segment = 20;
  int samples_per_entity = 200;
  double textual_noise = 0.3;
  std::uint64_t seed = 0;

  void validate() const;
};

struct AdvertiserData {
  std::vector<io::EntitySamples> win_rates;
  std::vector<io::EntitySamples> costs;
  std::vector<EntityForecast> forecasts;
  LabelVector segments;
  LabelVector textual;
};

AdvertiserData generate_synthetic_advertisers(const AdvertiserSpec& spec);

/// Writes winrate_samples.csv, ecpm_samples.csv, forecast.csv and segments.csv
/// (entity_id,segment,textual) into `dir`, creating it if needed.
void write_advertisers(const std::filesystem::path& dir, const AdvertiserData& data);

/// Reads a directory produced by write_advertisers. Entities are ordered as in forecast.csv.
AdvertiserData load_advertisers(const std::filesystem::path& dir);

}  // namespace rcc

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rcc/ensemble.hpp"
#include "rcc/evaluation.hpp"
#include "rcc/partition.hpp"
#include "rcc/solver.hpp"

namespace rcc::io {

/// Dataset CSV: a header row, then n rows of p numeric features. When the last header
/// field is `label` that column is ground truth; its tokens are remapped to dense ids.
DataMatrix load_dataset(const std::filesystem::path& path);

/// Header-less CSV with n rows and V columns; column v holds view v's labels.
Ensemble load_partitions(const std::filesystem::path& path);
void write_partitions(const std::filesystem::path& path, const Ensemble& e);

/// One label per line.
void write_labels(const std::filesystem::path& path, const LabelVector& labels);

struct EntitySamples {
  std::string entity_id;
  std::vector<double> values;
};

/// (entity_id, value) rows, optional header. Entities keep first-appearance order.
std::vector<EntitySamples> load_samples(const std::filesystem::path& path);
void write_samples(const std::filesystem::path& path, const std::vector<EntitySamples>& samples);

/// (entity_id, total_supply, win_rate, ecpm_cost, true_impressions, true_spend), optional header.
std::vector<EntityForecast> load_forecasts(const std::filesystem::path& path);
void write_forecasts(const std::filesystem::path& path, const std::vector<EntityForecast>& rows);

/// iter,mu,primal_residual,j5
void write_trace(const std::filesystem::path& path, const std::vector<IterationRecord>& trace);

}  // namespace rcc::io

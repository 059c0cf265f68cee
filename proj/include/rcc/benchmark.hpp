#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rcc/partition.hpp"

namespace rcc {

inline const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> methods{"rcc", "l2cc", "kc", "kmeans", "ks-pipeline"};
  return methods;
}

/// One benchmark invocation.
///
/// `dataset` is a CSV path, a directory written by write_advertisers, `blobs:KxN[:R]`
/// (K blobs of N points on a circle of radius R, default 3) or `ads:SxExM` (S segments,
/// E entities each, M samples per entity). Synthetic data is drawn from `data_seed`.
///
/// Per seed s the pipeline draws its randomness from derive_seed(s, stream) with stream
/// 1 for the k-means ensemble, 2 for view corruption, 3 for consensus rounding and 4 for
/// the plain k-means baseline. All methods of one seed share the same ensemble. The
/// ks-pipeline rounds its win-rate and cost similarity views with streams 5 and 6.
struct RunConfig {
  std::string dataset;
  std::vector<std::string> methods{"rcc"};
  int k = 0;  ///< 0 takes the number of ground-truth classes
  int runs = 40;
  double corrupt = 0.0;
  double alpha = 0.05;
  std::vector<std::uint64_t> seeds{0};
  std::filesystem::path out;  ///< report stem; empty means no files
  bool trace = false;         ///< write per-seed ADMM traces next to the report
  bool normalize = false;     ///< z-score feature columns before clustering
  bool normalized_l2 = false; ///< l2cc on the degree-normalized co-association
  std::uint64_t data_seed = 0;
  int max_iter = 300;
  double rho = 1.05;
  double mu0 = 1e-2;

  /// Throws ConfigError.
  void validate() const;
};

struct SolverSummary {
  bool converged = false;
  int iterations = 0;
  double primal_residual = 0.0;
  double j5 = 0.0;

  bool operator==(const SolverSummary&) const = default;
};

struct ForecastSummary {
  double imp_mape = 0.0;
  double spend_mape = 0.0;

  bool operator==(const ForecastSummary&) const = default;
};

struct RunRecord {
  std::string method;
  std::uint64_t seed = 0;
  std::optional<double> accuracy;
  std::vector<int> labels;
  std::optional<SolverSummary> solver;
  /// ks-pipeline only: per-view and consensus forecast errors, keyed by view name.
  std::map<std::string, ForecastSummary> forecast;
  std::map<std::string, double> view_accuracy;

  bool operator==(const RunRecord&) const = default;
};

struct MethodSummary {
  std::string method;
  int runs = 0;
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  ///< sample standard deviation; 0 for a single run

  bool operator==(const MethodSummary&) const = default;
};

struct ConsistencyEntry {
  std::string pair;
  double tpn = 0.0;
  double fpn = 0.0;

  bool operator==(const ConsistencyEntry&) const = default;
};

struct ComponentCount {
  std::string view;
  double alpha = 0.0;
  int components = 0;

  bool operator==(const ComponentCount&) const = default;
};

/// Published accuracies for a named benchmark dataset, shipped for context only.
struct ReferenceRow {
  std::string dataset;
  std::map<std::string, double> accuracy;

  bool operator==(const ReferenceRow&) const = default;
};

struct EvalReport {
  std::string dataset;
  std::int64_t n = 0;
  std::int64_t p = 0;
  int k = 0;
  int runs = 0;
  double corrupt = 0.0;
  double alpha = 0.0;
  bool normalize = false;
  std::vector<RunRecord> records;
  std::vector<MethodSummary> summary;
  std::vector<ConsistencyEntry> consistency;
  std::vector<ComponentCount> components;
  std::optional<ReferenceRow> reference;
  std::vector<std::string> warnings;

  bool operator==(const EvalReport&) const = default;
};

/// Table of published accuracies keyed by lower-case dataset name.
const std::map<std::string, ReferenceRow>& reference_table();

/// Runs every (method, seed) pair and aggregates. Errors carry a "stage: " prefix and keep
/// their original type. Writes the report and traces when cfg.out is set.
EvalReport run_benchmark(const RunConfig& cfg);

nlohmann::ordered_json report_to_json(const EvalReport& r);
EvalReport report_from_json(const nlohmann::ordered_json& j);
std::string report_table(const EvalReport& r);

/// Writes <stem>.json and <stem>.txt; a trailing .json on `stem` is dropped.
void emit_report(const EvalReport& r, const std::filesystem::path& stem);

}  // namespace rcc

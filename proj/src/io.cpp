#include "rcc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "rcc/error.hpp"

namespace rcc::io {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const char* begin = s.data();
  if (*begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

double require_double(const std::string& s, std::size_t line, const std::string& what) {
  double v = 0.0;
  if (!parse_double(s, v) || !std::isfinite(v)) throw ParseError("non-numeric " + what + " '" + s + "'", line);
  return v;
}

struct CsvLine {
  std::size_t number;
  std::vector<std::string> fields;
};

std::vector<CsvLine> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<CsvLine> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    rows.push_back({number, split(line)});
  }
  return rows;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << std::setprecision(17);
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

bool looks_like_header(const CsvLine& row, std::size_t numeric_field) {
  double ignored = 0.0;
  return row.fields.size() > numeric_field && !parse_double(row.fields[numeric_field], ignored);
}

}  // namespace

DataMatrix load_dataset(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ParseError("empty dataset file " + path.string(), 1);
  const auto& header = rows.front().fields;
  const bool has_label = header.back() == "label";
  const std::size_t width = header.size();
  const std::size_t p = has_label ? width - 1 : width;
  if (p == 0) throw ParseError("dataset has no feature columns", rows.front().number);
  if (rows.size() == 1) throw ParseError("dataset has a header but zero rows", rows.front().number);

  DataMatrix data;
  data.feature_names.assign(header.begin(), header.begin() + static_cast<std::ptrdiff_t>(p));
  data.rows.resize(static_cast<Eigen::Index>(rows.size() - 1), static_cast<Eigen::Index>(p));
  std::vector<std::string> tokens;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.fields.size() != width) {
      throw ParseError("expected " + std::to_string(width) + " fields, found " + std::to_string(row.fields.size()),
                       row.number);
    }
    for (std::size_t c = 0; c < p; ++c) {
      data.rows(static_cast<Eigen::Index>(r - 1), static_cast<Eigen::Index>(c)) =
          require_double(row.fields[c], row.number, "feature");
    }
    if (has_label) {
      if (row.fields.back().empty()) throw ParseError("missing label", row.number);
      tokens.push_back(row.fields.back());
    }
  }
  if (has_label) data.truth = dense_labels(tokens);
  return data;
}

Ensemble load_partitions(const std::filesystem::path& path) {
  const auto rows = read_csv(path);
  if (rows.empty()) throw ParseError("empty partitions file " + path.string(), 1);
  const std::size_t views = rows.front().fields.size();
  std::vector<std::vector<std::string>> columns(views);
  for (const auto& row : rows) {
    if (row.fields.size() != views) {
      throw ParseError("expected " + std::to_string(views) + " labels, found " + std::to_string(row.fields.size()),
                       row.number);
    }
    for (std::size_t v = 0; v < views; ++v) {
      if (row.fields[v].empty()) throw ParseError("empty label", row.number);
      columns[v].push_back(row.fields[v]);
    }
  }
  std::vector<LabelVector> out;
  out.reserve(views);
  for (const auto& col : columns) out.push_back(dense_labels(col));
  return Ensemble(std::move(out));
}

void write_partitions(const std::filesystem::path& path, const Ensemble& e) {
  auto out = open_for_write(path);
  for (std::size_t i = 0; i < e.n(); ++i) {
    for (std::size_t v = 0; v < e.size(); ++v) out << (v ? "," : "") << e[v][i];
    out << '\n';
  }
  finish(out, path);
}

void write_labels(const std::filesystem::path& path, const LabelVector& labels) {
  auto out = open_for_write(path);
  for (int l : labels.labels()) out << l << '\n';
  finish(out, path);
}

std::vector<EntitySamples> load_samples(const std::filesystem::path& path) {
  auto rows = read_csv(path);
  if (!rows.empty() && looks_like_header(rows.front(), 1)) rows.erase(rows.begin());
  if (rows.empty()) throw ParseError("samples file has no observations", 1);
  std::vector<EntitySamples> out;
  std::unordered_map<std::string, std::size_t> index;
  for (const auto& row : rows) {
    if (row.fields.size() != 2) throw ParseError("expected entity_id,value", row.number);
    const double v = require_double(row.fields[1], row.number, "sample value");
    auto [it, inserted] = index.try_emplace(row.fields[0], out.size());
    if (inserted) out.push_back({row.fields[0], {}});
    out[it->second].values.push_back(v);
  }
  return out;
}

void write_samples(const std::filesystem::path& path, const std::vector<EntitySamples>& samples) {
  auto out = open_for_write(path);
  out << "entity_id,value\n";
  for (const auto& s : samples) {
    for (double v : s.values) out << s.entity_id << ',' << v << '\n';
  }
  finish(out, path);
}

std::vector<EntityForecast> load_forecasts(const std::filesystem::path& path) {
  auto rows = read_csv(path);
  if (!rows.empty() && looks_like_header(rows.front(), 1)) rows.erase(rows.begin());
  if (rows.empty()) throw ParseError("forecast file has no rows", 1);
  std::vector<EntityForecast> out;
  for (const auto& row : rows) {
    if (row.fields.size() != 6) throw ParseError("expected 6 forecast fields", row.number);
    EntityForecast e;
    e.entity_id = row.fields[0];
    e.input.total_supply = require_double(row.fields[1], row.number, "total_supply");
    e.input.win_rate = require_double(row.fields[2], row.number, "win_rate");
    e.input.ecpm_cost = require_double(row.fields[3], row.number, "ecpm_cost");
    e.true_impressions = require_double(row.fields[4], row.number, "true_impressions");
    e.true_spend = require_double(row.fields[5], row.number, "true_spend");
    try {
      e.input.validate();
    } catch (const InvalidInput& err) {
      throw ParseError(err.what(), row.number);
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_forecasts(const std::filesystem::path& path, const std::vector<EntityForecast>& rows) {
  auto out = open_for_write(path);
  out << "entity_id,total_supply,win_rate,ecpm_cost,true_impressions,true_spend\n";
  for (const auto& e : rows) {
    out << e.entity_id << ',' << e.input.total_supply << ',' << e.input.win_rate << ',' << e.input.ecpm_cost << ','
        << e.true_impressions << ',' << e.true_spend << '\n';
  }
  finish(out, path);
}

void write_trace(const std::filesystem::path& path, const std::vector<IterationRecord>& trace) {
  auto out = open_for_write(path);
  out << "iter,mu,primal_residual,j5\n";
  for (const auto& r : trace) out << r.iter << ',' << r.mu << ',' << r.primal_residual << ',' << r.j5 << '\n';
  finish(out, path);
}

}  // namespace rcc::io

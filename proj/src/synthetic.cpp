#include "rcc/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <unordered_map>

#include "rcc/error.hpp"
#include "rcc/random.hpp"

namespace rcc {

DataMatrix make_blobs(int k, int per_cluster, double radius, std::uint64_t seed) {
  if (k < 1 || per_cluster < 1) throw InvalidInput("blobs: k and per-cluster size must be >= 1");
  Rng rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  DataMatrix data;
  data.rows.resize(static_cast<Eigen::Index>(k) * per_cluster, 2);
  data.feature_names = {"x", "y"};
  std::vector<int> truth;
  for (int c = 0; c < k; ++c) {
    const double angle = 2.0 * std::numbers::pi * c / k;
    for (int i = 0; i < per_cluster; ++i) {
      const Eigen::Index row = static_cast<Eigen::Index>(c) * per_cluster + i;
      data.rows(row, 0) = radius * std::cos(angle) + noise(rng);
      data.rows(row, 1) = radius * std::sin(angle) + noise(rng);
      truth.push_back(c);
    }
  }
  data.truth = LabelVector(std::move(truth), k);
  return data;
}

void AdvertiserSpec::validate() const {
  if (segments < 1 || entities_per_segment < 1 || samples_per_entity < 1) {
    throw ConfigError("advertisers: segment, entity and sample counts must be >= 1");
  }
  if (!(textual_noise >= 0.0 && textual_noise <= 1.0)) throw ConfigError("advertisers: textual noise must lie in [0, 1]");
}

AdvertiserData generate_synthetic_advertisers(const AdvertiserSpec& spec) {
  spec.validate();
  const int segments = spec.segments;
  const int entities = segments * spec.entities_per_segment;
  constexpr double concentration = 30.0;
  constexpr double cost_shape = 6.0;

  AdvertiserData out;
  std::vector<int> truth, textual;
  Rng rng(spec.seed);
  std::uniform_real_distribution<double> supply_dist(5000.0, 20000.0);

  for (int e = 0; e < entities; ++e) {
    const int s = e % segments;
    const double win_mean = 0.1 + 0.8 * (s + 0.5) / segments;
    const double cost_mean = 0.5 + 2.0 * (segments - s - 0.5) / segments;
    std::gamma_distribution<double> win_a(concentration * win_mean, 1.0);
    std::gamma_distribution<double> win_b(concentration * (1.0 - win_mean), 1.0);
    std::gamma_distribution<double> cost(cost_shape, cost_mean / cost_shape);

    char id[32];
    std::snprintf(id, sizeof id, "adv%05d", e);
    io::EntitySamples w{id, {}};
    io::EntitySamples c{id, {}};
    double win_sum = 0.0;
    double cost_sum = 0.0;
    for (int i = 0; i < spec.samples_per_entity; ++i) {
      const double a = win_a(rng);
      const double b = win_b(rng);
      w.values.push_back(a / (a + b));
      c.values.push_back(cost(rng));
      win_sum += w.values.back();
      cost_sum += c.values.back();
    }
    const double count = spec.samples_per_entity;
    EntityForecast f;
    f.entity_id = id;
    f.input.total_supply = std::round(supply_dist(rng));
    f.input.win_rate = win_sum / count;
    f.input.ecpm_cost = cost_sum / count;
    f.true_impressions = f.input.total_supply * win_mean;
    f.true_spend = f.true_impressions * cost_mean;
    f.weight = count;

    truth.push_back(s);
    textual.push_back(uniform01(rng) < spec.textual_noise ? static_cast<int>(rng() % segments) : s);
    out.win_rates.push_back(std::move(w));
    out.costs.push_back(std::move(c));
    out.forecasts.push_back(std::move(f));
  }
  out.segments = LabelVector(std::move(truth), segments);
  out.textual = LabelVector(std::move(textual), segments);
  return out;
}

void write_advertisers(const std::filesystem::path& dir, const AdvertiserData& data) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  io::write_samples(dir / "winrate_samples.csv", data.win_rates);
  io::write_samples(dir / "ecpm_samples.csv", data.costs);
  io::write_forecasts(dir / "forecast.csv", data.forecasts);
  std::ofstream seg(dir / "segments.csv");
  if (!seg) throw IoError("cannot write " + (dir / "segments.csv").string());
  seg << "entity_id,segment,textual\n";
  for (std::size_t i = 0; i < data.forecasts.size(); ++i) {
    seg << data.forecasts[i].entity_id << ',' << data.segments[i] << ',' << data.textual[i] << '\n';
  }
  if (!seg.flush()) throw IoError("write failed for segments.csv");
}

namespace {

std::vector<io::EntitySamples> reorder(std::vector<io::EntitySamples> samples, const std::vector<EntityForecast>& order,
                                       const std::string& what) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < samples.size(); ++i) index.emplace(samples[i].entity_id, i);
  std::vector<io::EntitySamples> out;
  out.reserve(order.size());
  for (const auto& f : order) {
    const auto it = index.find(f.entity_id);
    if (it == index.end()) throw InvalidInput(what + " has no observations for entity " + f.entity_id);
    out.push_back(std::move(samples[it->second]));
  }
  return out;
}

}  // namespace

AdvertiserData load_advertisers(const std::filesystem::path& dir) {
  AdvertiserData out;
  out.forecasts = io::load_forecasts(dir / "forecast.csv");
  out.win_rates = reorder(io::load_samples(dir / "winrate_samples.csv"), out.forecasts, "winrate_samples.csv");
  out.costs = reorder(io::load_samples(dir / "ecpm_samples.csv"), out.forecasts, "ecpm_samples.csv");
  for (std::size_t i = 0; i < out.forecasts.size(); ++i) {
    out.forecasts[i].weight = static_cast<double>(out.win_rates[i].values.size());
  }

  std::ifstream seg(dir / "segments.csv");
  if (!seg) throw IoError("cannot open " + (dir / "segments.csv").string());
  std::unordered_map<std::string, std::pair<std::string, std::string>> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(seg, line)) {
    ++number;
    if (number == 1 || line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.find(',', a + 1);
    if (a == std::string::npos || b == std::string::npos) throw ParseError("expected entity_id,segment,textual", number);
    rows[line.substr(0, a)] = {line.substr(a + 1, b - a - 1), line.substr(b + 1)};
  }
  std::vector<std::string> truth, textual;
  for (const auto& f : out.forecasts) {
    const auto it = rows.find(f.entity_id);
    if (it == rows.end()) throw InvalidInput("segments.csv has no row for entity " + f.entity_id);
    truth.push_back(it->second.first);
    textual.push_back(it->second.second);
  }
  out.segments = dense_labels(truth);
  out.textual = dense_labels(textual);
  return out;
}

}  // namespace rcc

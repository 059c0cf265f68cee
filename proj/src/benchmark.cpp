#include "rcc/benchmark.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rcc/baselines.hpp"
#include "rcc/ensemble.hpp"
#include "rcc/error.hpp"
#include "rcc/evaluation.hpp"
#include "rcc/io.hpp"
#include "rcc/ks.hpp"
#include "rcc/parallel.hpp"
#include "rcc/random.hpp"
#include "rcc/solver.hpp"
#include "rcc/synthetic.hpp"

namespace rcc {

namespace {

constexpr std::uint64_t kEnsembleStream = 1;
constexpr std::uint64_t kCorruptStream = 2;
constexpr std::uint64_t kRoundingStream = 3;
constexpr std::uint64_t kKMeansStream = 4;
constexpr std::uint64_t kWinRateStream = 5;
constexpr std::uint64_t kCostStream = 6;

const std::vector<double> kComponentAlphas{0.01, 0.05, 0.1};

template <typename Fn>
auto staged(const std::string& stage, Fn&& fn) -> decltype(fn()) {
  const std::string prefix = stage + ": ";
  try {
    return fn();
  } catch (const ParseError& e) {
    throw ParseError(e.detail(), e.line(), prefix);
  } catch (const ConfigError& e) {
    throw ConfigError(prefix + e.what());
  } catch (const NumericError& e) {
    throw NumericError(prefix + e.what());
  } catch (const IoError& e) {
    throw IoError(prefix + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput(prefix + e.what());
  } catch (const Error& e) {
    throw Error(prefix + e.what());
  }
}

std::string lower(std::string s) {
  std::ranges::transform(s, s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<int> parse_dims(const std::string& text, std::size_t count, const std::string& form) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, 'x')) {
    try {
      std::size_t used = 0;
      dims.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError("dataset must look like " + form + ", got '" + text + "'");
    }
  }
  if (dims.size() != count) throw ConfigError("dataset must look like " + form + ", got '" + text + "'");
  return dims;
}

struct LoadedData {
  std::string name;
  std::optional<DataMatrix> features;
  std::optional<AdvertiserData> ads;
};

LoadedData load(const RunConfig& cfg) {
  LoadedData out;
  const std::string& ds = cfg.dataset;
  if (ds.starts_with("blobs:")) {
    std::string body = ds.substr(6);
    double radius = 3.0;
    if (const auto colon = body.find(':'); colon != std::string::npos) {
      try {
        radius = std::stod(body.substr(colon + 1));
      } catch (const std::exception&) {
        throw ConfigError("blob radius must be a number in '" + ds + "'");
      }
      body = body.substr(0, colon);
    }
    const auto dims = parse_dims(body, 2, "blobs:KxN[:R]");
    out.name = "blobs";
    out.features = make_blobs(dims[0], dims[1], radius, cfg.data_seed);
  } else if (ds.starts_with("ads:")) {
    const auto dims = parse_dims(ds.substr(4), 3, "ads:SxExM");
    AdvertiserSpec spec;
    spec.segments = dims[0];
    spec.entities_per_segment = dims[1];
    spec.samples_per_entity = dims[2];
    spec.seed = cfg.data_seed;
    out.name = "ads";
    out.ads = generate_synthetic_advertisers(spec);
  } else if (std::filesystem::is_directory(ds)) {
    out.name = std::filesystem::path(ds).filename().string();
    out.ads = load_advertisers(ds);
  } else {
    out.name = std::filesystem::path(ds).stem().string();
    out.features = io::load_dataset(ds);
  }
  return out;
}

SolverSummary summarize(const RccResult& r) {
  return {r.converged, static_cast<int>(r.trace.size()), r.state.primal_residual,
          r.objective_history.empty() ? 0.0 : r.objective_history.back()};
}

std::filesystem::path stem_of(const std::filesystem::path& out) {
  return out.extension() == ".json" ? std::filesystem::path(out).replace_extension() : out;
}

std::filesystem::path trace_path(const std::filesystem::path& out, const std::string& method, std::uint64_t seed) {
  auto p = stem_of(out);
  p += "." + method + ".seed" + std::to_string(seed) + ".trace.csv";
  return p;
}

RccConfig solver_config(const RunConfig& cfg, int k, std::uint64_t seed) {
  RccConfig rc;
  rc.k = k;
  rc.rho = cfg.rho;
  rc.mu0 = cfg.mu0;
  rc.max_iter = cfg.max_iter;
  rc.seed = derive_seed(seed, kRoundingStream);
  return rc;
}

// One seed of the feature-data pipeline: every method shares the ensemble.
std::vector<RunRecord> run_features(const RunConfig& cfg, const DataMatrix& data, int k, std::uint64_t seed) {
  std::vector<RunRecord> records;
  const bool needs_ensemble =
      std::ranges::any_of(cfg.methods, [](const std::string& m) { return m != "kmeans"; });
  CoAssociation m_avg;
  if (needs_ensemble) {
    m_avg = staged("ensemble", [&] {
      KMeansConfig kc;
      kc.k = k;
      kc.runs = cfg.runs;
      kc.seed = derive_seed(seed, kEnsembleStream);
      Ensemble e = build_ensemble(data, kc);
      if (cfg.corrupt > 0.0) e = corrupt_ensemble(e, cfg.corrupt, derive_seed(seed, kCorruptStream));
      return average_coassociation(e);
    });
  }

  for (const auto& method : cfg.methods) {
    RunRecord rec;
    rec.method = method;
    rec.seed = seed;
    LabelVector labels = staged(method, [&]() -> LabelVector {
      const std::uint64_t rounding = derive_seed(seed, kRoundingStream);
      if (method == "kmeans") {
        KMeansConfig kc;
        kc.k = k;
        kc.runs = 1;
        const std::uint64_t s = derive_seed(seed, kKMeansStream);
        kc.seed = s;
        return kmeans(data, kc, s);
      }
      if (method == "l2cc") return l2_consensus(m_avg, k, rounding, cfg.normalized_l2);
      if (method == "kc") return kc_baseline(m_avg, k, rounding);
      if (method == "rcc") {
        RccResult r = solve(m_avg, solver_config(cfg, k, seed));
        rec.solver = summarize(r);
        if (cfg.trace && !cfg.out.empty()) io::write_trace(trace_path(cfg.out, method, seed), r.trace);
        return std::move(r.labels);
      }
      throw ConfigError("method '" + method + "' needs advertiser data");
    });
    if (data.truth) rec.accuracy = staged("evaluate", [&] { return accuracy(*data.truth, labels); });
    rec.labels = labels.labels();
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<EmpiricalCdf> cdfs_of(const std::vector<io::EntitySamples>& samples) {
  std::vector<EmpiricalCdf> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.emplace_back(s.values);
  return out;
}

struct AdsContext {
  const AdvertiserData* data = nullptr;
  SimilarityMatrix win;
  SimilarityMatrix cost;
};

// Views: textual proxy, clustered win-rate KS graph, clustered cost KS graph; consensus by RCC.
RunRecord run_ads(const RunConfig& cfg, const AdsContext& ctx, int k, std::uint64_t seed,
                  std::map<std::string, LabelVector>& views_out) {
  const AdvertiserData& ads = *ctx.data;
  RunRecord rec;
  rec.method = "ks-pipeline";
  rec.seed = seed;

  std::map<std::string, LabelVector> views;
  views["textual"] = ads.textual;
  views["win_rate"] = staged("similarity", [&] { return similarity_clusters(ctx.win, k, derive_seed(seed, kWinRateStream)); });
  views["ecpm"] = staged("similarity", [&] { return similarity_clusters(ctx.cost, k, derive_seed(seed, kCostStream)); });

  RccResult r = staged("consensus", [&] {
    const Ensemble e({views["textual"], views["win_rate"], views["ecpm"]});
    return solve(average_coassociation(e), solver_config(cfg, k, seed));
  });
  rec.solver = summarize(r);
  if (cfg.trace && !cfg.out.empty()) io::write_trace(trace_path(cfg.out, rec.method, seed), r.trace);
  views["consensus"] = r.labels;

  staged("evaluate", [&] {
    for (const auto& [name, labels] : views) {
      const auto err = segment_forecast_error(labels, ads.forecasts);
      rec.forecast[name] = {err.imp_mape, err.spend_mape};
      if (name != "consensus") rec.view_accuracy[name] = accuracy(ads.segments, labels);
    }
    rec.accuracy = accuracy(ads.segments, r.labels);
  });
  rec.labels = r.labels.labels();
  views_out = std::move(views);
  return rec;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = mean_of(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

}  // namespace

void RunConfig::validate() const {
  if (dataset.empty()) throw ConfigError("dataset is required");
  if (methods.empty()) throw ConfigError("at least one method is required");
  for (const auto& m : methods) {
    if (std::ranges::find(known_methods(), m) == known_methods().end()) {
      throw ConfigError("unknown method '" + m + "' (expected rcc, l2cc, kc, kmeans or ks-pipeline)");
    }
  }
  if (k < 0) throw ConfigError("k must be >= 1 (or 0 to use the number of true classes)");
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (!(corrupt >= 0.0 && corrupt <= 1.0)) throw ConfigError("corrupt must lie in [0, 1]");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0, 1)");
  if (seeds.empty()) throw ConfigError("at least one seed is required");
  if (max_iter < 1) throw ConfigError("max_iter must be >= 1");
  if (!(rho > 1.0)) throw ConfigError("rho must exceed 1");
  if (!(mu0 > 0.0)) throw ConfigError("mu0 must be positive");
}

const std::map<std::string, ReferenceRow>& reference_table() {
  static const std::map<std::string, ReferenceRow> table = [] {
    const std::vector<std::string> cols{"k-means", "KC", "CSPA", "HPGA", "NMFC", "WC", "L2CC", "RCC", "ES", "CorC"};
    const std::vector<std::pair<std::string, std::vector<double>>> rows{
        {"CSTR", {.45, .38, .50, .62, .56, .64, .61, .65, .64, .61}},
        {"Glass", {.38, .45, .43, .40, .49, .49, .49, .52, .52, .50}},
        {"Ionosphere", {.70, .71, .68, .52, .71, .71, .71, .72, .71, .70}},
        {"Iris", {.83, .72, .86, .69, .89, .89, .86, .89, .88, .86}},
        {"Reuters", {.45, .44, .43, .44, .43, .44, .43, .45, .44, .43}},
        {"Soybean", {.72, .82, .70, .81, .89, .91, .76, 1.00, .98, .95}},
        {"Wine", {.68, .68, .69, .52, .70, .72, .65, .96, .84, .89}},
        {"Zoo", {.61, .59, .56, .58, .62, .70, .80, .84, .79, .82}},
    };
    std::map<std::string, ReferenceRow> t;
    for (const auto& [name, values] : rows) {
      ReferenceRow row{name, {}};
      for (std::size_t c = 0; c < cols.size(); ++c) row.accuracy[cols[c]] = values[c];
      t[lower(name)] = row;
    }
    return t;
  }();
  return table;
}

EvalReport run_benchmark(const RunConfig& cfg) {
  staged("config", [&] { cfg.validate(); });
  if (const auto dir = stem_of(cfg.out).parent_path(); !cfg.out.empty() && !dir.empty()) {
    staged("report", [&] {
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
    });
  }
  LoadedData loaded = staged("load", [&] { return load(cfg); });

  EvalReport report;
  report.dataset = loaded.name;
  report.runs = cfg.runs;
  report.corrupt = cfg.corrupt;
  report.alpha = cfg.alpha;
  report.normalize = cfg.normalize;
  if (const auto it = reference_table().find(lower(loaded.name)); it != reference_table().end()) {
    report.reference = it->second;
  }

  std::vector<std::vector<RunRecord>> per_seed(cfg.seeds.size());

  if (loaded.features) {
    DataMatrix& data = *loaded.features;
    if (std::ranges::find(cfg.methods, "ks-pipeline") != cfg.methods.end()) {
      throw ConfigError("config: ks-pipeline needs advertiser data (a directory or ads:SxExM)");
    }
    if (cfg.normalize) zscore_columns(data);
    const int k = cfg.k > 0 ? cfg.k : (data.truth ? data.truth->k() : 0);
    if (k == 0) throw ConfigError("config: k is required when the dataset has no label column");
    if (k > data.n()) throw ConfigError("config: k exceeds the number of points");
    report.n = data.n();
    report.p = data.p();
    report.k = k;
    if (!data.truth) report.warnings.push_back("dataset has no label column; accuracy not computed");
    detail::parallel_for(cfg.seeds.size(), [&](std::size_t i) { per_seed[i] = run_features(cfg, data, k, cfg.seeds[i]); });
  } else {
    const AdvertiserData& ads = *loaded.ads;
    if (cfg.methods.size() != 1 || cfg.methods.front() != "ks-pipeline") {
      throw ConfigError("config: advertiser data supports only the ks-pipeline method");
    }
    const int k = cfg.k > 0 ? cfg.k : ads.segments.k();
    report.n = static_cast<std::int64_t>(ads.forecasts.size());
    report.p = 0;
    report.k = k;

    AdsContext ctx;
    ctx.data = &ads;
    const auto win_cdfs = staged("similarity", [&] { return cdfs_of(ads.win_rates); });
    const auto cost_cdfs = staged("similarity", [&] { return cdfs_of(ads.costs); });
    staged("similarity", [&] {
      ctx.win = pairwise_similarity(win_cdfs, cfg.alpha);
      ctx.cost = pairwise_similarity(cost_cdfs, cfg.alpha);
      for (double a : kComponentAlphas) {
        report.components.push_back({"win_rate", a, connected_components(pairwise_similarity(win_cdfs, a))});
      }
      for (double a : kComponentAlphas) {
        report.components.push_back({"ecpm", a, connected_components(pairwise_similarity(cost_cdfs, a))});
      }
    });

    std::vector<std::map<std::string, LabelVector>> views(cfg.seeds.size());
    detail::parallel_for(cfg.seeds.size(), [&](std::size_t i) {
      per_seed[i] = {run_ads(cfg, ctx, k, cfg.seeds[i], views[i])};
    });

    const std::vector<std::pair<std::string, std::string>> pairs{
        {"textual", "win_rate"}, {"textual", "ecpm"}, {"win_rate", "ecpm"}, {"consensus", "textual"}};
    for (const auto& [a, b] : pairs) {
      std::vector<double> tpn;
      for (const auto& v : views) tpn.push_back(consistency(v.at(a), v.at(b)).tpn);
      const double t = mean_of(tpn);
      report.consistency.push_back({a + "~" + b, t, 1.0 - t});
    }
  }

  for (auto& seed_records : per_seed) {
    for (auto& rec : seed_records) report.records.push_back(std::move(rec));
  }

  for (const auto& method : cfg.methods) {
    std::vector<double> acc;
    for (const auto& rec : report.records) {
      if (rec.method == method && rec.accuracy) acc.push_back(*rec.accuracy);
    }
    if (acc.empty()) continue;
    report.summary.push_back({method, static_cast<int>(acc.size()), mean_of(acc), sample_std(acc)});
  }

  if (loaded.features && cfg.methods.size() > 1) {
    for (std::size_t a = 0; a < cfg.methods.size(); ++a) {
      for (std::size_t b = a + 1; b < cfg.methods.size(); ++b) {
        std::vector<double> tpn;
        for (const auto& ra : report.records) {
          if (ra.method != cfg.methods[a]) continue;
          for (const auto& rb : report.records) {
            if (rb.method == cfg.methods[b] && rb.seed == ra.seed) {
              tpn.push_back(consistency(LabelVector(ra.labels), LabelVector(rb.labels)).tpn);
              break;
            }
          }
        }
        const double t = mean_of(tpn);
        report.consistency.push_back({cfg.methods[a] + "~" + cfg.methods[b], t, 1.0 - t});
      }
    }
  }

  for (const auto& rec : report.records) {
    if (rec.solver && !rec.solver->converged) {
      report.warnings.push_back(rec.method + " seed " + std::to_string(rec.seed) + ": solver stopped at max_iter");
    }
  }

  if (!cfg.out.empty()) staged("report", [&] { emit_report(report, cfg.out); });
  return report;
}

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["dataset"] = r.dataset;
  j["n"] = r.n;
  j["p"] = r.p;
  j["k"] = r.k;
  j["runs"] = r.runs;
  j["corrupt"] = r.corrupt;
  j["alpha"] = r.alpha;
  j["normalize"] = r.normalize;

  ordered_json summary = ordered_json::array();
  for (const auto& s : r.summary) {
    summary.push_back({{"method", s.method}, {"runs", s.runs}, {"mean_accuracy", s.mean_accuracy}, {"std_accuracy", s.std_accuracy}});
  }
  j["summary"] = summary;

  ordered_json records = ordered_json::array();
  for (const auto& rec : r.records) {
    ordered_json o;
    o["method"] = rec.method;
    o["seed"] = rec.seed;
    o["accuracy"] = rec.accuracy ? ordered_json(*rec.accuracy) : ordered_json(nullptr);
    if (rec.solver) {
      o["solver"] = {{"converged", rec.solver->converged},
                     {"iterations", rec.solver->iterations},
                     {"primal_residual", rec.solver->primal_residual},
                     {"j5", rec.solver->j5}};
    }
    if (!rec.view_accuracy.empty()) {
      ordered_json va = ordered_json::object();
      for (const auto& [name, acc] : rec.view_accuracy) va[name] = acc;
      o["view_accuracy"] = va;
    }
    if (!rec.forecast.empty()) {
      ordered_json fc = ordered_json::object();
      for (const auto& [name, f] : rec.forecast) fc[name] = {{"imp_mape", f.imp_mape}, {"spend_mape", f.spend_mape}};
      o["forecast"] = fc;
    }
    o["labels"] = rec.labels;
    records.push_back(std::move(o));
  }
  j["records"] = records;

  ordered_json cons = ordered_json::array();
  for (const auto& c : r.consistency) cons.push_back({{"pair", c.pair}, {"tpn", c.tpn}, {"fpn", c.fpn}});
  j["consistency"] = cons;

  ordered_json comps = ordered_json::array();
  for (const auto& c : r.components) comps.push_back({{"view", c.view}, {"alpha", c.alpha}, {"components", c.components}});
  j["components"] = comps;

  if (r.reference) {
    ordered_json acc = ordered_json::object();
    for (const auto& [method, value] : r.reference->accuracy) acc[method] = value;
    j["reference"] = {{"source", "published"}, {"dataset", r.reference->dataset}, {"accuracy", acc}};
  } else {
    j["reference"] = nullptr;
  }
  j["warnings"] = r.warnings;
  return j;
}

EvalReport report_from_json(const nlohmann::ordered_json& j) {
  try {
    EvalReport r;
    r.dataset = j.at("dataset").get<std::string>();
    r.n = j.at("n").get<std::int64_t>();
    r.p = j.at("p").get<std::int64_t>();
    r.k = j.at("k").get<int>();
    r.runs = j.at("runs").get<int>();
    r.corrupt = j.at("corrupt").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.normalize = j.at("normalize").get<bool>();
    for (const auto& s : j.at("summary")) {
      r.summary.push_back({s.at("method").get<std::string>(), s.at("runs").get<int>(), s.at("mean_accuracy").get<double>(),
                           s.at("std_accuracy").get<double>()});
    }
    for (const auto& o : j.at("records")) {
      RunRecord rec;
      rec.method = o.at("method").get<std::string>();
      rec.seed = o.at("seed").get<std::uint64_t>();
      if (!o.at("accuracy").is_null()) rec.accuracy = o.at("accuracy").get<double>();
      if (o.contains("solver")) {
        const auto& s = o.at("solver");
        rec.solver = SolverSummary{s.at("converged").get<bool>(), s.at("iterations").get<int>(),
                                   s.at("primal_residual").get<double>(), s.at("j5").get<double>()};
      }
      if (o.contains("view_accuracy")) {
        for (const auto& [name, v] : o.at("view_accuracy").items()) rec.view_accuracy[name] = v.get<double>();
      }
      if (o.contains("forecast")) {
        for (const auto& [name, v] : o.at("forecast").items()) {
          rec.forecast[name] = {v.at("imp_mape").get<double>(), v.at("spend_mape").get<double>()};
        }
      }
      rec.labels = o.at("labels").get<std::vector<int>>();
      r.records.push_back(std::move(rec));
    }
    for (const auto& c : j.at("consistency")) {
      r.consistency.push_back({c.at("pair").get<std::string>(), c.at("tpn").get<double>(), c.at("fpn").get<double>()});
    }
    for (const auto& c : j.at("components")) {
      r.components.push_back({c.at("view").get<std::string>(), c.at("alpha").get<double>(), c.at("components").get<int>()});
    }
    if (!j.at("reference").is_null()) {
      const auto& ref = j.at("reference");
      ReferenceRow row{ref.at("dataset").get<std::string>(), {}};
      for (const auto& [method, v] : ref.at("accuracy").items()) row.accuracy[method] = v.get<double>();
      r.reference = row;
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed report: ") + e.what());
  }
}

std::string report_table(const EvalReport& r) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "dataset %s  n=%lld p=%lld k=%d runs=%d corrupt=%.2f alpha=%.3f%s\n\n", r.dataset.c_str(),
                static_cast<long long>(r.n), static_cast<long long>(r.p), r.k, r.runs, r.corrupt, r.alpha,
                r.normalize ? " normalized" : "");
  os << buf;

  const auto published = [&](const std::string& method) -> std::string {
    if (!r.reference) return "-";
    static const std::map<std::string, std::string> column{{"kmeans", "k-means"}, {"kc", "KC"}, {"l2cc", "L2CC"}, {"rcc", "RCC"}};
    const auto c = column.find(method);
    if (c == column.end()) return "-";
    std::snprintf(buf, sizeof buf, "%.2f", r.reference->accuracy.at(c->second));
    return buf;
  };

  std::snprintf(buf, sizeof buf, "%-12s %6s %10s %10s %10s\n", "method", "seeds", "mean_acc", "std_acc", "published");
  os << buf;
  for (const auto& s : r.summary) {
    std::snprintf(buf, sizeof buf, "%-12s %6d %10.4f %10.4f %10s\n", s.method.c_str(), s.runs, s.mean_accuracy, s.std_accuracy,
                  published(s.method).c_str());
    os << buf;
  }

  os << '\n';
  std::snprintf(buf, sizeof buf, "%-12s %20s %10s %10s %10s\n", "method", "seed", "accuracy", "iters", "residual");
  os << buf;
  for (const auto& rec : r.records) {
    const std::string acc = rec.accuracy ? (std::snprintf(buf, sizeof buf, "%.4f", *rec.accuracy), std::string(buf)) : "-";
    std::string iters = "-", residual = "-";
    if (rec.solver) {
      iters = std::to_string(rec.solver->iterations) + (rec.solver->converged ? "" : "*");
      std::snprintf(buf, sizeof buf, "%.3e", rec.solver->primal_residual);
      residual = buf;
    }
    std::snprintf(buf, sizeof buf, "%-12s %20llu %10s %10s %10s\n", rec.method.c_str(), static_cast<unsigned long long>(rec.seed),
                  acc.c_str(), iters.c_str(), residual.c_str());
    os << buf;
    for (const auto& [name, f] : rec.forecast) {
      std::snprintf(buf, sizeof buf, "    %-10s imp_mape=%.4f spend_mape=%.4f\n", name.c_str(), f.imp_mape, f.spend_mape);
      os << buf;
    }
  }

  if (!r.consistency.empty()) {
    os << "\nconsistency\n";
    for (const auto& c : r.consistency) {
      std::snprintf(buf, sizeof buf, "  %-22s tpn=%.4f fpn=%.4f\n", c.pair.c_str(), c.tpn, c.fpn);
      os << buf;
    }
  }
  if (!r.components.empty()) {
    os << "\nconnected components\n";
    for (const auto& c : r.components) {
      std::snprintf(buf, sizeof buf, "  %-10s alpha=%.2f  %d\n", c.view.c_str(), c.alpha, c.components);
      os << buf;
    }
  }
  if (r.reference) {
    os << "\npublished accuracies (" << r.reference->dataset << ", reference only)\n ";
    for (const auto& [method, v] : r.reference->accuracy) {
      std::snprintf(buf, sizeof buf, " %s=%.2f", method.c_str(), v);
      os << buf;
    }
    os << '\n';
  }
  for (const auto& w : r.warnings) os << "warning: " << w << '\n';
  return os.str();
}

void emit_report(const EvalReport& r, const std::filesystem::path& stem) {
  const auto base = stem_of(stem);
  if (base.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(base.parent_path(), ec);
    if (ec) throw IoError("cannot create " + base.parent_path().string() + ": " + ec.message());
  }
  auto json_path = base;
  json_path += ".json";
  auto txt_path = base;
  txt_path += ".txt";

  std::ofstream js(json_path, std::ios::binary);
  if (!js) throw IoError("cannot write " + json_path.string());
  js << report_to_json(r).dump(2) << '\n';
  if (!js.flush()) throw IoError("write failed for " + json_path.string());

  std::ofstream txt(txt_path, std::ios::binary);
  if (!txt) throw IoError("cannot write " + txt_path.string());
  txt << report_table(r);
  if (!txt.flush()) throw IoError("write failed for " + txt_path.string());
}

}  // namespace rcc

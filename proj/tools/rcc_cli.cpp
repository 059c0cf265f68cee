#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rcc/benchmark.hpp"
#include "rcc/error.hpp"
#include "rcc/io.hpp"
#include "rcc/solver.hpp"
#include "rcc/synthetic.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

// "0,3,7" or "0-9" or a mix.
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> seeds;
  for (const auto& part : split(text)) {
    try {
      if (const auto dash = part.find('-'); dash != std::string::npos && dash > 0) {
        const auto lo = std::stoull(part.substr(0, dash));
        const auto hi = std::stoull(part.substr(dash + 1));
        if (hi < lo) throw rcc::ConfigError("seed range '" + part + "' is reversed");
        for (auto s = lo; s <= hi; ++s) seeds.push_back(s);
      } else {
        std::size_t used = 0;
        seeds.push_back(std::stoull(part, &used));
        if (used != part.size()) throw std::invalid_argument(part);
      }
    } catch (const std::logic_error&) {
      throw rcc::ConfigError("cannot parse seed '" + part + "'");
    }
  }
  return seeds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust consensus clustering toolkit"};
  app.require_subcommand(1);

  rcc::RunConfig cfg;
  std::string methods = "rcc";
  std::string seeds = "0";
  std::string out;
  auto* bench = app.add_subcommand("bench", "Run a clustering benchmark and write a report");
  bench->add_option("--dataset", cfg.dataset, "CSV file, advertiser directory, blobs:KxN[:R] or ads:SxExM")->required();
  bench->add_option("--method", methods, "Comma-separated list of rcc, l2cc, kc, kmeans, ks-pipeline");
  bench->add_option("--k", cfg.k, "Number of clusters (0 uses the number of true classes)");
  bench->add_option("--runs", cfg.runs, "k-means runs in the ensemble");
  bench->add_option("--corrupt", cfg.corrupt, "Fraction of ensemble views replaced by random labels");
  bench->add_option("--alpha", cfg.alpha, "KS significance level");
  bench->add_option("--seeds", seeds, "Seeds, e.g. 0,1,2 or 0-19");
  bench->add_option("--out", out, "Report stem; writes <stem>.json and <stem>.txt");
  bench->add_flag("--trace", cfg.trace, "Write per-seed ADMM traces next to the report");
  bench->add_flag("--normalize", cfg.normalize, "z-score feature columns");
  bench->add_flag("--normalized-l2", cfg.normalized_l2, "Run l2cc on the degree-normalized co-association");
  bench->add_option("--data-seed", cfg.data_seed, "Seed for synthetic datasets");
  bench->add_option("--max-iter", cfg.max_iter, "ADMM iteration cap");
  bench->add_option("--rho", cfg.rho, "ADMM penalty growth");
  bench->add_option("--mu0", cfg.mu0, "ADMM initial penalty");

  rcc::AdvertiserSpec ads;
  std::string ads_dir;
  auto* gen = app.add_subcommand("generate-ads", "Write a synthetic advertiser population");
  gen->add_option("--out", ads_dir, "Output directory")->required();
  gen->add_option("--segments", ads.segments, "Number of segments");
  gen->add_option("--entities", ads.entities_per_segment, "Entities per segment");
  gen->add_option("--samples", ads.samples_per_entity, "Observations per entity");
  gen->add_option("--textual-noise", ads.textual_noise, "Share of textual labels replaced at random");
  gen->add_option("--seed", ads.seed, "Generator seed");

  rcc::RccConfig solver;
  std::string partitions, labels_out, trace_out;
  auto* cons = app.add_subcommand("consensus", "Solve the robust consensus for a partitions file");
  cons->add_option("--partitions", partitions, "Header-less CSV, one column per base partition")->required();
  cons->add_option("--k", solver.k, "Number of clusters")->required();
  cons->add_option("--seed", solver.seed, "Rounding seed");
  cons->add_option("--max-iter", solver.max_iter, "ADMM iteration cap");
  cons->add_option("--out", labels_out, "Write labels here instead of stdout");
  cons->add_option("--trace", trace_out, "Write the ADMM trace CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*bench) {
      cfg.methods = split(methods);
      cfg.seeds = parse_seeds(seeds);
      cfg.out = out;
      const auto report = rcc::run_benchmark(cfg);
      std::cout << rcc::report_table(report);
    } else if (*gen) {
      rcc::write_advertisers(ads_dir, rcc::generate_synthetic_advertisers(ads));
      std::cout << "wrote " << ads.segments * ads.entities_per_segment << " entities to " << ads_dir << '\n';
    } else if (*cons) {
      solver.validate();
      const auto ensemble = rcc::io::load_partitions(partitions);
      const auto result = rcc::solve(rcc::average_coassociation(ensemble), solver);
      if (!trace_out.empty()) rcc::io::write_trace(trace_out, result.trace);
      if (labels_out.empty()) {
        for (int l : result.labels.labels()) std::cout << l << '\n';
      } else {
        rcc::io::write_labels(labels_out, result.labels);
      }
      std::cerr << (result.converged ? "converged" : "stopped") << " after " << result.trace.size()
                << " iterations, residual " << result.state.primal_residual << '\n';
    }
  } catch (const rcc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const rcc::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const rcc::Error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}

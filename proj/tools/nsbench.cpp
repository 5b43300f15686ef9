#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "nsbench/bench/charts.hpp"
#include "nsbench/bench/config.hpp"
#include "nsbench/bench/harness.hpp"
#include "nsbench/catalog.hpp"
#include "nsbench/errors.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kIo = 2, kRun = 3 };

int run_command(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& out) {
  nsbench::bench::BenchmarkConfig cfg =
      config_path.empty() ? nsbench::bench::default_suite_config() : nsbench::bench::load_config_file(config_path);
  if (seed) cfg.seed = *seed;
  if (!out.empty()) cfg.output_dir = out;

  std::vector<std::string> failures;
  nsbench::bench::HarnessOptions options;
  options.failures = &failures;
  const auto records = nsbench::bench::run_benchmark(cfg, options);
  nsbench::bench::emit_charts(records, cfg.output_dir);
  for (const auto& f : failures) std::cerr << "run failed: " << f << "\n";
  std::cout << "wrote " << records.size() << " trajectories and 2 charts to " << cfg.output_dir << "\n";
  return failures.empty() ? kOk : kRun;
}

int plot_command(const std::string& in, const std::string& figs) {
  std::vector<nsbench::optim::TrajectoryRecord> records;
  try {
    records = nsbench::bench::load_records(in);
  } catch (const nsbench::ParseError& e) {
    throw nsbench::IoError(std::string("malformed trajectory file, ") + e.what());
  }
  if (records.empty()) throw nsbench::IoError("no trajectory files in '" + in + "'");
  nsbench::bench::emit_charts(records, figs);
  std::cout << "wrote 2 charts from " << records.size() << " trajectories to " << figs << "\n";
  return kOk;
}

int list_command() {
  std::cout << "problems:\n";
  for (const auto& p : nsbench::problem_patterns()) std::cout << "  " << p << "\n";
  std::cout << "algorithms:\n";
  for (auto a : nsbench::optim::kAlgorithmNames) std::cout << "  " << a << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonsmooth optimization benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed_value = 0;
  std::string out_dir;
  auto* run = app.add_subcommand("run", "Run a benchmark suite (the built-in default suite without --config)");
  run->add_option("--config", config_path, "JSON suite configuration");
  auto* seed_opt = run->add_option("--seed", seed_value, "Master seed, overrides the config");
  run->add_option("--out", out_dir, "Output directory, overrides the config");

  std::string in_dir;
  std::string figs_dir;
  auto* plot = app.add_subcommand("plot", "Render charts from a directory of trajectory CSV files");
  plot->add_option("--in", in_dir, "Directory of trajectory CSV files")->required();
  plot->add_option("--figs", figs_dir, "Directory for the charts")->required();

  auto* list = app.add_subcommand("list", "List problem forms and algorithm names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) {
      std::optional<std::uint64_t> seed;
      if (seed_opt->count() > 0) seed = seed_value;
      return run_command(config_path, seed, out_dir);
    }
    if (*plot) return plot_command(in_dir, figs_dir);
    if (*list) return list_command();
  } catch (const nsbench::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfig;
  } catch (const nsbench::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kConfig;
  } catch (const nsbench::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRun;
  }
  return kOk;
}

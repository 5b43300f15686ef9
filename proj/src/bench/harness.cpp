#include "nsbench/bench/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include "nsbench/bench/charts.hpp"
#include "nsbench/bench/csv.hpp"
#include "nsbench/catalog.hpp"
#include "nsbench/errors.hpp"

namespace nsbench::bench {

namespace fs = std::filesystem;

std::uint64_t run_seed(std::uint64_t master, std::size_t p, std::size_t a, std::int64_t r) {
  return derive_seed(master, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(r)});
}

std::string csv_file_name(const optim::TrajectoryMeta& meta) {
  return meta.problem + "__" + meta.algorithm + "__r" + std::to_string(meta.repetition) + ".csv";
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("NSBENCH_THREADS"); env != nullptr && *env != '\0') {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (end != nullptr && *end == '\0' && v > 0) n = static_cast<unsigned>(v);
    }
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

namespace {

struct Job {
  std::size_t p;
  std::size_t a;
  std::int64_t r;
};

optim::TrajectoryRecord failed_record(const Problem& problem, std::int64_t budget) {
  WorkClock clock;
  optim::TrajectoryRecorder recorder(clock);
  double f0;
  try {
    f0 = problem.objective->value(problem.x0);
  } catch (const std::exception&) {
    f0 = std::numeric_limits<double>::quiet_NaN();
  }
  recorder.record(0, f0, {});
  recorder.pad_stalled(budget);
  return recorder.take();
}

}  // namespace

std::vector<optim::TrajectoryRecord> run_benchmark(const BenchmarkConfig& config, const HarnessOptions& options) {
  config.validate();
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec || !fs::is_directory(config.output_dir)) throw IoError("cannot create output directory '" + config.output_dir + "'");

  std::vector<Problem> problems;
  problems.reserve(config.problems.size());
  for (const auto& name : config.problems) problems.push_back(make_problem(name, config.seed));

  std::vector<Job> jobs;
  for (std::size_t p = 0; p < problems.size(); ++p)
    for (std::size_t a = 0; a < config.algorithms.size(); ++a)
      for (std::int64_t r = 0; r < config.repetitions; ++r) jobs.push_back({p, a, r});

  std::vector<optim::TrajectoryRecord> records(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};

  auto work = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const Job& job = jobs[j];
      const Problem& problem = problems[job.p];
      const AlgorithmSpec& spec = config.algorithms[job.a];
      const std::uint64_t seed = run_seed(config.seed, job.p, job.a, job.r);
      optim::TrajectoryRecord rec;
      try {
        auto clock = make_clock(config.clock);
        rec = optim::run_algorithm(spec.algorithm, spec.params, problem, config.budget, seed, clock.get()).record;
      } catch (const std::exception& e) {
        rec = failed_record(problem, config.budget);
        errors[j] = problem.name + " / " + std::string(optim::to_string(spec.algorithm)) + " r" +
                    std::to_string(job.r) + ": " + e.what();
      }
      rec.meta.problem = problem.name;
      rec.meta.algorithm = std::string(optim::to_string(spec.algorithm));
      rec.meta.seed = seed;
      rec.meta.repetition = job.r;
      records[j] = std::move(rec);
    }
  };

  const unsigned workers = worker_count(options.workers, jobs.size());
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  for (std::size_t j = 0; j < records.size(); ++j) {
    write_trajectory_csv(records[j], (fs::path(config.output_dir) / csv_file_name(records[j].meta)).string());
    if (!errors[j].empty() && options.failures != nullptr) options.failures->push_back(errors[j]);
  }
  return records;
}

void emit_charts(const std::vector<optim::TrajectoryRecord>& records, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create figure directory '" + dir + "'");
  emit_final_value_chart(records, (fs::path(dir) / kFinalValueChart).string());
  emit_time_chart(records, (fs::path(dir) / kTimeChart).string());
}

std::vector<optim::TrajectoryRecord> load_records(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoError("not a directory: '" + dir + "'");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<optim::TrajectoryRecord> out;
  for (const auto& f : files) {
    try {
      out.push_back(read_trajectory_csv(f.string()));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), f.filename().string() + ": " + e.what());
    }
  }
  return out;
}

}  // namespace nsbench::bench

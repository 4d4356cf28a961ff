#include "dtppo/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace dtppo {

namespace {

double sample_std(std::span<const double> values, double mean) {
  if (values.size() < 2) return 0.0;
  double sum_sq = 0.0;
  for (double v : values) {
    const double d = v - mean;
    sum_sq += d * d;
  }
  return std::sqrt(sum_sq / static_cast<double>(values.size() - 1));
}

}  // namespace

void validate(const ExperimentConfig& config) {
  if (config.runs < 1) throw std::invalid_argument("experiment: runs must be >= 1");
  if (config.episodes < 1)
    throw std::invalid_argument("experiment: episodes must be >= 1");
  if (config.env == EnvKind::maze && config.maze_size < 2)
    throw std::invalid_argument("experiment: maze_size must be >= 2");
  if (config.agent == AgentKind::tlppo && config.env != EnvKind::maze)
    throw std::invalid_argument("tlppo requires env = maze");
  if (config.threads < 0)
    throw std::invalid_argument("experiment: threads must be >= 0");
}

std::uint64_t run_seed(std::uint64_t master_seed, int index) {
  return mix_seed(master_seed, static_cast<std::uint64_t>(index));
}

std::vector<RunRecord> execute_runs(const ExperimentConfig& config) {
  validate(config);

  const int runs = config.runs;
  std::vector<std::vector<RunRecord>> per_run(runs);
  std::atomic<int> next_run{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  const auto worker = [&] {
    while (true) {
      const int i = next_run.fetch_add(1);
      if (i >= runs) return;
      try {
        TrainOptions options = config.options;
        options.episodes = config.episodes;
        const EnvSpec spec{config.env, config.maze_size};
        const TrainResult trained =
            train(config.agent, spec, options, run_seed(config.master_seed, i));
        auto& out = per_run[i];
        out.reserve(trained.episodes.size());
        for (std::size_t e = 0; e < trained.episodes.size(); ++e) {
          const EpisodeRecord& ep = trained.episodes[e];
          out.push_back({i, static_cast<int>(e), ep.accumulated_reward, ep.steps,
                         ep.cumulative_wall_ns});
        }
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  int workers = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, runs);

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);

  std::vector<RunRecord> records;
  for (const auto& chunk : per_run) records.insert(records.end(), chunk.begin(), chunk.end());
  std::sort(records.begin(), records.end(), [](const RunRecord& a, const RunRecord& b) {
    return a.run_id != b.run_id ? a.run_id < b.run_id : a.episode < b.episode;
  });
  return records;
}

void run_experiment(const ExperimentConfig& config) {
  if (config.output_path.empty())
    throw std::invalid_argument("experiment: output path is empty");
  const std::vector<RunRecord> records = execute_runs(config);
  write_run_csv_file(config.output_path, records);
}

std::vector<SummaryRecord> aggregate(std::span<const AgentSeries> inputs) {
  if (inputs.empty()) throw std::invalid_argument("aggregate: no inputs");

  int episode_count = -1;
  std::vector<SummaryRecord> summary;

  for (const AgentSeries& series : inputs) {
    if (series.records.empty())
      throw std::invalid_argument("aggregate: input '" + series.agent + "' is empty");

    // Group rewards per run, ordered by episode within each run.
    std::map<int, std::vector<const RunRecord*>> by_run;
    for (const RunRecord& r : series.records) by_run[r.run_id].push_back(&r);
    for (auto& [run_id, rows] : by_run) {
      std::sort(rows.begin(), rows.end(),
                [](const RunRecord* a, const RunRecord* b) { return a->episode < b->episode; });
      for (std::size_t e = 0; e < rows.size(); ++e)
        if (rows[e]->episode != static_cast<int>(e))
          throw std::invalid_argument("aggregate: run " + std::to_string(run_id) +
                                      " of '" + series.agent +
                                      "' has non-contiguous episodes");
    }

    const int this_count = static_cast<int>(by_run.begin()->second.size());
    for (const auto& [run_id, rows] : by_run)
      if (static_cast<int>(rows.size()) != this_count)
        throw std::invalid_argument("aggregate: episode counts differ across runs in '" +
                                    series.agent + "'");
    if (episode_count == -1) episode_count = this_count;
    if (this_count != episode_count)
      throw std::invalid_argument("aggregate: episode counts differ across inputs");

    double overall_sum = 0.0;
    std::vector<double> all_rewards;
    all_rewards.reserve(series.records.size());
    for (int e = 0; e < episode_count; ++e) {
      std::vector<double> rewards;
      rewards.reserve(by_run.size());
      for (const auto& [run_id, rows] : by_run) rewards.push_back(rows[e]->accumulated_reward);
      double mean = 0.0;
      for (double v : rewards) mean += v;
      mean /= static_cast<double>(rewards.size());
      summary.push_back({series.agent, e, mean, sample_std(rewards, mean), 0.0});
      for (double v : rewards) {
        overall_sum += v;
        all_rewards.push_back(v);
      }
    }

    // Per-agent overall row: mean time per step = total recorded wall time
    // divided by total recorded environment steps.
    std::int64_t total_wall_ns = 0;
    std::int64_t total_steps = 0;
    for (const auto& [run_id, rows] : by_run) {
      std::int64_t run_wall = 0;
      for (const RunRecord* r : rows) {
        run_wall = std::max(run_wall, r->cumulative_wall_time_ns);
        total_steps += r->episode_steps;
      }
      total_wall_ns += run_wall;
    }
    const double overall_mean = overall_sum / static_cast<double>(all_rewards.size());
    const double time_per_step =
        total_steps > 0 ? static_cast<double>(total_wall_ns) / static_cast<double>(total_steps)
                        : 0.0;
    summary.push_back({series.agent, -1, overall_mean,
                       sample_std(all_rewards, overall_mean), time_per_step});
  }
  return summary;
}

}  // namespace dtppo

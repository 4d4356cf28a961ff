#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtppo {

// One CSV row of a run file: one completed episode of one run.
struct RunRecord {
  int run_id = 0;
  int episode = 0;  // 0-based, contiguous within a run
  double accumulated_reward = 0.0;
  int episode_steps = 0;
  std::int64_t cumulative_wall_time_ns = 0;
};

inline constexpr std::string_view kRunCsvHeader =
    "run_id,episode,accumulated_reward,episode_steps,cumulative_wall_time_ns";

inline constexpr std::string_view kSummaryCsvHeader =
    "agent,episode,mean_accumulated_reward,std_accumulated_reward,"
    "mean_time_per_step_ns";

// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

void write_run_csv(std::ostream& out, std::span<const RunRecord> records);
void write_run_csv_file(const std::string& path, std::span<const RunRecord> records);
std::vector<RunRecord> parse_run_csv(std::istream& in);
std::vector<RunRecord> parse_run_csv_file(const std::string& path);

// One row of a summary file. episode == -1 marks the per-agent overall row,
// which carries the all-episode mean reward and the mean wall time per
// environment step; per-episode rows leave the time column empty.
struct SummaryRecord {
  std::string agent;
  int episode = 0;
  double mean_accumulated_reward = 0.0;
  double std_accumulated_reward = 0.0;
  double mean_time_per_step_ns = 0.0;
};

void write_summary_csv(std::ostream& out, std::span<const SummaryRecord> records);
void write_summary_csv_file(const std::string& path,
                            std::span<const SummaryRecord> records);

}  // namespace dtppo

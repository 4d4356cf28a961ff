#include "dtppo/cli.hpp"

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dtppo/experiment.hpp"

namespace dtppo {

namespace {

// One mergeable `run` setting: a config-file key, the CLI option that can
// override it, and a setter that parses the file's text form.
struct ConfigKey {
  std::string key;
  CLI::Option* flag;
  std::function<void(const std::string&)> assign;
};

template <typename T>
T parse_value(const std::string& key, const std::string& text) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw std::runtime_error("config file: bad value '" + text + "' for key '" + key +
                             "'");
  return value;
}

std::string trim(const std::string& text) {
  const std::size_t begin = text.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const std::size_t end = text.find_last_not_of(" \t\r");
  return text.substr(begin, end - begin + 1);
}

// Flat key=value file. Lines that are blank or start with '#' are skipped.
// Values apply only to settings whose flag was absent from the command line;
// unknown keys are rejected.
void apply_config_file(const std::string& path, const std::vector<ConfigKey>& keys) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config file: cannot open " + path);

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string entry = trim(line);
    if (entry.empty() || entry.front() == '#') continue;
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config file: line " + std::to_string(line_number) +
                               " is not key=value");
    const std::string key = trim(entry.substr(0, eq));
    const std::string value = trim(entry.substr(eq + 1));

    const auto match = std::find_if(keys.begin(), keys.end(),
                                    [&](const ConfigKey& k) { return k.key == key; });
    if (match == keys.end())
      throw std::runtime_error("config file: unknown key '" + key + "'");
    if (match->flag != nullptr && match->flag->count() > 0) continue;  // flag wins
    match->assign(value);
  }
}

int do_run(const std::string& env_name, const std::string& agent_name,
           bool maze_size_given, const ExperimentConfig& parsed) {
  if (agent_name == "seppo" || agent_name == "ilppo") {
    std::cerr << "agent '" << agent_name << "' is a reserved name: not implemented\n";
    return 2;
  }

  ExperimentConfig config = parsed;
  config.env = env_kind_from_string(env_name);
  config.agent = agent_kind_from_string(agent_name);

  if (config.env == EnvKind::maze && !maze_size_given)
    throw CLI::ValidationError("--maze-size is required when --env maze");
  if (config.env == EnvKind::cartpole && maze_size_given)
    throw CLI::ValidationError("--maze-size is only valid when --env maze");
  if (config.agent == AgentKind::tlppo && config.env != EnvKind::maze)
    throw CLI::ValidationError("agent tlppo requires --env maze");

  run_experiment(config);
  const long long rows = static_cast<long long>(config.runs) * config.episodes;
  std::cout << "wrote " << config.output_path << " (" << rows << " data rows)\n";
  return 0;
}

int do_report(const std::vector<std::string>& inputs, const std::string& output) {
  std::vector<AgentSeries> series;
  std::set<std::string> seen;
  for (const std::string& path : inputs) {
    AgentSeries s;
    s.agent = std::filesystem::path(path).stem().string();
    if (!seen.insert(s.agent).second)
      throw CLI::ValidationError("duplicate agent label '" + s.agent +
                                 "' derived from --in file names");
    s.records = parse_run_csv_file(path);
    series.push_back(std::move(s));
  }
  const std::vector<SummaryRecord> summary = aggregate(series);
  write_summary_csv_file(output, summary);
  std::cout << "wrote " << output << " (" << summary.size() << " rows)\n";
  return 0;
}

}  // namespace

int cli_main(int argc, char** argv) {
  CLI::App app{"DT-guided PPO laboratory: train agents and aggregate results"};
  app.require_subcommand(1);

  // --- run ---
  CLI::App* run = app.add_subcommand("run", "execute an experiment, write a run CSV");
  std::string env_name;
  std::string agent_name;
  std::string config_path;
  ExperimentConfig config;
  double dt_temperature = config.options.guidance.dt_temperature;

  CLI::Option* env_opt =
      run->add_option("--env", env_name, "environment: cartpole | maze");
  CLI::Option* agent_opt =
      run->add_option("--agent", agent_name, "agent: dt | ppo | dtppo | tlppo");
  CLI::Option* maze_size_opt =
      run->add_option("--maze-size", config.maze_size, "maze side length (maze only)");
  CLI::Option* episodes_opt =
      run->add_option("--episodes", config.episodes, "episodes per run")
          ->capture_default_str();
  CLI::Option* runs_opt =
      run->add_option("--runs", config.runs, "independent runs")->capture_default_str();
  CLI::Option* seed_opt =
      run->add_option("--seed", config.master_seed, "master seed")->capture_default_str();
  CLI::Option* out_opt = run->add_option("--out", config.output_path, "output CSV path");
  CLI::Option* threads_opt =
      run->add_option("--threads", config.threads, "worker threads (0 = hardware)")
          ->capture_default_str();
  CLI::Option* dt_temp_opt =
      run->add_option("--dt-temperature", dt_temperature, "DT softmax temperature")
          ->capture_default_str();
  CLI::Option* decay_opt =
      run->add_option("--decay-steps", config.options.guidance.decay_steps,
                      "guidance weight decay horizon (environment steps)")
          ->capture_default_str();
  CLI::Option* lr_opt =
      run->add_option("--lr", config.options.ppo.learning_rate, "Adam learning rate")
          ->capture_default_str();
  CLI::Option* gamma_opt =
      run->add_option("--gamma", config.options.ppo.gamma, "discount factor")
          ->capture_default_str();
  CLI::Option* clip_opt =
      run->add_option("--clip", config.options.ppo.clip_epsilon, "PPO clipping parameter")
          ->capture_default_str();
  CLI::Option* rollout_opt =
      run->add_option("--rollout-size", config.options.ppo.rollout_size,
                      "transitions per rollout buffer")
          ->capture_default_str();
  CLI::Option* minibatch_opt =
      run->add_option("--minibatch-size", config.options.ppo.minibatch_size,
                      "minibatch size per optimizer step")
          ->capture_default_str();
  run->add_option("--config", config_path,
                  "flat key=value file; flags override file values");

  // --- report ---
  CLI::App* report = app.add_subcommand("report", "aggregate run CSVs into a summary");
  std::vector<std::string> report_inputs;
  std::string report_output;
  report->add_option("--in", report_inputs, "input run CSV (repeatable)")
      ->required()
      ->expected(-1);
  report->add_option("--out", report_output, "output summary CSV path")->required();

  try {
    app.parse(argc, argv);
    if (!run->parsed()) return do_report(report_inputs, report_output);

    bool file_gave_maze_size = false;
    if (!config_path.empty()) {
      const std::vector<ConfigKey> keys = {
          {"env", env_opt, [&](const std::string& v) { env_name = v; }},
          {"agent", agent_opt, [&](const std::string& v) { agent_name = v; }},
          {"maze-size", maze_size_opt,
           [&](const std::string& v) {
             config.maze_size = parse_value<int>("maze-size", v);
             file_gave_maze_size = true;
           }},
          {"episodes", episodes_opt,
           [&](const std::string& v) { config.episodes = parse_value<int>("episodes", v); }},
          {"runs", runs_opt,
           [&](const std::string& v) { config.runs = parse_value<int>("runs", v); }},
          {"seed", seed_opt,
           [&](const std::string& v) {
             config.master_seed = parse_value<std::uint64_t>("seed", v);
           }},
          {"out", out_opt, [&](const std::string& v) { config.output_path = v; }},
          {"threads", threads_opt,
           [&](const std::string& v) { config.threads = parse_value<int>("threads", v); }},
          {"dt-temperature", dt_temp_opt,
           [&](const std::string& v) {
             dt_temperature = parse_value<double>("dt-temperature", v);
           }},
          {"decay-steps", decay_opt,
           [&](const std::string& v) {
             config.options.guidance.decay_steps =
                 parse_value<std::int64_t>("decay-steps", v);
           }},
          {"lr", lr_opt,
           [&](const std::string& v) {
             config.options.ppo.learning_rate = parse_value<double>("lr", v);
           }},
          {"gamma", gamma_opt,
           [&](const std::string& v) {
             config.options.ppo.gamma = parse_value<double>("gamma", v);
           }},
          {"clip", clip_opt,
           [&](const std::string& v) {
             config.options.ppo.clip_epsilon = parse_value<double>("clip", v);
           }},
          {"rollout-size", rollout_opt,
           [&](const std::string& v) {
             config.options.ppo.rollout_size = parse_value<int>("rollout-size", v);
           }},
          {"minibatch-size", minibatch_opt,
           [&](const std::string& v) {
             config.options.ppo.minibatch_size = parse_value<int>("minibatch-size", v);
           }},
      };
      apply_config_file(config_path, keys);
    }

    // Required after merging flag and file sources.
    if (env_name.empty())
      throw CLI::ValidationError("--env is required (flag or config file)");
    if (agent_name.empty())
      throw CLI::ValidationError("--agent is required (flag or config file)");
    if (config.output_path.empty())
      throw CLI::ValidationError("--out is required (flag or config file)");

    const bool maze_size_given = maze_size_opt->count() > 0 || file_gave_maze_size;
    config.options.guidance.dt_temperature = dt_temperature;
    config.options.dt.temperature = dt_temperature;
    return do_run(env_name, agent_name, maze_size_given, config);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace dtppo

#include "dtppo/csv.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dtppo {

namespace {

[[noreturn]] void parse_error(std::size_t line_number, const std::string& detail) {
  throw std::runtime_error("run CSV, line " + std::to_string(line_number) + ": " + detail);
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T parse_number(std::string_view field, std::size_t line_number, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size())
    parse_error(line_number, std::string("bad ") + what + " value '" +
                                 std::string(field) + "'");
  return value;
}

}  // namespace

std::string format_double(double value) {
  std::array<char, 64> buffer{};
  const auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
  return std::string(buffer.data(), ptr);
}

void write_run_csv(std::ostream& out, std::span<const RunRecord> records) {
  out << kRunCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.run_id << ',' << r.episode << ',' << format_double(r.accumulated_reward)
        << ',' << r.episode_steps << ',' << r.cumulative_wall_time_ns << '\n';
  }
}

void write_run_csv_file(const std::string& path, std::span<const RunRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  write_run_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed for output path: " + path);
}

std::vector<RunRecord> parse_run_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("run CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRunCsvHeader)
    throw std::runtime_error("run CSV: unexpected header '" + line + "'");

  std::vector<RunRecord> records;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 5) parse_error(line_number, "expected 5 fields");
    RunRecord r;
    r.run_id = parse_number<int>(fields[0], line_number, "run_id");
    r.episode = parse_number<int>(fields[1], line_number, "episode");
    r.accumulated_reward =
        parse_number<double>(fields[2], line_number, "accumulated_reward");
    r.episode_steps = parse_number<int>(fields[3], line_number, "episode_steps");
    r.cumulative_wall_time_ns =
        parse_number<std::int64_t>(fields[4], line_number, "cumulative_wall_time_ns");
    records.push_back(r);
  }
  return records;
}

std::vector<RunRecord> parse_run_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input path: " + path);
  return parse_run_csv(in);
}

void write_summary_csv(std::ostream& out, std::span<const SummaryRecord> records) {
  out << kSummaryCsvHeader << '\n';
  for (const SummaryRecord& r : records) {
    out << r.agent << ',' << r.episode << ','
        << format_double(r.mean_accumulated_reward) << ','
        << format_double(r.std_accumulated_reward) << ',';
    if (r.episode == -1) out << format_double(r.mean_time_per_step_ns);
    out << '\n';
  }
}

void write_summary_csv_file(const std::string& path,
                            std::span<const SummaryRecord> records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output path: " + path);
  write_summary_csv(out, records);
  out.flush();
  if (!out) throw std::runtime_error("write failed for output path: " + path);
}

}  // namespace dtppo

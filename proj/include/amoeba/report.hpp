#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amoeba {

struct MetricRow {
  std::string name;
  double value = 0.0;
  double stderr_ = 0.0;
  std::int64_t n = 0;
  double tail_bound = 0.0;
  std::string flag;  // "", "vacuous_bound", "tangency_excluded=<k>", ...
};

struct ResolvedConfig {
  std::string command;
  int degree = 0;
  std::int64_t samples = 0;
  double window_T = 0.0;
  int theta_base = 0;
  int grid = 0;
  double kappa = 0.0;
  double torus_x = 0.0;
  double torus_y = 0.0;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out_path;
  std::string format;  // "csv" or "json"
};

struct Report {
  std::string command;
  ResolvedConfig config;
  std::string version;
  std::string timestamp_iso;  // wall-clock data lives only under "timestamp"
  double wall_seconds = 0.0;
  std::optional<double> target;
  std::optional<double> estimate;
  std::optional<double> stderr_;
  std::optional<double> z_score;
  std::vector<MetricRow> metrics;
};

std::string report_to_json(const Report& r);
std::string report_to_csv(const Report& r);

// Writes in the requested format; throws std::ios_base::failure on I/O errors.
void write_report(const Report& r, const std::string& path, const std::string& format);

std::string current_timestamp_iso();

}  // namespace amoeba

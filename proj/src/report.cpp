#include "amoeba/report.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace amoeba {

namespace {

nlohmann::ordered_json config_to_json(const ResolvedConfig& c) {
  return nlohmann::ordered_json{
      {"command", c.command},   {"degree", c.degree},     {"samples", c.samples},
      {"window", c.window_T},   {"theta_base", c.theta_base}, {"grid", c.grid},
      {"kappa", c.kappa},       {"torus_x", c.torus_x},   {"torus_y", c.torus_y},
      {"seed", c.seed},         {"threads", c.threads},   {"out", c.out_path},
      {"format", c.format}};
}

}  // namespace

std::string report_to_json(const Report& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["version"] = r.version;
  // Everything that varies between identical runs lives under "timestamp".
  j["timestamp"] = {{"iso", r.timestamp_iso}, {"wall_seconds", r.wall_seconds}};
  j["config"] = config_to_json(r.config);
  if (r.target) j["target"] = *r.target;
  if (r.estimate) j["estimate"] = *r.estimate;
  if (r.stderr_) j["stderr"] = *r.stderr_;
  if (r.z_score) j["z_score"] = *r.z_score;
  j["metrics"] = nlohmann::ordered_json::array();
  for (const MetricRow& m : r.metrics) {
    j["metrics"].push_back({{"metric", m.name},
                            {"value", m.value},
                            {"stderr", m.stderr_},
                            {"n", m.n},
                            {"tail_bound", m.tail_bound},
                            {"flag", m.flag}});
  }
  return j.dump(2) + "\n";
}

std::string report_to_csv(const Report& r) {
  std::ostringstream out;
  out.precision(17);
  out << "metric,value,stderr,n,tail_bound,flag\n";
  for (const MetricRow& m : r.metrics) {
    out << m.name << ',' << m.value << ',' << m.stderr_ << ',' << m.n << ',' << m.tail_bound
        << ',' << m.flag << '\n';
  }
  return out.str();
}

void write_report(const Report& r, const std::string& path, const std::string& format) {
  const std::string body = format == "csv" ? report_to_csv(r) : report_to_json(r);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("write_report: cannot open " + path);
  out << body;
  if (!out.good()) throw std::ios_base::failure("write_report: write failed for " + path);
}

std::string current_timestamp_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace amoeba

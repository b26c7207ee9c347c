#include "foldloop/config.hpp"

#include <fstream>
#include <set>

#include "foldloop/errors.hpp"

namespace foldloop {

namespace {

Rational read_time(const nlohmann::json& value, const std::string& key) {
  try {
    if (value.is_string()) return parse_rational(value.get<std::string>());
    if (value.is_number()) return parse_rational(value.dump());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(key + ": " + e.what());
  }
  throw ConfigError(key + " must be a number or an exact string");
}

nlohmann::json exact(const Rational& r) { return to_string(r); }

}  // namespace

Config parse_config(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  static const std::set<std::string> known = {"t_loop_ns",    "t_1q_ns",  "t_2q_ns", "t_meas_ns",        "t_int_ns",
                                              "meas_devices", "slack_us", "seed",    "standard_cycle_ns"};
  for (const auto& [key, value] : doc.items())
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);

  Config config;
  TimingParams& p = config.params;
  if (doc.contains("t_loop_ns")) p.t_loop = read_time(doc["t_loop_ns"], "t_loop_ns");
  if (doc.contains("t_1q_ns")) p.t_1q = read_time(doc["t_1q_ns"], "t_1q_ns");
  if (doc.contains("t_2q_ns")) p.t_2q = read_time(doc["t_2q_ns"], "t_2q_ns");
  if (doc.contains("t_meas_ns")) p.t_meas = read_time(doc["t_meas_ns"], "t_meas_ns");
  p.t_int = doc.contains("t_int_ns") ? read_time(doc["t_int_ns"], "t_int_ns") : p.t_loop / Rational(2);
  if (doc.contains("slack_us")) p.slack = read_time(doc["slack_us"], "slack_us") * Rational(1000);
  if (doc.contains("standard_cycle_ns")) p.standard_cycle = read_time(doc["standard_cycle_ns"], "standard_cycle_ns");
  if (doc.contains("meas_devices")) {
    const auto& m = doc["meas_devices"];
    if (!m.is_number_integer()) throw ConfigError("meas_devices must be an integer");
    p.meas_devices = m.get<int>();
  }
  if (doc.contains("seed")) {
    const auto& s = doc["seed"];
    if (!s.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
    config.seed = s.get<std::uint64_t>();
  }
  try {
    p.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config " + path);
  return parse_config(in);
}

nlohmann::json to_json(const Config& config) {
  const TimingParams& p = config.params;
  return {{"t_loop_ns", exact(p.t_loop)},
          {"t_1q_ns", exact(p.t_1q)},
          {"t_2q_ns", exact(p.t_2q)},
          {"t_meas_ns", exact(p.t_meas)},
          {"t_int_ns", exact(p.t_int)},
          {"meas_devices", p.meas_devices},
          {"slack_us", exact(p.slack / Rational(1000))},
          {"standard_cycle_ns", exact(p.standard_cycle)},
          {"seed", config.seed}};
}

nlohmann::json report_header(const std::string& command, const Config& config) {
  return {{"schema_version", kSchemaVersion}, {"command", command}, {"config", to_json(config)}};
}

}  // namespace foldloop

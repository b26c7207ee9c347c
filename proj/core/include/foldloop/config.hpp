#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "foldloop/timing.hpp"

namespace foldloop {

inline constexpr int kSchemaVersion = 1;

// Bad keys or values in an otherwise well-formed config document.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Config {
  TimingParams params;
  std::uint64_t seed = 0;
};

// Flat JSON object. Keys: t_loop_ns, t_1q_ns, t_2q_ns, t_meas_ns, t_int_ns,
// meas_devices, slack_us, seed, standard_cycle_ns. Absent keys keep the
// silicon defaults; t_int_ns defaults to t_loop_ns / 2. Times are numbers or
// exact strings such as "1/3". Throws ParseError on malformed JSON and
// ConfigError on unknown keys, wrong types, or invalid values.
Config parse_config(std::istream& in);
Config load_config(const std::string& path);

nlohmann::json to_json(const Config& config);

// {"schema_version": 1, "command": ..., "config": ...}
nlohmann::json report_header(const std::string& command, const Config& config);

}  // namespace foldloop

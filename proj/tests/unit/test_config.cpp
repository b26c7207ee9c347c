#include <gtest/gtest.h>

#include <sstream>

#include "foldloop/config.hpp"
#include "foldloop/errors.hpp"

using namespace foldloop;

namespace {
Config parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}
}  // namespace

TEST(Config, EmptyObjectKeepsSiliconDefaults) {
  Config c = parse("{}");
  EXPECT_EQ(c.params.t_loop, Rational(400));
  EXPECT_EQ(c.params.t_1q, Rational(200));
  EXPECT_EQ(c.params.t_2q, Rational(100));
  EXPECT_EQ(c.params.t_meas, Rational(1000));
  EXPECT_EQ(c.params.t_int, Rational(200));
  EXPECT_EQ(c.params.meas_devices, 3);
  EXPECT_EQ(c.params.slack, Rational(500));
}

TEST(Config, ReadsExactValues) {
  Config c = parse(R"({"t_loop_ns": 500, "t_2q_ns": "1/3", "slack_us": 0.25, "meas_devices": 4, "seed": 9})");
  EXPECT_EQ(c.params.t_loop, Rational(500));
  EXPECT_EQ(c.params.t_int, Rational(250));
  EXPECT_EQ(c.params.t_2q, Rational(1, 3));
  EXPECT_EQ(c.params.slack, Rational(250));
  EXPECT_EQ(c.params.meas_devices, 4);
  EXPECT_EQ(c.seed, 9u);
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse("{"), ParseError);
  EXPECT_THROW(parse("[1]"), ConfigError);
  EXPECT_THROW(parse(R"({"t_meas_ns": -1})"), ConfigError);
  EXPECT_THROW(parse(R"({"t_loop_ns": 0})"), ConfigError);
  EXPECT_THROW(parse(R"({"t_loop": 400})"), ConfigError);
  EXPECT_THROW(parse(R"({"meas_devices": 1.5})"), ConfigError);
  EXPECT_THROW(parse(R"({"t_1q_ns": true})"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/config.json"), ParseError);
}

TEST(Config, ReportHeaderCarriesSchemaVersion) {
  nlohmann::json h = report_header("table1", Config{});
  EXPECT_EQ(h["schema_version"], kSchemaVersion);
  EXPECT_EQ(h["command"], "table1");
  EXPECT_EQ(h["config"]["t_loop_ns"], "400");
}

#pragma once

// JSON run configuration. Every object is checked for unknown keys and a
// ConfigError names the offending field.
//
// 1D:     {"schema": 1, "a", "b", "lambda", "theta" | "nu", "f", "m"}
// radial: {"schema": 1, "n", "r2", "r1", "lambda", "nu", "f", "m"}
//
// Profiles: {"preset": "constant", "value"}
//           {"preset": "sine" | "cosine", "amplitude", "frequency", "phase"}
//           {"preset": "polynomial", "coefficients", "lowest_power"}
//           {"samples": [...]}   (nodes of the run grid, m + 1 values)

#include <cstddef>
#include <string>

#include <json.hpp>

#include "dwell/problem.hpp"
#include "dwell/radial.hpp"

namespace dwell {

inline constexpr int kConfigSchema = 1;

struct ProblemConfig {
  Problem problem;
  std::size_t intervals = kDefaultIntervals;
};

struct RadialConfig {
  RadialProblem problem;
  std::size_t intervals = kDefaultIntervals;
};

bool is_radial_config(const nlohmann::json& doc);

ProblemConfig parse_problem_config(const nlohmann::json& doc);
RadialConfig parse_radial_config(const nlohmann::json& doc);

// Reads and parses the file; ConfigError on I/O or JSON syntax errors.
nlohmann::json read_config_file(const std::string& path);

}  // namespace dwell

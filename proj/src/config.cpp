#include "dwell/config.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "dwell/errors.hpp"

namespace dwell {
namespace {

using nlohmann::json;

void require_object(const json& doc, const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be a JSON object");
}

void reject_unknown(const json& doc, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  for (const auto& item : doc.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw ConfigError("unknown field '" + item.key() + "' in " + where);
  }
}

double number(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw ConfigError("missing field '" + std::string(key) + "' in " + where);
  const json& value = doc.at(key);
  if (!value.is_number()) throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a number");
  const double out = value.get<double>();
  if (!std::isfinite(out)) throw ConfigError("field '" + std::string(key) + "' must be finite");
  return out;
}

double number_or(const json& doc, const char* key, double fallback, const std::string& where) {
  return doc.contains(key) ? number(doc, key, where) : fallback;
}

long long integer(const json& doc, const char* key, const std::string& where) {
  const json& value = doc.at(key);
  if (!value.is_number_integer()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be an integer");
  }
  return value.get<long long>();
}

void check_schema(const json& doc) {
  if (!doc.contains("schema")) throw ConfigError("missing field 'schema'");
  if (integer(doc, "schema", "config") != kConfigSchema) {
    throw ConfigError("unsupported schema version (expected 1)");
  }
}

std::size_t read_intervals(const json& doc) {
  if (!doc.contains("m")) return kDefaultIntervals;
  const long long m = integer(doc, "m", "config");
  if (m < 8 || m % 2 != 0) throw ConfigError("field 'm' must be an even integer >= 8");
  return static_cast<std::size_t>(m);
}

std::vector<double> number_array(const json& doc, const char* key, const std::string& where) {
  const json& value = doc.at(key);
  if (!value.is_array() || value.empty()) {
    throw ConfigError("field '" + std::string(key) + "' in " + where + " must be a non-empty array");
  }
  std::vector<double> out;
  for (const json& item : value) {
    if (!item.is_number()) throw ConfigError("entries of '" + std::string(key) + "' must be numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

Profile parse_profile(const json& doc, const Grid& grid, const std::string& where) {
  if (doc.is_number()) return Profile::constant(doc.get<double>());
  require_object(doc, where);
  if (doc.contains("samples")) {
    reject_unknown(doc, {"samples"}, where);
    std::vector<double> values = number_array(doc, "samples", where);
    if (values.size() != grid.size()) {
      throw ConfigError(where + ".samples must hold m + 1 = " + std::to_string(grid.size()) + " values");
    }
    return Profile::samples(grid, std::move(values));
  }
  if (!doc.contains("preset") || !doc.at("preset").is_string()) {
    throw ConfigError(where + " needs a string 'preset' or a 'samples' array");
  }
  const std::string preset = doc.at("preset").get<std::string>();
  if (preset == "constant") {
    reject_unknown(doc, {"preset", "value"}, where);
    return Profile::constant(number(doc, "value", where));
  }
  if (preset == "sine" || preset == "cosine") {
    reject_unknown(doc, {"preset", "amplitude", "frequency", "phase"}, where);
    const double amplitude = number(doc, "amplitude", where);
    const double frequency = number_or(doc, "frequency", 1.0, where);
    const double phase = number_or(doc, "phase", 0.0, where);
    return preset == "sine" ? Profile::sine(amplitude, frequency, phase)
                            : Profile::cosine(amplitude, frequency, phase);
  }
  if (preset == "polynomial") {
    reject_unknown(doc, {"preset", "coefficients", "lowest_power"}, where);
    const int lowest = doc.contains("lowest_power") ? static_cast<int>(integer(doc, "lowest_power", where)) : 0;
    return Profile::polynomial(number_array(doc, "coefficients", where), lowest);
  }
  throw ConfigError("unknown preset '" + preset + "' in " + where);
}

template <class Fn>
auto wrap_domain(Fn&& fn) {
  try {
    return fn();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  } catch (const GridMismatch& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

bool is_radial_config(const nlohmann::json& doc) { return doc.is_object() && doc.contains("r2"); }

ProblemConfig parse_problem_config(const nlohmann::json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, {"schema", "a", "b", "lambda", "theta", "nu", "f", "m"}, "config");
  check_schema(doc);
  if (doc.contains("theta") && doc.contains("nu")) throw ConfigError("give either 'theta' or 'nu', not both");
  if (!doc.contains("f")) throw ConfigError("missing field 'f'");
  const double a = number(doc, "a", "config");
  const double b = number(doc, "b", "config");
  const double lambda = number(doc, "lambda", "config");
  const std::size_t m = read_intervals(doc);
  return wrap_domain([&] {
    const Grid grid(a, b, m);
    Profile theta = Profile::constant(1.0);
    if (doc.contains("theta")) theta = parse_profile(doc.at("theta"), grid, "theta");
    if (doc.contains("nu")) theta = Profile::constant(number(doc, "nu", "config"));
    Profile forcing = parse_profile(doc.at("f"), grid, "f");
    return ProblemConfig{make_problem(a, b, lambda, std::move(theta), std::move(forcing)), m};
  });
}

RadialConfig parse_radial_config(const nlohmann::json& doc) {
  require_object(doc, "config");
  reject_unknown(doc, {"schema", "n", "r2", "r1", "lambda", "nu", "f", "m"}, "config");
  check_schema(doc);
  if (!doc.contains("n")) throw ConfigError("missing field 'n'");
  if (!doc.contains("f")) throw ConfigError("missing field 'f'");
  const long long n = integer(doc, "n", "config");
  if (n < 1 || n > 64) throw ConfigError("field 'n' must lie in [1, 64]");
  const double r2 = number(doc, "r2", "config");
  const double r1 = number(doc, "r1", "config");
  const double lambda = number(doc, "lambda", "config");
  const double nu = number_or(doc, "nu", 1.0, "config");
  const std::size_t m = read_intervals(doc);
  return wrap_domain([&] {
    const Grid grid(r2, r1, m);
    Profile forcing = parse_profile(doc.at("f"), grid, "f");
    return RadialConfig{make_radial_problem(static_cast<int>(n), r2, r1, lambda, nu, std::move(forcing)), m};
  });
}

nlohmann::json read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  try {
    return nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON in '") + path + "': " + e.what());
  }
}

}  // namespace dwell

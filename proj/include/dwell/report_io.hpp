#pragma once

// JSON and CSV serialization of reports. Doubles are written in shortest
// round-trip form, so fixed inputs give byte-identical files.

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dwell/extremum_probe.hpp"
#include "dwell/problem.hpp"
#include "dwell/radial.hpp"

namespace dwell {

inline constexpr const char* kVersion = "0.1.0";

nlohmann::ordered_json to_json(const ValidationReport& report);
nlohmann::ordered_json to_json(const Certificate& certificate);
nlohmann::ordered_json to_json(const ProbeReport& report);
nlohmann::ordered_json to_json(const AssertionSummary& summary);
nlohmann::ordered_json to_json(const RadialRefutation& refutation);
nlohmann::ordered_json endpoint_table(const Candidates& candidates, const GridFunction& stationary);

// series,index,x_or_n,value_1,value_2,bound,verdict
void write_probe_csv(std::ostream& out, const ProbeReport& report);

// Header row then one row per node; all columns share the grid of the first.
void write_table_csv(std::ostream& out, const std::vector<std::string>& headers,
                     const std::vector<const GridFunction*>& columns);

std::string format_double(double value);
std::string csv_field(const std::string& text);

}  // namespace dwell

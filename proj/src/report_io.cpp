#include "dwell/report_io.hpp"

#include <charconv>
#include <cmath>

#include "dwell/errors.hpp"

namespace dwell {
namespace {

using ojson = nlohmann::ordered_json;

ojson optional_number(const std::optional<double>& value) {
  return value ? ojson(*value) : ojson(nullptr);
}

ojson finite_or_null(double value) { return std::isfinite(value) ? ojson(value) : ojson(nullptr); }

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

ojson to_json(const ValidationReport& r) {
  return ojson{{"all_ok", r.all_ok()},
               {"balance", {{"ok", r.balance_ok}, {"integral", r.balance_integral}, {"tolerance", r.balance_tolerance}}},
               {"sign", {{"ok", r.sign_ok}, {"potential_sign", r.potential_sign}}},
               {"l1", {{"ok", r.l1_ok}, {"norm", r.l1_norm}, {"bound", r.l1_bound}}},
               {"finf",
                {{"ok", r.finf_ok},
                 {"potential_sup", r.potential_sup},
                 {"scaled_potential_sup", r.scaled_potential_sup},
                 {"bound", r.finf_bound}}},
               {"forcing_zero_crossings", r.forcing_zero_crossings},
               {"analytic", r.analytic}};
}

ojson to_json(const Certificate& c) {
  return ojson{{"gamma_bar", c.gamma_bar}, {"eta", c.eta}, {"epsilon", c.epsilon}, {"lambda", c.lambda}};
}

ojson to_json(const ProbeReport& r) {
  ojson samples = ojson::array();
  for (const ProbeSample& s : r.samples) {
    samples.push_back(ojson{{"series", s.series},
                            {"index", s.index},
                            {"x_or_n", finite_or_null(s.x_or_n)},
                            {"value_1", finite_or_null(s.value_1)},
                            {"value_2", finite_or_null(s.value_2)},
                            {"bound", finite_or_null(s.bound)},
                            {"ok", s.ok}});
  }
  return ojson{{"mode", to_string(r.mode)},
               {"exponent", r.exponent},
               {"passed", r.passed},
               {"maximizer_status", r.maximizer_status},
               {"rule", r.rule},
               {"gamma_exp", optional_number(r.gamma_exp)},
               {"fitted_slope", optional_number(r.fitted_slope)},
               {"expected_slope", optional_number(r.expected_slope)},
               {"slope_tolerance", optional_number(r.slope_tolerance)},
               {"n_star", optional_number(r.n_star)},
               {"notes", r.notes},
               {"samples", std::move(samples)}};
}

ojson to_json(const AssertionSummary& summary) {
  ojson checks = ojson::array();
  for (const AssertionCheck& c : summary.checks) {
    checks.push_back(ojson{{"name", c.name},
                           {"holds", c.holds},
                           {"admissible", c.admissible},
                           {"endpoint_a", c.endpoint_a},
                           {"endpoint_b", c.endpoint_b},
                           {"deviation_from_stationary", c.deviation},
                           {"reason", c.reason}});
  }
  return ojson{{"assertions_true", summary.assertions_true},
               {"assertions_false", summary.assertions_false},
               {"checks", std::move(checks)}};
}

ojson endpoint_table(const Candidates& candidates, const GridFunction& stationary) {
  const std::size_t last = stationary.size() - 1;
  auto row = [&](const char* name, const GridFunction& v) {
    return ojson{{"profile", name}, {"at_a", v[0]}, {"at_b", v[last]}, {"in_c0", v.in_c0()}};
  };
  return ojson::array({row("v1", candidates.v1), row("v2", candidates.v2), row("v3", candidates.v3),
                       row("stationary", stationary)});
}

ojson to_json(const RadialRefutation& r) {
  return ojson{{"passed", r.passed},
               {"validation", to_json(r.validation)},
               {"certificate", to_json(r.certificate)},
               {"potential_sign", r.candidates.potential_sign},
               {"convention_gap", r.convention_gap},
               {"endpoints", endpoint_table(r.candidates, r.stationary)},
               {"assertions", to_json(r.assertions)},
               {"sup_probe", to_json(r.sup_probe)},
               {"lp_probe", to_json(r.lp_probe)}};
}

void write_probe_csv(std::ostream& out, const ProbeReport& report) {
  out << "series,index,x_or_n,value_1,value_2,bound,verdict\r\n";
  for (const ProbeSample& s : report.samples) {
    out << csv_field(s.series) << ',' << s.index << ',' << format_double(s.x_or_n) << ','
        << format_double(s.value_1) << ',' << format_double(s.value_2) << ',' << format_double(s.bound)
        << ',' << (s.ok ? "pass" : "fail") << "\r\n";
  }
}

void write_table_csv(std::ostream& out, const std::vector<std::string>& headers,
                     const std::vector<const GridFunction*>& columns) {
  if (columns.empty() || headers.size() != columns.size() + 1) {
    throw std::invalid_argument("table needs one header per column plus the node column");
  }
  for (const GridFunction* column : columns) require_same_grid(*columns.front(), *column);
  for (std::size_t j = 0; j < headers.size(); ++j) out << (j ? "," : "") << csv_field(headers[j]);
  out << "\r\n";
  const Grid& grid = columns.front()->grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid.node(i));
    for (const GridFunction* column : columns) out << ',' << format_double((*column)[i]);
    out << "\r\n";
  }
}

}  // namespace dwell

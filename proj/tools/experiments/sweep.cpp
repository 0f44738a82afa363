#include "sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

#include "format.hpp"
#include "quill/errors.hpp"
#include "quill/illumination.hpp"
#include "quill/photon_stats.hpp"

namespace quill::experiments {

using json = nlohmann::json;

namespace {

void check_grid(const LogGrid& g) {
  if (g.count == 0) throw ParameterError("grid: empty grid (count = 0)");
  if (!(g.min > 0.0) || !std::isfinite(g.max)) {
    throw ParameterError("grid: bounds must be positive and finite");
  }
  if (g.count == 1 ? g.min != g.max : !(g.max > g.min)) {
    throw ParameterError("grid: max must exceed min");
  }
}

double parse_number(std::string_view field, std::string_view what) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw ParameterError("grid: cannot parse " + std::string(what) + " '" +
                         std::string(field) + "'");
  }
  return v;
}

} // namespace

LogGrid parse_grid(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw ParameterError("grid: expected MIN:MAX:COUNT, got '" + std::string(text) + "'");
  }
  LogGrid g;
  g.min = parse_number(text.substr(0, c1), "MIN");
  g.max = parse_number(text.substr(c1 + 1, c2 - c1 - 1), "MAX");
  const double count = parse_number(text.substr(c2 + 1), "COUNT");
  if (count < 0 || count != std::floor(count)) {
    throw ParameterError("grid: COUNT must be a non-negative integer");
  }
  g.count = static_cast<std::size_t>(count);
  check_grid(g);
  return g;
}

std::vector<double> grid_points(const LogGrid& g) {
  check_grid(g);
  std::vector<double> pts(g.count);
  if (g.count == 1) {
    pts[0] = g.min;
    return pts;
  }
  const double lo = std::log10(g.min);
  const double step = (std::log10(g.max) - lo) / static_cast<double>(g.count - 1);
  for (std::size_t i = 0; i < g.count; ++i) {
    pts[i] = std::pow(10.0, lo + step * static_cast<double>(i));
  }
  pts.front() = g.min;
  pts.back() = g.max;
  return pts;
}

namespace {

const json& require(const json& j, const char* key) {
  if (!j.contains(key)) throw ParameterError(std::string("sweep spec: missing key '") + key + "'");
  return j.at(key);
}

Scenario scenario_field(const json& j, const char* key, SourceKind expected) {
  const json& v = require(j, key);
  if (!v.is_object()) {
    throw ParameterError(std::string("sweep spec: key '") + key + "' must be an object");
  }
  Scenario s;
  try {
    s = scenario_from_json(v.dump());
  } catch (const ParameterError& e) {
    throw ParameterError(std::string("sweep spec: key '") + key + "': " + e.what());
  }
  if (s.source_kind != expected) {
    throw ParameterError(std::string("sweep spec: key '") + key + "' must have source_kind \"" +
                         std::string(to_string(expected)) + "\"");
  }
  return s;
}

} // namespace

SweepSpec sweep_spec_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("sweep spec: JSON parse error: ") + e.what());
  }
  if (!j.is_object()) throw ParameterError("sweep spec: top level must be an object");
  for (const auto& item : j.items()) {
    const auto& k = item.key();
    if (k != "twb" && k != "thb" && k != "sweep" && k != "grid" && k != "outputs") {
      throw ParameterError("sweep spec: unknown key '" + k + "'");
    }
  }

  SweepSpec spec;
  spec.twb = scenario_field(j, "twb", SourceKind::twb);
  spec.thb = scenario_field(j, "thb", SourceKind::thb);

  if (j.contains("sweep")) {
    const auto& v = j.at("sweep");
    if (!v.is_string() || v.get<std::string>() != "N_beta") {
      throw ParameterError("sweep spec: key 'sweep' must be \"N_beta\"");
    }
  }

  const json& grid = require(j, "grid");
  if (!grid.is_object()) throw ParameterError("sweep spec: key 'grid' must be an object");
  for (const auto& item : grid.items()) {
    const auto& k = item.key();
    if (k != "count" && k != "min" && k != "max") {
      throw ParameterError("sweep spec: unknown key 'grid." + k + "'");
    }
  }
  for (const char* k : {"count", "min", "max"}) {
    if (!grid.contains(k) || !grid.at(k).is_number()) {
      throw ParameterError(std::string("sweep spec: key 'grid.") + k + "' must be a number");
    }
  }
  const double count = grid.at("count").get<double>();
  if (count < 0 || count != std::floor(count)) {
    throw ParameterError("sweep spec: key 'grid.count' must be a non-negative integer");
  }
  spec.grid.count = static_cast<std::size_t>(count);
  spec.grid.min = grid.at("min").get<double>();
  spec.grid.max = grid.at("max").get<double>();
  try {
    check_grid(spec.grid);
  } catch (const ParameterError& e) {
    throw ParameterError(std::string("sweep spec: key 'grid': ") + e.what());
  }

  if (j.contains("outputs")) {
    const auto& out = j.at("outputs");
    if (!out.is_array()) throw ParameterError("sweep spec: key 'outputs' must be an array");
    for (const auto& col : out) {
      if (!col.is_string() ||
          std::find(kSweepColumns.begin(), kSweepColumns.end(), col.get<std::string>()) ==
              kSweepColumns.end()) {
        throw ParameterError("sweep spec: key 'outputs': unknown column " + col.dump());
      }
      spec.outputs.push_back(col.get<std::string>());
    }
  }
  return spec;
}

SweepSpec figure2_spec() {
  SweepSpec spec;
  spec.twb.source_kind = SourceKind::twb;
  spec.twb.N = 4000;
  spec.twb.M = 90000;
  spec.twb.M_beta = 50;
  spec.twb.eta = 0.38;
  spec.twb.eta_beta = 0.5;
  spec.thb = spec.twb;
  spec.thb.source_kind = SourceKind::thb;
  return spec;
}

SweepSpec figure3_spec() {
  SweepSpec spec = figure2_spec();
  spec.twb.N = 4232;
  spec.thb.N = 3278;
  spec.twb.M_beta = spec.thb.M_beta = 1300;
  return spec;
}

double SweepRow::column(std::string_view name) const {
  if (name == "N_beta") return N_beta;
  if (name == "SNR_TWB") return snr_twb;
  if (name == "SNR_THB") return snr_thb;
  if (name == "MI_TWB") return mi_twb;
  if (name == "MI_THB") return mi_thb;
  if (name == "R_SNR") return r_snr;
  if (name == "R_MI") return r_mi;
  if (name == "asymptote") return asymptote;
  throw ParameterError("unknown sweep column '" + std::string(name) + "'");
}

SweepTable run_sweep(const SweepSpec& spec) {
  SweepTable table;
  if (spec.outputs.empty()) {
    table.columns.assign(kSweepColumns.begin(), kSweepColumns.end());
  } else {
    table.columns = spec.outputs;
  }

  const double asymptote = illumination::asymptotic_ratio(spec.twb, spec.thb);
  for (double nb : grid_points(spec.grid)) {
    Scenario twb = spec.twb;
    Scenario thb = spec.thb;
    twb.N_beta = thb.N_beta = nb;

    SweepRow row;
    row.N_beta = nb;
    row.snr_twb = photon_stats::snr(twb);
    row.snr_thb = photon_stats::snr(thb);
    row.mi_twb = illumination::mutual_info(twb);
    row.mi_thb = illumination::mutual_info(thb);
    row.r_snr = photon_stats::snr_ratio(twb, thb).ratio;
    row.r_mi = illumination::mi_ratio(twb, thb);
    row.asymptote = asymptote;
    table.rows.push_back(row);
  }
  return table;
}

void write_csv(std::ostream& out, const SweepTable& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
      out << (i ? "," : "") << format_double(row.column(table.columns[i]));
    }
    out << '\n';
  }
}

} // namespace quill::experiments

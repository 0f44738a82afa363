#include "quill/scenario.hpp"

#include <array>
#include <cmath>

#include "json.hpp"
#include "quill/errors.hpp"

namespace quill {

using nlohmann::json;

std::string_view to_string(SourceKind kind) noexcept {
  return kind == SourceKind::twb ? "TWB" : "THB";
}

SourceKind source_kind_from_string(std::string_view text) {
  if (text == "TWB" || text == "twb") {
    return SourceKind::twb;
  }
  if (text == "THB" || text == "thb") {
    return SourceKind::thb;
  }
  throw ParameterError("source_kind must be \"TWB\" or \"THB\", got \"" +
                       std::string(text) + "\"");
}

void validate(const Scenario& s) {
  auto fail = [](const std::string& msg) { throw ParameterError(msg); };
  if (!std::isfinite(s.N) || s.N < 0.0) fail("N must be finite and >= 0");
  if (!std::isfinite(s.N_beta) || s.N_beta < 0.0)
    fail("N_beta must be finite and >= 0");
  if (s.M < 1) fail("M must be >= 1");
  if (s.M_beta < 0) fail("M_beta must be >= 0");
  if (!(s.eta > 0.0 && s.eta <= 1.0)) fail("eta must lie in (0, 1]");
  if (!(s.eta_beta > 0.0 && s.eta_beta <= 1.0))
    fail("eta_beta must lie in (0, 1]");
  if (!(s.tau >= 0.0 && s.tau <= 1.0)) fail("tau must lie in [0, 1]");
  if (s.N_pix < 1) fail("N_pix must be >= 1");
  if (s.M_beta == 0 && s.N_beta > 0.0)
    fail("N_beta > 0 requires at least one bath mode (M_beta >= 1)");
}

ModeOccupation mu_per_mode(const Scenario& s) {
  validate(s);
  ModeOccupation occ;
  occ.mu1 = s.N / (s.eta * static_cast<double>(s.M));
  occ.mu_beta = s.M_beta == 0
                    ? 0.0
                    : s.N_beta / (s.eta_beta * static_cast<double>(s.M_beta));
  return occ;
}

namespace {

constexpr std::array<std::string_view, 10> kFields{
    "source_kind", "N",   "M",   "N_beta",         "M_beta",
    "eta",         "eta_beta", "tau", "object_present", "N_pix"};

double number_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) {
    throw ParameterError(std::string("scenario key '") + key +
                         "' must be a number");
  }
  return v.get<double>();
}

std::int64_t integer_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) {
    return v.get<std::int64_t>();
  }
  if (v.is_number_float()) {
    const double x = v.get<double>();
    if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
      return static_cast<std::int64_t>(x);
    }
  }
  throw ParameterError(std::string("scenario key '") + key +
                       "' must be an integer");
}

} // namespace

Scenario scenario_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParameterError(std::string("scenario JSON parse error: ") + e.what());
  }
  if (!j.is_object()) {
    throw ParameterError("scenario JSON must be an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (auto f : kFields) known = known || item.key() == f;
    if (!known) {
      throw ParameterError("unknown scenario key '" + item.key() + "'");
    }
  }
  for (const char* key :
       {"source_kind", "N", "M", "N_beta", "M_beta", "eta", "eta_beta"}) {
    if (!j.contains(key)) {
      throw ParameterError(std::string("missing scenario key '") + key + "'");
    }
  }

  Scenario s;
  if (!j.at("source_kind").is_string()) {
    throw ParameterError("scenario key 'source_kind' must be a string");
  }
  s.source_kind = source_kind_from_string(j.at("source_kind").get<std::string>());
  s.N = number_field(j, "N");
  s.M = integer_field(j, "M");
  s.N_beta = number_field(j, "N_beta");
  s.M_beta = integer_field(j, "M_beta");
  s.eta = number_field(j, "eta");
  s.eta_beta = number_field(j, "eta_beta");
  if (j.contains("tau")) s.tau = number_field(j, "tau");
  if (j.contains("object_present")) {
    if (!j.at("object_present").is_boolean()) {
      throw ParameterError("scenario key 'object_present' must be a boolean");
    }
    s.object_present = j.at("object_present").get<bool>();
  }
  if (j.contains("N_pix")) s.N_pix = integer_field(j, "N_pix");
  validate(s);
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  json j = json::object();
  j["source_kind"] = std::string(to_string(s.source_kind));
  j["N"] = s.N;
  j["M"] = s.M;
  j["N_beta"] = s.N_beta;
  j["M_beta"] = s.M_beta;
  j["eta"] = s.eta;
  j["eta_beta"] = s.eta_beta;
  j["tau"] = s.tau;
  j["object_present"] = s.object_present;
  j["N_pix"] = s.N_pix;
  return j.dump();
}

} // namespace quill

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace quill {

enum class SourceKind {
  twb, ///< twin beams (two-mode squeezed vacuum per mode pair)
  thb, ///< correlated thermal beams (thermal beam split 50:50)
};

std::string_view to_string(SourceKind kind) noexcept;
SourceKind source_kind_from_string(std::string_view text);

/// One illumination configuration, all quantities per pixel.
struct Scenario {
  SourceKind source_kind = SourceKind::twb;
  double N = 0.0;            ///< mean detected illuminating photons at the reference pixel
  std::int64_t M = 1;        ///< source modes per pixel
  double N_beta = 0.0;       ///< mean detected bath photons per pixel
  std::int64_t M_beta = 0;   ///< bath modes per pixel
  double eta = 1.0;          ///< detection efficiency of the illuminating light
  double eta_beta = 1.0;     ///< detection efficiency of the bath light
  double tau = 0.5;          ///< object power reflectivity
  bool object_present = true;
  std::int64_t N_pix = 80;   ///< pixel pairs per frame

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Throws ParameterError naming the first violated constraint.
void validate(const Scenario& s);

struct ModeOccupation {
  double mu1 = 0.0;     ///< mean photons per source mode, N / (eta M)
  double mu_beta = 0.0; ///< mean photons per bath mode, N_beta / (eta_beta M_beta)
};

/// Per-mode mean photon numbers at the source. mu_beta is 0 for an empty
/// bath (M_beta = 0 and N_beta = 0).
ModeOccupation mu_per_mode(const Scenario& s);

/// Scenario JSON: one object with exactly the Scenario field names.
/// source_kind is "TWB" or "THB"; tau, object_present and N_pix are optional.
/// Unknown keys and missing required keys raise ParameterError.
Scenario scenario_from_json(std::string_view text);
std::string scenario_to_json(const Scenario& s);

} // namespace quill

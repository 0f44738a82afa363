#pragma once

// N_beta sweeps of the analytic SNR and mutual-information curves.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "quill/scenario.hpp"

namespace quill::experiments {

struct LogGrid {
  std::size_t count = 60;
  double min = 10.0;
  double max = 1e7;
};

/// Parses "MIN:MAX:COUNT". Throws ParameterError.
LogGrid parse_grid(std::string_view text);

/// count log-spaced points, first and last exactly min and max.
std::vector<double> grid_points(const LogGrid& g);

inline constexpr std::array<std::string_view, 8> kSweepColumns{
    "N_beta", "SNR_TWB", "SNR_THB", "MI_TWB", "MI_THB", "R_SNR", "R_MI", "asymptote"};

struct SweepSpec {
  Scenario twb;
  Scenario thb;
  std::string variable = "N_beta";
  LogGrid grid;
  std::vector<std::string> outputs; ///< empty means every column
};

/// JSON form:
///   {"twb": {scenario}, "thb": {scenario}, "sweep": "N_beta",
///    "grid": {"count": 60, "min": 10, "max": 1e7}, "outputs": ["R_SNR", ...]}
/// "sweep" and "outputs" are optional. Errors name the offending key.
SweepSpec sweep_spec_from_json(std::string_view text);

/// Fig-2 geometry: N = 4000 for both sources, M = 90000, M_beta = 50,
/// eta = 0.38, eta_beta = 0.5.
SweepSpec figure2_spec();

/// Fig-3 geometry: N_TWB = 4232, N_THB = 3278, M = 90000, M_beta = 1300,
/// eta = 0.38, eta_beta = 0.5.
SweepSpec figure3_spec();

struct SweepRow {
  double N_beta = 0.0;
  double snr_twb = 0.0, snr_thb = 0.0;
  double mi_twb = 0.0, mi_thb = 0.0;
  double r_snr = 0.0, r_mi = 0.0;
  double asymptote = 0.0;

  [[nodiscard]] double column(std::string_view name) const;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  std::vector<std::string> columns;
};

SweepTable run_sweep(const SweepSpec& spec);

/// Header plus one line per row, LF endings, 17 significant digits.
void write_csv(std::ostream& out, const SweepTable& table);

} // namespace quill::experiments

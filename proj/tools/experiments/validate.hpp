#pragma once

// Analytic-versus-Monte-Carlo validation campaign.
//
// Every instance is simulated once per quantity family and each analytic
// value is compared with the Monte Carlo estimate through z = (mc - exact)/SE.
// Rows are grouped into blocks of 30 in report order; a block may contain a
// single row with 3 < |z| <= 4. Instances owning a row outside that allowance
// (or any |z| > 4) are re-run once with a fresh seed; a violation that
// survives the re-run fails the campaign.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "quill/montecarlo.hpp"
#include "quill/scenario.hpp"

namespace quill::experiments {

struct ValidationInstance {
  std::string name;
  Scenario scenario;
  std::uint64_t shots = 200'000;
  mc::Estimator estimator = mc::Estimator::population;
  std::int64_t pixels = 1;
};

/// TWB/THB x {no bath, moderate, dominant} x {M = 1, M = 500}, plus vacuum,
/// object-absent and two empirical-estimator instances. shots_override > 0
/// replaces every instance's shot count.
std::vector<ValidationInstance> standard_suite(std::uint64_t shots_override = 0);

struct ValidationOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::uint64_t quadrature_samples = 1'000'000;
};

struct ValidationRow {
  std::string instance;
  std::string quantity;
  std::string estimator;
  double analytic = 0.0;
  double mc = 0.0;
  double std_error = 0.0;
  double z = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  int attempt = 0;
  std::string status; ///< "ok", "outlier", "fail"
};

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  std::vector<ValidationCheck> checks;
  int reruns = 0;
  bool passed = false;
};

/// Seed of one instance attempt, a hash of (base seed, index, attempt).
std::uint64_t instance_seed(std::uint64_t base, std::size_t index, int attempt);

ValidationReport run_validation(const std::vector<ValidationInstance>& suite,
                                const ValidationOptions& options);

void write_report_csv(std::ostream& out, const ValidationReport& report);
void print_report(std::ostream& out, const ValidationReport& report);

} // namespace quill::experiments

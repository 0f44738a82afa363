#pragma once

// Monte Carlo oracle for the analytic photon-counting and effective-mode
// results.
//
// Shots are split into contiguous batches. Each batch accumulates its own
// running moments; the point estimate uses the pooled moments and the
// standard error is the delete-one-batch jackknife over the batches. Batches are merged in index order, and with
// StreamMode::per_shot_counter shot i always draws from the Philox stream
// (seed, i), so results do not depend on the number of worker threads.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "quill/scenario.hpp"

namespace quill::mc {

enum class StreamMode {
  per_shot_counter, ///< stream keyed by (seed, shot index); parallel-safe
  sequential,       ///< one stream consumed shot after shot; single thread
};

enum class Estimator {
  population, ///< Delta per pixel pair, plug-in moments
  empirical,  ///< Delta = per-frame sample covariance, divisor pixels - 1
};

std::string_view to_string(StreamMode mode) noexcept;
std::string_view to_string(Estimator estimator) noexcept;

inline constexpr std::uint32_t kMinBatches = 20;

struct MCConfig {
  std::uint64_t seed = 0;
  std::uint64_t shots = 200'000;  ///< frames
  std::int64_t pixels = 0;        ///< pixel pairs per frame; 0 means Scenario::N_pix
  StreamMode stream_mode = StreamMode::per_shot_counter;
  Estimator estimator = Estimator::population;
  std::uint32_t batches = 64;
  unsigned threads = 0;           ///< 0 means hardware concurrency
  bool record_digests = false;    ///< keep one hash of the draws per shot
};

struct MCEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

enum class Quantity { snr, epsilon, nrf, delta_mean, delta_var, count_moments, mi };

std::string_view to_string(Quantity q) noexcept;

struct NamedEstimate {
  std::string name;
  MCEstimate estimate;
};

struct MCResult {
  Quantity quantity = Quantity::snr;
  Estimator estimator = Estimator::population;
  std::vector<NamedEstimate> values;

  /// Throws std::out_of_range for unknown names.
  [[nodiscard]] const MCEstimate& at(std::string_view name) const;
};

/// Bivariate running moments of (x, y, x*y), mergeable (Chan et al.).
struct PairMoments {
  double n = 0.0;
  double mean_x = 0.0, mean_y = 0.0, mean_p = 0.0;
  double m2_x = 0.0, m2_y = 0.0, m2_p = 0.0;
  double c_xy = 0.0;

  void add(double x, double y) noexcept;
  void merge(const PairMoments& other) noexcept;
};

/// Univariate running moments.
struct ScalarMoments {
  double n = 0.0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) noexcept;
  void merge(const ScalarMoments& other) noexcept;
};

/// Everything one batch of counting shots contributes.
struct CountingBatch {
  PairMoments in;               ///< (N_s, N_r) with the scenario's object state
  PairMoments out;              ///< same shots, object removed
  ScalarMoments frame_cov_in;   ///< per-frame sample covariance
  ScalarMoments frame_cov_out;

  void merge(const CountingBatch& other) noexcept;
};

struct CountingRun {
  Scenario scenario;
  MCConfig config;
  std::int64_t pixels = 1;
  std::vector<CountingBatch> batches;
  std::vector<std::uint64_t> digests; ///< per shot, when requested
};

/// Simulates config.shots frames of the scenario with the object in and out.
CountingRun run_counting(const Scenario& s, const MCConfig& config);

/// Extracts one counting quantity (everything except Quantity::mi).
MCResult extract(const CountingRun& run, Quantity quantity);

/// Effective-mode quadrature sampling; reports "mi", "a", "b", "c", "d".
MCResult estimate_effective_cm(const Scenario& s, const MCConfig& config);

/// Runs the matching sampler and forms the requested estimate.
MCResult estimate(const Scenario& s, Quantity quantity, const MCConfig& config);

} // namespace quill::mc

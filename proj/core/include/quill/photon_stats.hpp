#pragma once

// Photon-counting statistics of one signal/reference pixel pair.
//
// Model: the reference pixel collects M source modes, the signal pixel
// collects the partner modes after the object (reflectivity tau) plus
// M_beta independent thermal bath modes. Each source mode pair is either a
// two-mode squeezed vacuum (TWB) or a split thermal beam (THB) with mean mu1
// photons per arm, detected with efficiency eta. Distinct pairs and bath
// modes are independent, so joint cumulants of the detector counts are sums
// of per-mode cumulants. docs/count_statistics.md derives every expression.

#include <cstdint>

#include "quill/scenario.hpp"

namespace quill::photon_stats {

/// Detected statistics of a single mode.
struct PerModeMoments {
  double mean_r = 0.0;    ///< reference arm, eta mu1
  double mean_s = 0.0;    ///< signal arm source part, eta tau mu1 (0 without object)
  double mean_bath = 0.0; ///< one bath mode, eta_beta mu_beta
  double var_r = 0.0;     ///< thermal, n (n + 1)
  double var_s = 0.0;
  double var_bath = 0.0;
  double cov_pair = 0.0;  ///< eta^2 tau mu1 (mu1 + 1) for TWB, eta^2 tau mu1^2 for THB
};

PerModeMoments per_mode_moments(const Scenario& s);

/// Joint cumulants kappa_ij of (N_s, N_r); i is the order in N_s.
struct JointCumulants {
  double k10 = 0.0, k01 = 0.0;
  double k20 = 0.0, k02 = 0.0;
  double k11 = 0.0;
  double k21 = 0.0, k12 = 0.0;
  double k22 = 0.0;
};

/// Cumulants of one source mode pair (no bath).
JointCumulants pair_cumulants(const Scenario& s);

/// Cumulants of the full pixel pair: M source pairs plus the bath.
JointCumulants detector_cumulants(const Scenario& s);

/// var(N_s N_r) expressed through joint cumulants.
double product_variance(const JointCumulants& k) noexcept;

struct CountMoments {
  double mean_s = 0.0;
  double mean_r = 0.0;
  double var_s = 0.0;
  double var_r = 0.0;
  double cov_sr = 0.0;
  bool object_present = true;
};

CountMoments count_moments(const Scenario& s);

/// Mean and variance of the covariance observable
/// Delta = N_s N_r - <N_s><N_r> with the object in and out.
struct DeltaStats {
  double mean_in = 0.0;
  double mean_out = 0.0;
  double var_in = 0.0;
  double var_out = 0.0;
};

/// Population form: known means, Delta per pixel pair. This is the default
/// convention behind snr().
DeltaStats delta_stats(const Scenario& s);

/// Empirical-means form: Delta is the sample covariance over n_pix pixel
/// pairs of one frame (divisor n_pix - 1). Requires n_pix >= 2.
DeltaStats delta_stats_empirical(const Scenario& s, std::int64_t n_pix);

/// |<Delta_in - Delta_out>| / sqrt(var_in + var_out) for one pixel pair.
/// Returns 0 for a dark source next to a bath; throws DomainError when no
/// photons are detected at all.
double snr(const Scenario& s);

/// Frame-level SNR over N_pix pixel pairs, sqrt(N_pix) * snr(s).
double snr_frame(const Scenario& s);

/// Per-pair SNR of the empirical-means estimator over frames of n_pix pairs,
/// i.e. frame SNR divided by sqrt(n_pix).
double snr_empirical(const Scenario& s, std::int64_t n_pix);

struct SnrRatio {
  double ratio = 0.0;         ///< SNR_TWB / SNR_THB
  double dominant_bath = 0.0; ///< ratio of |<Delta_in - Delta_out>| only
};

SnrRatio snr_ratio(const Scenario& s_twb, const Scenario& s_thb);

/// <:dN_s dN_r:> / sqrt(<:d^2 N_s:> <:d^2 N_r:>) with
/// <:d^2 N:> = d^2 N - <N>. Values above 1 certify nonclassical light.
double cauchy_schwarz_epsilon(const Scenario& s);

/// <d^2 (N_s - N_r)> / <N_s + N_r>.
double noise_reduction_factor(const Scenario& s);

/// Copy of s with the object flag replaced.
Scenario with_object(Scenario s, bool present) noexcept;

} // namespace quill::photon_stats

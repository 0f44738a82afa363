#pragma once

// Effective two-mode description of a multimode illumination setup.
//
// Every pixel collects M source modes (plus M_beta bath modes in the signal
// plane). Coarse-graining them into one effective mode per pixel yields a
// standard-form covariance matrix whose elements are
//
//   a = 1 + 2 eta mu1
//   b = 1 + (eta mu1 M + 2 eta_beta mu_beta M_beta) / (M + M_beta)
//   c = d            = eta mu1 sqrt(2M / (M + M_beta))              (THB)
//   c = -d = eta sqrt(mu1^2 + mu1) sqrt(2M / (M + M_beta))          (TWB)
//
// with a 50:50 object folded in. The marginal "a" belongs to the bright
// (reference) arm and "b" to the arm that also collects the bath; which of
// the two is called signal or reference does not affect any correlation
// measure.

#include "quill/gaussian.hpp"
#include "quill/scenario.hpp"

namespace quill::illumination {

/// Object reflectivity implied by the covariance-matrix elements above.
inline constexpr double kBalancedObjectTau = 0.5;

struct EffectiveCM {
  gaussian::TwoModeCM cm;
  Scenario scenario;
};

/// Effective covariance matrix with the object in place. Requires
/// object_present and tau == 0.5; throws ParameterError otherwise.
EffectiveCM effective_cm(const Scenario& s);

/// Object-absent counterpart: no cross-correlations, the bath-arm marginal
/// keeps only the bath, b = 1 + 2 eta_beta mu_beta M_beta / (M + M_beta).
/// Not part of the published model; used for Monte Carlo cross-checks.
EffectiveCM effective_cm_object_absent(const Scenario& s);

/// Renyi-2 mutual information of the effective modes.
double mutual_info(const Scenario& s);

/// Limit of the SNR and MI ratios for a dominant bath,
/// |c_TWB / c_THB|^2 = (mu_T^2 + mu_T) / mu_theta^2.
/// Both scenarios must share M, M_beta and eta.
double asymptotic_ratio(const Scenario& s_twb, const Scenario& s_thb);

/// Same limit from the raw parameters.
double asymptotic_ratio(double n_twb, double n_thb, double eta, std::int64_t m);

/// MI_TWB / MI_THB.
double mi_ratio(const Scenario& s_twb, const Scenario& s_thb);

} // namespace quill::illumination

#include "quill/illumination.hpp"

#include <cmath>
#include <string>

#include "quill/errors.hpp"

namespace quill::illumination {

namespace {

void require_balanced_object(const Scenario& s, const char* what) {
  if (s.tau != kBalancedObjectTau) {
    throw ParameterError(std::string(what) +
                         ": the effective covariance matrix assumes a 50:50 "
                         "object (tau = 0.5), got tau = " +
                         std::to_string(s.tau));
  }
}

void require_source(const Scenario& s, SourceKind kind, const char* what) {
  if (s.source_kind != kind) {
    throw ParameterError(std::string(what) + ": expected a " +
                         std::string(to_string(kind)) + " scenario");
  }
}

} // namespace

EffectiveCM effective_cm(const Scenario& s) {
  const auto [mu1, mu_beta] = mu_per_mode(s);
  if (!s.object_present) {
    throw ParameterError(
        "effective_cm: object must be present (use effective_cm_object_absent)");
  }
  require_balanced_object(s, "effective_cm");

  const double M = static_cast<double>(s.M);
  const double Mb = static_cast<double>(s.M_beta);
  const double geometry = std::sqrt(2.0 * M / (M + Mb));

  gaussian::TwoModeCM cm;
  cm.a = 1.0 + 2.0 * s.eta * mu1;
  cm.b = 1.0 + (s.eta * mu1 * M + 2.0 * s.eta_beta * mu_beta * Mb) / (M + Mb);
  if (s.source_kind == SourceKind::thb) {
    cm.c = s.eta * mu1 * geometry;
    cm.d = cm.c;
  } else {
    cm.c = s.eta * std::sqrt(mu1 * mu1 + mu1) * geometry;
    cm.d = -cm.c;
  }

  // eta mu1 M = N and eta_beta mu_beta M_beta = N_beta.
  const double b_counts = 1.0 + (s.N + 2.0 * s.N_beta) / (M + Mb);
  if (std::abs(cm.b - b_counts) > 1e-12 * b_counts) {
    throw InvariantError("effective_cm: b disagrees with 1 + (N + 2 N_beta)/(M + M_beta)");
  }
  if (!gaussian::is_physical(cm)) {
    throw InvariantError("effective_cm: produced a non-physical matrix");
  }
  return EffectiveCM{cm, s};
}

EffectiveCM effective_cm_object_absent(const Scenario& s) {
  const auto [mu1, mu_beta] = mu_per_mode(s);
  const double M = static_cast<double>(s.M);
  const double Mb = static_cast<double>(s.M_beta);
  gaussian::TwoModeCM cm;
  cm.a = 1.0 + 2.0 * s.eta * mu1;
  cm.b = 1.0 + 2.0 * s.eta_beta * mu_beta * Mb / (M + Mb);
  return EffectiveCM{cm, s};
}

double mutual_info(const Scenario& s) {
  return gaussian::mutual_info_renyi2(effective_cm(s).cm);
}

double asymptotic_ratio(const Scenario& s_twb, const Scenario& s_thb) {
  require_source(s_twb, SourceKind::twb, "asymptotic_ratio");
  require_source(s_thb, SourceKind::thb, "asymptotic_ratio");
  if (s_twb.M != s_thb.M || s_twb.M_beta != s_thb.M_beta ||
      s_twb.eta != s_thb.eta) {
    throw ParameterError("asymptotic_ratio: scenarios must share M, M_beta and eta");
  }
  const double mu_t = mu_per_mode(s_twb).mu1;
  const double mu_th = mu_per_mode(s_thb).mu1;
  if (mu_th == 0.0) {
    throw DomainError("asymptotic_ratio: THB source is dark (mu = 0)");
  }
  return (mu_t * mu_t + mu_t) / (mu_th * mu_th);
}

double asymptotic_ratio(double n_twb, double n_thb, double eta, std::int64_t m) {
  Scenario twb;
  twb.source_kind = SourceKind::twb;
  twb.N = n_twb;
  twb.M = m;
  twb.eta = eta;
  Scenario thb = twb;
  thb.source_kind = SourceKind::thb;
  thb.N = n_thb;
  return asymptotic_ratio(twb, thb);
}

double mi_ratio(const Scenario& s_twb, const Scenario& s_thb) {
  require_source(s_twb, SourceKind::twb, "mi_ratio");
  require_source(s_thb, SourceKind::thb, "mi_ratio");
  const double mi_thb = mutual_info(s_thb);
  if (mi_thb == 0.0) {
    throw DomainError("mi_ratio: THB mutual information vanishes");
  }
  return mutual_info(s_twb) / mi_thb;
}

} // namespace quill::illumination

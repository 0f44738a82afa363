#include "quill/photon_stats.hpp"

#include <cmath>
#include <string>

#include "quill/errors.hpp"

namespace quill::photon_stats {

namespace {

struct ArmOccupations {
  double mu = 0.0;    // source photons per mode
  double p = 0.0;     // reference arm transmission (eta)
  double q = 0.0;     // signal arm transmission (eta tau, or 0)
  double bath = 0.0;  // detected bath photons per bath mode
};

ArmOccupations occupations(const Scenario& s) {
  const auto occ = mu_per_mode(s);
  ArmOccupations arms;
  arms.mu = occ.mu1;
  arms.p = s.eta;
  arms.q = s.object_present ? s.eta * s.tau : 0.0;
  arms.bath = s.eta_beta * occ.mu_beta;
  return arms;
}

} // namespace

Scenario with_object(Scenario s, bool present) noexcept {
  s.object_present = present;
  return s;
}

PerModeMoments per_mode_moments(const Scenario& s) {
  const auto arms = occupations(s);
  const auto k = pair_cumulants(s);
  PerModeMoments m;
  m.mean_r = k.k01;
  m.mean_s = k.k10;
  m.mean_bath = arms.bath;
  m.var_r = k.k02;
  m.var_s = k.k20;
  m.var_bath = arms.bath * (arms.bath + 1.0);
  m.cov_pair = k.k11;
  return m;
}

JointCumulants pair_cumulants(const Scenario& s) {
  const auto [mu, p, q, bath] = occupations(s);
  (void)bath;
  // Both sources have the pair generating function
  //   G(u, v) = 1 / (1 - mu [q(u-1) + p(v-1) + x pq (u-1)(v-1)])
  // with x = 1 for TWB and x = 0 for THB; the cumulants below are the
  // derivatives of ln G(e^t1, e^t2) at the origin.
  const double x = s.source_kind == SourceKind::twb ? 1.0 : 0.0;
  const double ns = mu * q;
  const double nr = mu * p;
  const double g = s.source_kind == SourceKind::twb ? mu * (mu + 1.0) * p * q
                                                    : mu * mu * p * q;
  JointCumulants k;
  k.k10 = ns;
  k.k01 = nr;
  k.k20 = ns * (ns + 1.0);
  k.k02 = nr * (nr + 1.0);
  k.k11 = g;
  k.k21 = g * (2.0 * ns + 1.0);
  k.k12 = g * (2.0 * nr + 1.0);
  k.k22 = g * (1.0 + 2.0 * nr + 2.0 * ns + 6.0 * nr * ns + 2.0 * x * mu * p * q);
  return k;
}

JointCumulants detector_cumulants(const Scenario& s) {
  const auto arms = occupations(s);
  const auto pair = pair_cumulants(s);
  const double M = static_cast<double>(s.M);
  const double Mb = static_cast<double>(s.M_beta);

  JointCumulants k;
  k.k10 = M * pair.k10 + Mb * arms.bath;
  k.k01 = M * pair.k01;
  k.k20 = M * pair.k20 + Mb * arms.bath * (arms.bath + 1.0);
  k.k02 = M * pair.k02;
  k.k11 = M * pair.k11;
  k.k21 = M * pair.k21;
  k.k12 = M * pair.k12;
  k.k22 = M * pair.k22;
  return k;
}

double product_variance(const JointCumulants& k) noexcept {
  const double a = k.k10; // <N_s>
  const double b = k.k01; // <N_r>
  // Central moments: mu21 = k21, mu12 = k12, mu22 = k22 + k20 k02 + 2 k11^2.
  return k.k22 + k.k20 * k.k02 + k.k11 * k.k11 + 2.0 * b * k.k21 +
         2.0 * a * k.k12 + b * b * k.k20 + a * a * k.k02 + 2.0 * a * b * k.k11;
}

CountMoments count_moments(const Scenario& s) {
  const auto k = detector_cumulants(s);
  CountMoments m;
  m.mean_s = k.k10;
  m.mean_r = k.k01;
  m.var_s = k.k20;
  m.var_r = k.k02;
  m.cov_sr = k.k11;
  m.object_present = s.object_present;
  return m;
}

DeltaStats delta_stats(const Scenario& s) {
  const auto in = detector_cumulants(s);
  const auto out = detector_cumulants(with_object(s, false));
  DeltaStats d;
  d.mean_in = in.k11;
  d.mean_out = out.k11; // exactly 0: no pair reaches the signal pixel
  d.var_in = product_variance(in);
  d.var_out = product_variance(out);
  return d;
}

namespace {

double sample_covariance_variance(const JointCumulants& k, double n) {
  const double mu22 = k.k22 + k.k20 * k.k02 + 2.0 * k.k11 * k.k11;
  return mu22 / n + k.k20 * k.k02 / (n * (n - 1.0)) -
         (n - 2.0) * k.k11 * k.k11 / (n * (n - 1.0));
}

} // namespace

DeltaStats delta_stats_empirical(const Scenario& s, std::int64_t n_pix) {
  if (n_pix < 2) {
    throw DomainError("delta_stats_empirical: need at least 2 pixel pairs");
  }
  const double n = static_cast<double>(n_pix);
  const auto in = detector_cumulants(s);
  const auto out = detector_cumulants(with_object(s, false));
  DeltaStats d;
  d.mean_in = in.k11;
  d.mean_out = out.k11;
  d.var_in = sample_covariance_variance(in, n);
  d.var_out = sample_covariance_variance(out, n);
  return d;
}

namespace {

double snr_from(const Scenario& s, const DeltaStats& d) {
  const double noise = d.var_in + d.var_out;
  if (!(noise > 0.0)) {
    // A dark source gives Delta = 0 on every shot; only a fully dark
    // scenario is left undefined.
    if (s.N == 0.0 && s.N_beta > 0.0) {
      return 0.0;
    }
    throw DomainError("snr: Delta has zero variance (no photons detected)");
  }
  return std::abs(d.mean_in - d.mean_out) / std::sqrt(noise);
}

} // namespace

double snr(const Scenario& s) { return snr_from(s, delta_stats(s)); }

double snr_frame(const Scenario& s) {
  return std::sqrt(static_cast<double>(s.N_pix)) * snr(s);
}

double snr_empirical(const Scenario& s, std::int64_t n_pix) {
  return snr_from(s, delta_stats_empirical(s, n_pix)) /
         std::sqrt(static_cast<double>(n_pix));
}

SnrRatio snr_ratio(const Scenario& s_twb, const Scenario& s_thb) {
  const double snr_thb = snr(s_thb);
  if (snr_thb == 0.0) {
    throw DomainError("snr_ratio: THB SNR vanishes");
  }
  const auto d_twb = delta_stats(s_twb);
  const auto d_thb = delta_stats(s_thb);
  SnrRatio r;
  r.ratio = snr(s_twb) / snr_thb;
  r.dominant_bath = std::abs(d_twb.mean_in - d_twb.mean_out) /
                    std::abs(d_thb.mean_in - d_thb.mean_out);
  return r;
}

double cauchy_schwarz_epsilon(const Scenario& s) {
  const auto m = count_moments(s);
  const double normal_var_s = m.var_s - m.mean_s;
  const double normal_var_r = m.var_r - m.mean_r;
  const double denom = normal_var_s * normal_var_r;
  if (!(denom > 0.0)) {
    throw DomainError(
        "cauchy_schwarz_epsilon: normally ordered variance is not positive");
  }
  return m.cov_sr / std::sqrt(denom);
}

double noise_reduction_factor(const Scenario& s) {
  const auto m = count_moments(s);
  const double total = m.mean_s + m.mean_r;
  if (!(total > 0.0)) {
    throw DomainError("noise_reduction_factor: no photons detected");
  }
  return (m.var_s + m.var_r - 2.0 * m.cov_sr) / total;
}

} // namespace quill::photon_stats

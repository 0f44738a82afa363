#include "quill/samplers.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "quill/errors.hpp"
#include "quill/illumination.hpp"

namespace quill::sampling {

namespace {

// log_ratio = ln(mean / (1 + mean)) < 0
std::int64_t geometric_inverse(Philox4x32& rng, double log_ratio) {
  return static_cast<std::int64_t>(
      std::floor(std::log(uniform_open(rng)) / log_ratio));
}

} // namespace

std::int64_t geometric(Philox4x32& rng, double mean) {
  if (mean <= 0.0) {
    return 0;
  }
  return geometric_inverse(rng, std::log(mean / (1.0 + mean)));
}

double exponential(Philox4x32& rng, double mean) {
  return -mean * std::log(uniform_open(rng));
}

std::int64_t poisson(Philox4x32& rng, double mean) {
  if (mean <= 0.0) {
    return 0;
  }
  if (mean < 10.0) {
    // Sequential inversion, O(mean) steps.
    const double u = uniform_open(rng);
    double term = std::exp(-mean);
    double cdf = term;
    std::int64_t k = 0;
    while (u > cdf && term > 0.0) {
      ++k;
      term *= mean / static_cast<double>(k);
      cdf += term;
    }
    return k;
  }
  std::poisson_distribution<std::int64_t> dist(mean);
  return dist(rng);
}

std::int64_t binomial_thin(Philox4x32& rng, std::int64_t n, double p) {
  if (n <= 0 || p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  if (n <= 32) {
    std::int64_t kept = 0;
    for (std::int64_t i = 0; i < n; ++i) {
      kept += uniform_open(rng) < p ? 1 : 0;
    }
    return kept;
  }
  std::binomial_distribution<std::int64_t> dist(n, p);
  return dist(rng);
}

CountSampler::CountSampler(const Scenario& s) : scenario_(s) {
  const auto occ = mu_per_mode(s);
  mu_ = occ.mu1;
  mu_beta_ = occ.mu_beta;
  log_ratio_ = mu_ > 0.0 ? std::log(mu_ / (1.0 + mu_)) : 0.0;
  p_ = s.eta;
  q_ = s.object_present ? s.eta * s.tau : 0.0;
}

PixelCounts CountSampler::operator()(Philox4x32& rng) const {
  PixelCounts counts = scenario_.source_kind == SourceKind::twb
                           ? sample_twb(rng)
                           : sample_thb(rng);
  counts.signal += sample_bath(rng);
  return counts;
}

PixelCounts CountSampler::sample_twb(Philox4x32& rng) const {
  PixelCounts counts;
  if (mu_ <= 0.0) {
    return counts;
  }
  for (std::int64_t k = 0; k < scenario_.M; ++k) {
    const std::int64_t pairs = geometric_inverse(rng, log_ratio_);
    if (pairs == 0) {
      continue;
    }
    counts.reference += binomial_thin(rng, pairs, p_);
    counts.signal += binomial_thin(rng, pairs, q_);
  }
  return counts;
}

PixelCounts CountSampler::sample_thb(Philox4x32& rng) const {
  PixelCounts counts;
  if (mu_ <= 0.0) {
    return counts;
  }
  for (std::int64_t k = 0; k < scenario_.M; ++k) {
    const double intensity = exponential(rng, mu_);
    counts.reference += poisson(rng, p_ * intensity);
    counts.signal += poisson(rng, q_ * intensity);
  }
  return counts;
}

std::int64_t CountSampler::sample_bath(Philox4x32& rng) const {
  if (mu_beta_ <= 0.0) {
    return 0;
  }
  std::int64_t total = 0;
  for (std::int64_t j = 0; j < scenario_.M_beta; ++j) {
    total += poisson(rng, scenario_.eta_beta * exponential(rng, mu_beta_));
  }
  return total;
}

PixelCounts sample_twb_counts(const Scenario& s, Philox4x32& rng) {
  if (s.source_kind != SourceKind::twb) {
    throw ParameterError("sample_twb_counts: scenario is not TWB");
  }
  return CountSampler(s)(rng);
}

PixelCounts sample_thb_counts(const Scenario& s, Philox4x32& rng) {
  if (s.source_kind != SourceKind::thb) {
    throw ParameterError("sample_thb_counts: scenario is not THB");
  }
  return CountSampler(s)(rng);
}

QuadratureSampler::QuadratureSampler(const gaussian::TwoModeCM& cm) {
  if (!(cm.a > 0.0 && cm.b > 0.0 && cm.a * cm.b > cm.c * cm.c &&
        cm.a * cm.b > cm.d * cm.d)) {
    throw DomainError("QuadratureSampler: covariance matrix is not positive definite");
  }
  l11_ = std::sqrt(cm.a);
  lq21_ = cm.c / l11_;
  lq22_ = std::sqrt(cm.b - lq21_ * lq21_);
  lp21_ = cm.d / l11_;
  lp22_ = std::sqrt(cm.b - lp21_ * lp21_);
}

Quadratures QuadratureSampler::operator()(Philox4x32& rng) const {
  // Box-Muller, two independent pairs of standard normals.
  std::array<double, 4> z{};
  for (int i = 0; i < 4; i += 2) {
    const double radius = std::sqrt(-2.0 * std::log(uniform_open(rng)));
    const double angle = 2.0 * std::numbers::pi * uniform_open(rng);
    z[i] = radius * std::cos(angle);
    z[i + 1] = radius * std::sin(angle);
  }
  Quadratures x;
  x[0] = l11_ * z[0];                 // q1
  x[2] = lq21_ * z[0] + lq22_ * z[1]; // q2
  x[1] = l11_ * z[2];                 // p1
  x[3] = lp21_ * z[2] + lp22_ * z[3]; // p2
  return x;
}

Quadratures sample_effective_quadratures(const Scenario& s, Philox4x32& rng) {
  const auto eff = s.object_present
                       ? illumination::effective_cm(s)
                       : illumination::effective_cm_object_absent(s);
  return QuadratureSampler(eff.cm)(rng);
}

} // namespace quill::sampling

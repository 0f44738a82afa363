#pragma once

// Exact samplers for detected photon counts and effective-mode quadratures.
//
// TWB pairs are sampled in the photon-number basis (Bose-Einstein pair
// number, independent binomial loss per arm). THB pairs and bath modes use
// their positive P-representation (exponential intensity, conditionally
// independent Poisson counts). Quadratures are drawn from the Gaussian
// Wigner function of the effective covariance matrix; they reproduce second
// moments exactly but not photon-counting fourth moments, so the two routes
// are never mixed.

#include <array>
#include <cstdint>

#include "quill/gaussian.hpp"
#include "quill/rng.hpp"
#include "quill/scenario.hpp"

namespace quill::sampling {

/// P(n) = mean^n / (1 + mean)^(n+1), by inversion:
/// n = floor(ln U / ln(mean / (1 + mean))).
std::int64_t geometric(Philox4x32& rng, double mean);

/// Exponential with the given mean.
double exponential(Philox4x32& rng, double mean);

std::int64_t poisson(Philox4x32& rng, double mean);

/// Binomial(n, p): each of n photons survives with probability p.
std::int64_t binomial_thin(Philox4x32& rng, std::int64_t n, double p);

struct PixelCounts {
  std::int64_t signal = 0;
  std::int64_t reference = 0;
};

/// Samples the counts of one pixel pair of a fixed scenario.
class CountSampler {
public:
  explicit CountSampler(const Scenario& s);

  PixelCounts operator()(Philox4x32& rng) const;

  [[nodiscard]] const Scenario& scenario() const noexcept { return scenario_; }

private:
  PixelCounts sample_twb(Philox4x32& rng) const;
  PixelCounts sample_thb(Philox4x32& rng) const;
  std::int64_t sample_bath(Philox4x32& rng) const;

  Scenario scenario_;
  double mu_ = 0.0;       // source photons per mode
  double mu_beta_ = 0.0;  // bath photons per mode at the source
  double log_ratio_ = 0.0; // ln(mu / (1 + mu))
  double p_ = 0.0;        // reference arm efficiency
  double q_ = 0.0;        // signal arm efficiency incl. object
};

/// One pixel pair of a TWB scenario.
PixelCounts sample_twb_counts(const Scenario& s, Philox4x32& rng);

/// One pixel pair of a THB scenario.
PixelCounts sample_thb_counts(const Scenario& s, Philox4x32& rng);

/// (q1, p1, q2, p2) drawn from N(0, sigma).
using Quadratures = std::array<double, 4>;

class QuadratureSampler {
public:
  explicit QuadratureSampler(const gaussian::TwoModeCM& cm);

  Quadratures operator()(Philox4x32& rng) const;

private:
  // Cholesky factors of the (q1, q2) and (p1, p2) blocks.
  double l11_ = 1.0, lq21_ = 0.0, lq22_ = 1.0, lp21_ = 0.0, lp22_ = 1.0;
};

/// Effective-mode quadratures of a scenario (object-absent matrix when the
/// object is removed).
Quadratures sample_effective_quadratures(const Scenario& s, Philox4x32& rng);

} // namespace quill::sampling

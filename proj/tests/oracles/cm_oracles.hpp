#pragma once

// Covariance-matrix helpers that avoid the library's symplectic spectrum.

#include <cstdint>
#include <random>
#include <vector>

#include "quill/gaussian.hpp"

namespace quill::oracle {

/// Uncertainty principle for a positive-definite standard-form matrix,
/// written through the invariants: det >= 1 and 1 + det >= a^2 + b^2 + 2cd.
inline bool physical_by_invariants(const gaussian::TwoModeCM& cm) {
  const bool pd = cm.a > 0 && cm.b > 0 && cm.a * cm.b > cm.c * cm.c &&
                  cm.a * cm.b > cm.d * cm.d;
  const double seralian = cm.a * cm.a + cm.b * cm.b + 2 * cm.c * cm.d;
  return pd && cm.det() >= 1.0 && seralian <= 1.0 + cm.det();
}

/// Random physical matrices by rejection, about one in ten uncorrelated.
inline std::vector<gaussian::TwoModeCM> random_physical(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> marg(1.0, 6.0);
  std::uniform_real_distribution<double> corr(-5.0, 5.0);
  std::bernoulli_distribution zero(0.1);
  std::vector<gaussian::TwoModeCM> out;
  while (out.size() < count) {
    gaussian::TwoModeCM cm{marg(gen), marg(gen), corr(gen), corr(gen)};
    if (zero(gen)) cm.c = cm.d = 0.0;
    const double seralian = cm.a * cm.a + cm.b * cm.b + 2 * cm.c * cm.d;
    if (physical_by_invariants(cm) && seralian <= cm.det() + 1.0 - 1e-6) {
      out.push_back(cm);
    }
  }
  return out;
}

} // namespace quill::oracle

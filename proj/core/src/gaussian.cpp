#include "quill/gaussian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "quill/errors.hpp"

namespace quill::gaussian {

namespace {

bool all_finite(const TwoModeCM& cm) {
  return std::isfinite(cm.a) && std::isfinite(cm.b) && std::isfinite(cm.c) &&
         std::isfinite(cm.d);
}

bool positive_definite(const TwoModeCM& cm) {
  const double ab = cm.a * cm.b;
  return cm.a > 0.0 && cm.b > 0.0 && ab - cm.c * cm.c > 0.0 &&
         ab - cm.d * cm.d > 0.0;
}

std::string describe(const TwoModeCM& cm) {
  std::ostringstream os;
  os.precision(17);
  os << "(a=" << cm.a << ", b=" << cm.b << ", c=" << cm.c << ", d=" << cm.d
     << ")";
  return os.str();
}

void require_physical(const TwoModeCM& cm, const char* what) {
  const auto check = is_physical(cm);
  if (!check) {
    throw DomainError(std::string(what) + ": covariance matrix " +
                      describe(cm) + " failed check '" +
                      std::string(to_string(check.reason)) + "'");
  }
}

} // namespace

TwoModeCM TwoModeCM::from_matrix(const Matrix4& m) {
  double scale = 1.0;
  for (const auto& row : m) {
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw DomainError("covariance matrix has non-finite entries");
      }
      scale = std::max(scale, std::abs(v));
    }
  }
  const double tol = kStandardFormTol * scale;
  auto near = [tol](double x, double y) { return std::abs(x - y) <= tol; };

  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (!near(m[i][j], m[j][i])) {
        throw DomainError("covariance matrix is not symmetric");
      }
    }
  }
  // Entries that must vanish in standard form.
  constexpr std::array<std::array<int, 2>, 4> zeros{
      {{0, 1}, {2, 3}, {0, 3}, {1, 2}}};
  for (const auto& [i, j] : zeros) {
    if (!near(m[i][j], 0.0)) {
      throw DomainError("covariance matrix is not in standard form");
    }
  }
  if (!near(m[0][0], m[1][1]) || !near(m[2][2], m[3][3])) {
    throw DomainError(
        "covariance matrix marginals are not isotropic (standard form)");
  }
  return TwoModeCM{.a = 0.5 * (m[0][0] + m[1][1]),
                   .b = 0.5 * (m[2][2] + m[3][3]),
                   .c = 0.5 * (m[0][2] + m[2][0]),
                   .d = 0.5 * (m[1][3] + m[3][1])};
}

Matrix4 TwoModeCM::to_matrix() const noexcept {
  return Matrix4{{{a, 0.0, c, 0.0},
                  {0.0, a, 0.0, d},
                  {c, 0.0, b, 0.0},
                  {0.0, d, 0.0, b}}};
}

double TwoModeCM::det() const noexcept {
  const double ab = a * b;
  return (ab - c * c) * (ab - d * d);
}

TwoModeCM two_mode_squeezed_vacuum(double r) {
  const double ch = std::cosh(2.0 * r);
  const double sh = std::sinh(2.0 * r);
  return TwoModeCM{.a = ch, .b = ch, .c = sh, .d = -sh};
}

std::string_view to_string(PhysicalityReason reason) noexcept {
  switch (reason) {
  case PhysicalityReason::physical:
    return "physical";
  case PhysicalityReason::non_finite:
    return "non-finite entries";
  case PhysicalityReason::not_positive_definite:
    return "not positive definite";
  case PhysicalityReason::uncertainty_violated:
    return "uncertainty relation violated (nu_minus < 1)";
  case PhysicalityReason::numeric_breakdown:
    return "symplectic spectrum not computable";
  }
  return "unknown";
}

SymplecticSpectrum symplectic_eigenvalues(const TwoModeCM& cm) {
  if (!all_finite(cm) || !positive_definite(cm)) {
    throw DomainError("symplectic_eigenvalues: matrix " + describe(cm) +
                      " is not positive definite");
  }
  const double delta = cm.a * cm.a + cm.b * cm.b + 2.0 * cm.c * cm.d;
  const double det = cm.det();
  double disc = delta * delta - 4.0 * det;
  if (disc < 0.0) {
    // (a^2 - b^2)^2 + 4(ac + bd)(ad + bc); tiny negatives are round-off.
    if (disc < -1e-12 * delta * delta) {
      throw NumericError("symplectic_eigenvalues: negative discriminant " +
                         std::to_string(disc));
    }
    disc = 0.0;
  }
  const double nu_plus_sq = 0.5 * (delta + std::sqrt(disc));
  // nu_-^2 nu_+^2 = det; avoids cancellation in (D - sqrt(.))/2.
  const double nu_minus_sq = det / nu_plus_sq;
  return SymplecticSpectrum{.nu_minus = std::sqrt(nu_minus_sq),
                            .nu_plus = std::sqrt(nu_plus_sq)};
}

PhysicalityCheck is_physical(const TwoModeCM& cm, double tol) noexcept {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (!all_finite(cm)) {
    return {false, PhysicalityReason::non_finite, nan};
  }
  if (!positive_definite(cm)) {
    return {false, PhysicalityReason::not_positive_definite, nan};
  }
  SymplecticSpectrum spectrum;
  try {
    spectrum = symplectic_eigenvalues(cm);
  } catch (const std::exception&) {
    return {false, PhysicalityReason::numeric_breakdown, nan};
  }
  if (spectrum.nu_minus < 1.0 - tol) {
    return {false, PhysicalityReason::uncertainty_violated, spectrum.nu_minus};
  }
  return {true, PhysicalityReason::physical, spectrum.nu_minus};
}

double renyi2_entropy(double marginal_variance) {
  if (!std::isfinite(marginal_variance) ||
      marginal_variance < 1.0 - kPhysicalityTol) {
    throw DomainError("renyi2_entropy: single-mode variance " +
                      std::to_string(marginal_variance) +
                      " is below vacuum noise");
  }
  // 1/2 ln(v^2); clamped so values inside the tolerance band stay >= 0
  return std::max(0.0, std::log(marginal_variance));
}

double renyi2_entropy(const TwoModeCM& cm) {
  require_physical(cm, "renyi2_entropy");
  return std::max(0.0, 0.5 * std::log(cm.det()));
}

double mutual_info_renyi2(const TwoModeCM& cm) {
  require_physical(cm, "mutual_info_renyi2");
  const double ab = cm.a * cm.b;
  // log1p keeps full precision when the correlations are tiny compared to
  // the marginals (dominant bath).
  return -0.5 * (std::log1p(-cm.c * cm.c / ab) + std::log1p(-cm.d * cm.d / ab));
}

} // namespace quill::gaussian

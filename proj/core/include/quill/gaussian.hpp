#pragma once

// Two-mode Gaussian covariance matrices in standard form.
//
// Convention: quadrature ordering (q1, p1, q2, p2), symmetrized and
// mean-subtracted second moments scaled so that the vacuum covariance matrix
// is the identity. Entropies are reported in nats.

#include <array>
#include <string_view>

namespace quill::gaussian {

inline constexpr double kPhysicalityTol = 1e-9;
inline constexpr double kStandardFormTol = 1e-12;

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// Standard-form covariance matrix
///
///     | a 0 c 0 |
///     | 0 a 0 d |
///     | c 0 b 0 |
///     | 0 d 0 b |
struct TwoModeCM {
  double a = 1.0;
  double b = 1.0;
  double c = 0.0;
  double d = 0.0;

  /// Accepts an arbitrary 4x4 matrix and verifies that it is symmetric and
  /// in standard form to within kStandardFormTol (scaled by the largest
  /// entry). Throws DomainError otherwise.
  static TwoModeCM from_matrix(const Matrix4& m);

  [[nodiscard]] Matrix4 to_matrix() const noexcept;

  /// det of the full matrix, (ab - c^2)(ab - d^2).
  [[nodiscard]] double det() const noexcept;

  friend bool operator==(const TwoModeCM&, const TwoModeCM&) = default;
};

/// Pure two-mode squeezed vacuum with squeezing parameter r:
/// a = b = cosh 2r, c = -d = sinh 2r.
TwoModeCM two_mode_squeezed_vacuum(double r);

struct SymplecticSpectrum {
  double nu_minus = 1.0;
  double nu_plus = 1.0;
};

enum class PhysicalityReason {
  physical,
  non_finite,
  not_positive_definite,
  uncertainty_violated,
  numeric_breakdown,
};

std::string_view to_string(PhysicalityReason reason) noexcept;

struct PhysicalityCheck {
  bool physical = false;
  PhysicalityReason reason = PhysicalityReason::non_finite;
  double nu_minus = 0.0; // NaN unless the spectrum could be evaluated

  explicit operator bool() const noexcept { return physical; }
};

/// Symplectic eigenvalues from nu^2 = (D +- sqrt(D^2 - 4 det)) / 2 with
/// D = a^2 + b^2 + 2cd. Requires a positive-definite matrix.
SymplecticSpectrum symplectic_eigenvalues(const TwoModeCM& cm);

/// True iff the smaller symplectic eigenvalue is at least 1 - tol.
PhysicalityCheck is_physical(const TwoModeCM& cm,
                             double tol = kPhysicalityTol) noexcept;

/// S2 of a single mode with marginal quadrature variance v: ln v.
double renyi2_entropy(double marginal_variance);

/// S2 = 1/2 ln det(sigma).
double renyi2_entropy(const TwoModeCM& cm);

/// MI = S2(mode 1) + S2(mode 2) - S2(joint)
///    = 1/2 ln[a^2 b^2 / ((ab - c^2)(ab - d^2))].
double mutual_info_renyi2(const TwoModeCM& cm);

} // namespace quill::gaussian

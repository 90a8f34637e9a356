#pragma once

#include <array>
#include <span>
#include <vector>

#include "moebius_kit/sphere.hpp"

namespace moebius_kit {

/// Circle or line A z conj(z) + conj(B) z + B conj(z) + C = 0 with A, C real.
///
/// Coefficients are normalized to A^2 + 2|B|^2 + C^2 = 1 with the first
/// non-negligible entry of (A, Re B, Im B, C) positive. The set is a line,
/// and passes through infinity, iff A = 0.
class GeneralizedCircle {
 public:
  /// Throws DegenerateFit if |B|^2 - A C <= 0 (a point or the empty set).
  GeneralizedCircle(double A, Complex B, double C);

  /// Circle with the given center and radius.
  static GeneralizedCircle circle(Complex center, double radius);
  /// Line through two distinct finite points.
  static GeneralizedCircle line(Complex p, Complex q);

  double A() const noexcept { return A_; }
  Complex B() const noexcept { return B_; }
  double C() const noexcept { return C_; }

  bool is_line() const noexcept { return A_ == 0.0; }
  /// Euclidean center and radius; circles only.
  Complex center() const;
  double radius() const;

  /// A |z|^2 + 2 Re(B conj z) + C for finite z; A at infinity.
  double residual(const SpherePoint& z) const noexcept;

 private:
  double A_;
  Complex B_;
  double C_;
};

/// Unique generalized circle through three distinct sphere points.
/// Throws CollidingBasePoints.
GeneralizedCircle circle_through(const SpherePoint& p1, const SpherePoint& p2,
                                 const SpherePoint& p3);

bool on_circle(const GeneralizedCircle& c, const SpherePoint& z, double tol);

struct CircleFit {
  GeneralizedCircle circle;
  /// Largest absolute Hermitian residual over the input points.
  double residual;
};

/// Least-squares fit of the normalized coefficient vector minimizing the sum
/// of squared Hermitian residuals. When infinity is among the points the fit
/// is restricted to lines. Throws TooFewPoints (fewer than three points, or
/// fewer than two finite points with infinity present) and DegenerateFit
/// (best algebraic fit is a point or imaginary circle).
CircleFit fit_circle(std::span<const SpherePoint> points);

/// Deterministic samples on a circle (evenly by angle) or a line (rational
/// sweep p + t (q - p) with t = tan(phi), which includes infinity at phi = pi/2).
std::vector<SpherePoint> sample_circle(const GeneralizedCircle& c, std::size_t count);

}  // namespace moebius_kit

#pragma once

#include <complex>
#include <optional>

#include "moebius_kit/error.hpp"

namespace moebius_kit {

using Complex = std::complex<double>;

/// A point of the extended complex plane: a finite complex number or the
/// point at infinity. Infinity is a distinct state, never a large float.
class SpherePoint {
 public:
  /// The origin.
  constexpr SpherePoint() = default;

  /// Finite point. Throws InvalidPoint on NaN or infinite components.
  SpherePoint(Complex z);  // NOLINT(google-explicit-constructor)
  SpherePoint(double re, double im = 0.0) : SpherePoint(Complex(re, im)) {}  // NOLINT

  static constexpr SpherePoint infinity() noexcept {
    SpherePoint p;
    p.infinite_ = true;
    return p;
  }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  /// Finite value; must not be called on infinity.
  Complex value() const;

  /// Finite value or nullopt.
  std::optional<Complex> finite() const noexcept {
    if (infinite_) return std::nullopt;
    return z_;
  }

  /// Exact symbolic coincidence (both infinity, or identical coordinates).
  friend bool operator==(const SpherePoint& a, const SpherePoint& b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.z_ == b.z_;
  }

 private:
  Complex z_{};
  bool infinite_ = false;
};

inline constexpr double kDefaultPointTolerance = 1e-9;

/// Chordal metric of the Riemann sphere, 2|p-q| / sqrt(1+|p|^2) sqrt(1+|q|^2),
/// with the limit 2 / sqrt(1+|p|^2) against infinity. Values lie in [0, 2].
double chordal_distance(const SpherePoint& p, const SpherePoint& q) noexcept;

/// Tolerant coincidence through the chordal metric.
inline bool near(const SpherePoint& p, const SpherePoint& q,
                 double tol = kDefaultPointTolerance) noexcept {
  return chordal_distance(p, q) <= tol;
}

/// Extended arithmetic. Indeterminate forms (0/0, inf/inf, 0*inf, inf+inf,
/// inf-inf) throw IndeterminateForm so that callers route to a limit.
SpherePoint ext_add(const SpherePoint& a, const SpherePoint& b);
SpherePoint ext_sub(const SpherePoint& a, const SpherePoint& b);
SpherePoint ext_mul(const SpherePoint& a, const SpherePoint& b);
SpherePoint ext_inv(const SpherePoint& a) noexcept;
SpherePoint ext_div(const SpherePoint& a, const SpherePoint& b);
SpherePoint ext_conj(const SpherePoint& a) noexcept;

/// Homogeneous coordinates (x : y) with z = x / y; infinity is (1 : 0).
struct Homogeneous {
  Complex x;
  Complex y;
};

Homogeneous to_homogeneous(const SpherePoint& p) noexcept;

/// Exact zero denominator maps to infinity; both-zero throws IndeterminateForm.
SpherePoint from_homogeneous(const Homogeneous& h);

/// The bracket x_p y_q - x_q y_p; vanishes iff p and q coincide.
inline Complex bracket(const Homogeneous& p, const Homogeneous& q) noexcept {
  return p.x * q.y - q.x * p.y;
}

}  // namespace moebius_kit

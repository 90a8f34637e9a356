#include "moebius_kit/sphere.hpp"

#include <cmath>
#include <string>

namespace moebius_kit {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IndeterminateForm: return "IndeterminateForm";
    case ErrorKind::InvalidPoint: return "InvalidPoint";
    case ErrorKind::InvalidTetrad: return "InvalidTetrad";
    case ErrorKind::DegenerateAlpha: return "DegenerateAlpha";
    case ErrorKind::CollidingBasePoints: return "CollidingBasePoints";
    case ErrorKind::SingularMap: return "SingularMap";
    case ErrorKind::TooFewPoints: return "TooFewPoints";
    case ErrorKind::DegenerateFit: return "DegenerateFit";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::InvalidSampledMap: return "InvalidSampledMap";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

SpherePoint::SpherePoint(Complex z) : z_(z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(ErrorKind::InvalidPoint,
                "finite sphere point requires finite coordinates");
  }
}

Complex SpherePoint::value() const {
  if (infinite_) {
    throw Error(ErrorKind::InvalidPoint, "the point at infinity has no finite value");
  }
  return z_;
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) noexcept {
  if (p.is_infinite() && q.is_infinite()) return 0.0;
  if (p.is_infinite() || q.is_infinite()) {
    const Complex z = p.is_infinite() ? *q.finite() : *p.finite();
    return 2.0 / std::hypot(1.0, std::abs(z));
  }
  const Complex a = *p.finite();
  const Complex b = *q.finite();
  return 2.0 * std::abs(a - b) / (std::hypot(1.0, std::abs(a)) * std::hypot(1.0, std::abs(b)));
}

namespace {

[[noreturn]] void indeterminate(const char* form) {
  throw Error(ErrorKind::IndeterminateForm, std::string("indeterminate form ") + form);
}

bool is_zero(const SpherePoint& p) noexcept {
  return p.is_finite() && *p.finite() == Complex{};
}

}  // namespace

SpherePoint ext_add(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinite() && b.is_infinite()) indeterminate("inf + inf");
  if (a.is_infinite() || b.is_infinite()) return SpherePoint::infinity();
  return a.value() + b.value();
}

SpherePoint ext_sub(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinite() && b.is_infinite()) indeterminate("inf - inf");
  if (a.is_infinite() || b.is_infinite()) return SpherePoint::infinity();
  return a.value() - b.value();
}

SpherePoint ext_mul(const SpherePoint& a, const SpherePoint& b) {
  if ((a.is_infinite() && is_zero(b)) || (b.is_infinite() && is_zero(a))) {
    indeterminate("0 * inf");
  }
  if (a.is_infinite() || b.is_infinite()) return SpherePoint::infinity();
  return a.value() * b.value();
}

SpherePoint ext_inv(const SpherePoint& a) noexcept {
  if (a.is_infinite()) return SpherePoint{};
  if (is_zero(a)) return SpherePoint::infinity();
  return SpherePoint(1.0 / *a.finite());
}

SpherePoint ext_div(const SpherePoint& a, const SpherePoint& b) {
  if (is_zero(a) && is_zero(b)) indeterminate("0 / 0");
  if (a.is_infinite() && b.is_infinite()) indeterminate("inf / inf");
  if (a.is_infinite()) return SpherePoint::infinity();
  if (b.is_infinite()) return SpherePoint{};
  if (is_zero(b)) return SpherePoint::infinity();
  return a.value() / b.value();
}

SpherePoint ext_conj(const SpherePoint& a) noexcept {
  if (a.is_infinite()) return a;
  return SpherePoint(std::conj(*a.finite()));
}

Homogeneous to_homogeneous(const SpherePoint& p) noexcept {
  if (p.is_infinite()) return {Complex(1.0, 0.0), Complex(0.0, 0.0)};
  return {*p.finite(), Complex(1.0, 0.0)};
}

SpherePoint from_homogeneous(const Homogeneous& h) {
  const bool x_zero = h.x == Complex{};
  const bool y_zero = h.y == Complex{};
  if (x_zero && y_zero) indeterminate("(0 : 0)");
  if (y_zero) return SpherePoint::infinity();
  const Complex z = h.x / h.y;
  // Overflow of a tiny denominator is a point at infinity.
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return SpherePoint::infinity();
  return z;
}

}  // namespace moebius_kit

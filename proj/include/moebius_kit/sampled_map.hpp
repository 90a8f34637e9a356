#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "moebius_kit/moebius.hpp"
#include "moebius_kit/sphere.hpp"

namespace moebius_kit {

struct Disk {
  Complex center;
  double radius = 1.0;

  bool contains(Complex z) const noexcept { return std::abs(z - center) < radius; }
};

/// Additive term applied after the rational part; sin_re adds amplitude * sin(Re z).
struct Perturbation {
  enum class Kind { none, sin_re };
  Kind kind = Kind::none;
  double amplitude = 0.0;
};

/// Rational map num(w) / den(w) with coefficients lowest degree first and
/// w = z, or w = conj(z) when conjugate is set.
struct RationalMap {
  std::vector<Complex> numerator;
  std::vector<Complex> denominator{Complex(1.0)};
  bool conjugate = false;
  Perturbation perturbation;

  /// Throws InvalidSampledMap on an empty numerator or a zero denominator.
  void validate() const;

  /// Total on the sphere. Poles map to infinity, removable 0/0 points are
  /// resolved by differentiation; the perturbation is not applied at infinity.
  SpherePoint operator()(const SpherePoint& z) const;

  static RationalMap from_moebius(const MoebiusMap& m);
};

struct SamplePair {
  SpherePoint input;
  SpherePoint output;
};

/// A map known either analytically on a disk or through explicit samples.
/// Evaluation is pure and may be called concurrently.
class SampledMap {
 public:
  using Callable = std::function<SpherePoint(const SpherePoint&)>;

  static SampledMap rational(RationalMap map, Disk region);
  static SampledMap moebius(const MoebiusMap& m, Disk region);
  /// Arbitrary pure callable; the caller guarantees thread safety.
  static SampledMap callable(Callable f, Disk region);
  /// Merges exact duplicates; throws InvalidSampledMap on conflicting
  /// duplicates or fewer than four distinct inputs. The region is the
  /// bounding disk of the finite inputs.
  static SampledMap from_pairs(std::vector<SamplePair> pairs);

  bool is_explicit() const noexcept { return explicit_; }
  const Disk& region() const noexcept { return region_; }
  const std::vector<SamplePair>& pairs() const noexcept { return pairs_; }
  const RationalMap* rational_descriptor() const noexcept { return rational_.get(); }

  /// Explicit maps answer only at sample inputs (exact match, else chordal
  /// 1e-12) and throw InvalidSampledMap elsewhere.
  SpherePoint operator()(const SpherePoint& z) const;

  /// Inputs used by the injectivity probe and the residual of a fitted map:
  /// a polar grid on the region, symmetric about its center, or the explicit
  /// inputs.
  std::vector<SpherePoint> sample_inputs() const;

 private:
  SampledMap() = default;

  bool explicit_ = false;
  Disk region_;
  std::shared_ptr<const RationalMap> rational_;
  Callable callable_;
  std::vector<SamplePair> pairs_;
};

}  // namespace moebius_kit

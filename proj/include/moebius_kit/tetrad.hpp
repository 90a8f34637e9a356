#pragma once

#include <array>
#include <vector>

#include "moebius_kit/sphere.hpp"

namespace moebius_kit {

/// Ordered quadruple of sphere points with no three coincident elements.
class Tetrad {
 public:
  /// Throws InvalidTetrad if three (or four) elements coincide exactly.
  explicit Tetrad(const std::array<SpherePoint, 4>& points);
  Tetrad(SpherePoint z1, SpherePoint z2, SpherePoint z3, SpherePoint z4)
      : Tetrad(std::array<SpherePoint, 4>{z1, z2, z3, z4}) {}

  const std::array<SpherePoint, 4>& points() const noexcept { return points_; }
  const SpherePoint& operator[](std::size_t i) const { return points_.at(i); }

  /// All four points pairwise distinct.
  bool nonsingular() const noexcept;

  bool contains_infinity() const noexcept;

  friend bool operator==(const Tetrad&, const Tetrad&) noexcept = default;

 private:
  std::array<SpherePoint, 4> points_;
};

/// True iff no value occurs three or more times (exact coincidence).
bool admissible_tetrad(const std::array<SpherePoint, 4>& points) noexcept;

/// Anharmonic ratio (z1-z3)(z2-z4) / ((z3-z2)(z4-z1)).
///
/// Four finite distinct points evaluate the formula directly. Points at
/// infinity enter through homogeneous brackets, which cancel the divergent
/// factors symbolically; with z4 = inf this reduces to -(z1-z3)/(z3-z2).
/// A coincident pair yields the limiting value exactly: 0 for {1,3} or {2,4},
/// 1 for {1,2} or {3,4}, infinity for {2,3} or {1,4}.
SpherePoint cross_ratio(const Tetrad& t);

/// Disjoint transpositions of positions used by the permutation identities.
enum class Transposition { s12, s13, s14 };

Tetrad permute(const Tetrad& t, Transposition s);

/// The ratio the permutation law predicts for the transposed tetrad:
/// 1/A, A/(A-1), 1-A.
SpherePoint permuted_ratio(const SpherePoint& ratio, Transposition s);

inline constexpr double kOrbitDedupTolerance = 1e-12;

/// True iff alpha is one of the singular values 0, 1, infinity (exact).
bool is_degenerate_ratio(const SpherePoint& alpha) noexcept;

/// The set {a, 1/a, 1-a, 1/(1-a), a/(a-1), (a-1)/a}, deduplicated under the
/// chordal metric, in first-occurrence order. Throws DegenerateAlpha.
std::vector<SpherePoint> orbit(const SpherePoint& alpha);

/// Set equality of two orbits up to chordal tolerance.
bool same_point_set(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b,
                    double tol = kOrbitDedupTolerance);

/// The unique z4 with cross_ratio({z1, z2, z3, z4}) = alpha; may be infinity.
/// Throws DegenerateAlpha or CollidingBasePoints.
SpherePoint solve_fourth_point(const SpherePoint& z1, const SpherePoint& z2,
                               const SpherePoint& z3, const SpherePoint& alpha);

/// (1 + i sqrt 3) / 2 and its conjugate.
SpherePoint apollonian_ratio(bool upper = true) noexcept;

/// Distance-product test: |z2-z3||z1-z4|, |z3-z1||z2-z4|, |z1-z2||z3-z4| agree
/// pairwise within tol * max product. Finite pairwise-distinct tetrads only.
bool apollonian_by_products(const Tetrad& t, double tol);

/// Cross-ratio test: ratio within chordal tol of (1 +- i sqrt 3) / 2.
bool apollonian_by_cross_ratio(const Tetrad& t, double tol);

/// Product test for finite tetrads, cross-ratio test when infinity is
/// present. Throws InvalidTetrad unless all four points are distinct.
bool is_apollonian(const Tetrad& t, double tol);

}  // namespace moebius_kit

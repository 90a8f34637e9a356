#pragma once

#include <array>

#include "moebius_kit/sphere.hpp"
#include "moebius_kit/tetrad.hpp"

namespace moebius_kit {

/// Element of the full Möbius group: z -> (a w + b) / (c w + d) with w = z,
/// or w = conj(z) when the map is conjugating (orientation reversing).
///
/// The matrix is kept at unit determinant; the square root used for scaling
/// has nonnegative real part (nonnegative imaginary part on a tie), so the
/// representative is canonical for a given input matrix up to that choice.
class MoebiusMap {
 public:
  /// Identity.
  MoebiusMap() = default;

  /// Throws SingularMap when |ad - bc| < 1e-14 relative to the entry scale.
  MoebiusMap(Complex a, Complex b, Complex c, Complex d, bool conjugating = false);

  static MoebiusMap identity() { return {}; }
  /// z -> conj(z).
  static MoebiusMap conjugation() { return {1.0, 0.0, 0.0, 1.0, true}; }

  const std::array<Complex, 4>& matrix() const noexcept { return m_; }
  Complex a() const noexcept { return m_[0]; }
  Complex b() const noexcept { return m_[1]; }
  Complex c() const noexcept { return m_[2]; }
  Complex d() const noexcept { return m_[3]; }
  bool conjugating() const noexcept { return conjugating_; }

  SpherePoint operator()(const SpherePoint& z) const noexcept;

 private:
  std::array<Complex, 4> m_{Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0)};
  bool conjugating_ = false;
};

inline constexpr double kPoleCutoff = 1e-300;

SpherePoint apply(const MoebiusMap& m, const SpherePoint& z) noexcept;

/// m1 after m2.
MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2);

MoebiusMap invert(const MoebiusMap& m);

/// The linear-fractional map sending p_i to q_i, built as
/// (standard map of q)^-1 after (standard map of p), where the standard map
/// of a triple sends it to (0, 1, inf). Throws CollidingBasePoints.
MoebiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                             const std::array<SpherePoint, 3>& q);

/// Sends (p1, p2, p3) to (0, 1, inf).
MoebiusMap to_standard_triple(const std::array<SpherePoint, 3>& p);

Tetrad image_tetrad(const MoebiusMap& m, const Tetrad& t);

/// Entrywise comparison of the normalized matrices up to global sign.
bool approx_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol);

}  // namespace moebius_kit

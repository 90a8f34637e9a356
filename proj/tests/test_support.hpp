#pragma once

// Shared generators and independent oracles for the test suites. Oracles use
// plain complex arithmetic and never call into the code paths they check.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "moebius_kit/moebius.hpp"
#include "moebius_kit/random.hpp"
#include "moebius_kit/sphere.hpp"
#include "moebius_kit/tetrad.hpp"

namespace moebius_kit::testing {

inline Complex random_complex(Rng& rng, double half = 3.0) { return rng.in_square(half); }

/// Four finite points, pairwise at least `sep` apart.
inline Tetrad random_finite_tetrad(Rng& rng, double half = 3.0, double sep = 0.05) {
  while (true) {
    std::array<Complex, 4> z;
    for (auto& v : z) v = random_complex(rng, half);
    bool ok = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) ok = ok && std::abs(z[i] - z[j]) >= sep;
    if (ok) return Tetrad(z[0], z[1], z[2], z[3]);
  }
}

/// Nonsingular tetrad; with probability 1/4 one position is infinity.
inline Tetrad random_nonsingular_tetrad(Rng& rng) {
  const Tetrad t = random_finite_tetrad(rng);
  if (rng.uniform() < 0.25) {
    auto p = t.points();
    p[rng.next() % 4] = SpherePoint::infinity();
    return Tetrad(p);
  }
  return t;
}

/// Matrix entries in the unit square, determinant bounded away from zero.
inline MoebiusMap random_moebius(Rng& rng, bool conjugating) {
  while (true) {
    const Complex a = random_complex(rng, 1.0), b = random_complex(rng, 1.0);
    const Complex c = random_complex(rng, 1.0), d = random_complex(rng, 1.0);
    if (std::abs(a * d - b * c) > 0.2) return MoebiusMap(a, b, c, d, conjugating);
  }
}

/// Random map whose pole lies at least `margin` outside the disk.
inline MoebiusMap random_moebius_regular_on(Rng& rng, bool conjugating, Complex center,
                                            double radius, double margin) {
  while (true) {
    const MoebiusMap m = random_moebius(rng, conjugating);
    const SpherePoint pole = invert(m)(SpherePoint::infinity());
    if (pole.is_infinite() || std::abs(pole.value() - center) > radius + margin) return m;
  }
}

/// Direct evaluation of (z1-z3)(z2-z4) / ((z3-z2)(z4-z1)) on finite points.
inline Complex naive_cross_ratio(Complex z1, Complex z2, Complex z3, Complex z4) {
  return (z1 - z3) * (z2 - z4) / ((z3 - z2) * (z4 - z1));
}

/// Chordal distance computed from the stereographic embedding in R^3.
inline double sphere_embedding_distance(const SpherePoint& p, const SpherePoint& q) {
  auto embed = [](const SpherePoint& s) -> std::array<double, 3> {
    if (s.is_infinite()) return {0.0, 0.0, 1.0};
    const Complex z = s.value();
    const double n = std::norm(z);
    return {2.0 * z.real() / (1.0 + n), 2.0 * z.imag() / (1.0 + n), (n - 1.0) / (n + 1.0)};
  };
  const auto a = embed(p), b = embed(q);
  return std::sqrt((a[0] - b[0]) * (a[0] - b[0]) + (a[1] - b[1]) * (a[1] - b[1]) +
                   (a[2] - b[2]) * (a[2] - b[2]));
}

/// Plain evaluation of (a w + b)/(c w + d) on a finite point.
inline Complex naive_moebius(const MoebiusMap& m, Complex z) {
  const Complex w = m.conjugating() ? std::conj(z) : z;
  return (m.a() * w + m.b()) / (m.c() * w + m.d());
}

inline double chordal(Complex a, Complex b) {
  return chordal_distance(SpherePoint(a), SpherePoint(b));
}

}  // namespace moebius_kit::testing

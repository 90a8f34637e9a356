#include "moebius_kit/moebius.hpp"

#include <algorithm>
#include <cmath>

namespace moebius_kit {

namespace {

using Matrix = std::array<Complex, 4>;

Matrix multiply(const Matrix& x, const Matrix& y) noexcept {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
          x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3]};
}

Matrix conjugate(const Matrix& x) noexcept {
  return {std::conj(x[0]), std::conj(x[1]), std::conj(x[2]), std::conj(x[3])};
}

}  // namespace

MoebiusMap::MoebiusMap(Complex a, Complex b, Complex c, Complex d, bool conjugating)
    : conjugating_(conjugating) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::SingularMap, "Möbius matrix must be finite and nonzero");
  }
  // Pre-scaling keeps the determinant in range for very large or small entries.
  a /= scale;
  b /= scale;
  c /= scale;
  d /= scale;
  const Complex det = a * d - b * c;
  if (std::abs(det) < 1e-14) {
    throw Error(ErrorKind::SingularMap, "Möbius matrix has vanishing determinant");
  }
  Complex root = std::sqrt(det);
  if (root.real() < 0.0 || (root.real() == 0.0 && root.imag() < 0.0)) root = -root;
  m_ = {a / root, b / root, c / root, d / root};
}

SpherePoint MoebiusMap::operator()(const SpherePoint& z) const noexcept {
  const SpherePoint w = conjugating_ ? ext_conj(z) : z;
  const auto& [a, b, c, d] = m_;
  if (w.is_infinite()) {
    if (c == Complex{}) return SpherePoint::infinity();
    return from_homogeneous({a, c});
  }
  const Complex x = *w.finite();
  const Complex den = c * x + d;
  if (std::abs(den) < kPoleCutoff) return SpherePoint::infinity();
  return from_homogeneous({a * x + b, den});
}

SpherePoint apply(const MoebiusMap& m, const SpherePoint& z) noexcept { return m(z); }

MoebiusMap compose(const MoebiusMap& m1, const MoebiusMap& m2) {
  // m1(m2(z)): when m1 conjugates, it conjugates the output of m2, which is
  // the same as conjugating m2's coefficients and its input.
  const Matrix inner = m1.conjugating() ? conjugate(m2.matrix()) : m2.matrix();
  const Matrix p = multiply(m1.matrix(), inner);
  return {p[0], p[1], p[2], p[3], m1.conjugating() != m2.conjugating()};
}

MoebiusMap invert(const MoebiusMap& m) {
  const Matrix inv{m.d(), -m.b(), -m.c(), m.a()};
  const Matrix r = m.conjugating() ? conjugate(inv) : inv;
  return {r[0], r[1], r[2], r[3], m.conjugating()};
}

MoebiusMap to_standard_triple(const std::array<SpherePoint, 3>& p) {
  if (p[0] == p[1] || p[0] == p[2] || p[1] == p[2]) {
    throw Error(ErrorKind::CollidingBasePoints, "triple must be pairwise distinct");
  }
  const Homogeneous h1 = to_homogeneous(p[0]), h2 = to_homogeneous(p[1]),
                    h3 = to_homogeneous(p[2]);
  // z -> [z,p1][p2,p3] / ([z,p3][p2,p1]) written as a matrix on (x : y).
  const Complex k23 = bracket(h2, h3);
  const Complex k21 = bracket(h2, h1);
  return {k23 * h1.y, -k23 * h1.x, k21 * h3.y, -k21 * h3.x};
}

MoebiusMap from_three_points(const std::array<SpherePoint, 3>& p,
                             const std::array<SpherePoint, 3>& q) {
  return compose(invert(to_standard_triple(q)), to_standard_triple(p));
}

Tetrad image_tetrad(const MoebiusMap& m, const Tetrad& t) {
  const auto& z = t.points();
  return Tetrad(m(z[0]), m(z[1]), m(z[2]), m(z[3]));
}

bool approx_equal(const MoebiusMap& m1, const MoebiusMap& m2, double tol) {
  if (m1.conjugating() != m2.conjugating()) return false;
  auto within = [&](double sign) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (std::abs(m1.matrix()[i] - sign * m2.matrix()[i]) > tol) return false;
    }
    return true;
  };
  return within(1.0) || within(-1.0);
}

}  // namespace moebius_kit

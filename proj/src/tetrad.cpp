#include "moebius_kit/tetrad.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace moebius_kit {

bool admissible_tetrad(const std::array<SpherePoint, 4>& points) noexcept {
  for (std::size_t i = 0; i < 4; ++i) {
    int count = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (points[i] == points[j]) ++count;
    }
    if (count >= 3) return false;
  }
  return true;
}

Tetrad::Tetrad(const std::array<SpherePoint, 4>& points) : points_(points) {
  if (!admissible_tetrad(points_)) {
    throw Error(ErrorKind::InvalidTetrad, "tetrad has three coincident elements");
  }
}

bool Tetrad::nonsingular() const noexcept {
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      if (points_[i] == points_[j]) return false;
    }
  }
  return true;
}

bool Tetrad::contains_infinity() const noexcept {
  return std::any_of(points_.begin(), points_.end(),
                     [](const SpherePoint& p) { return p.is_infinite(); });
}

SpherePoint cross_ratio(const Tetrad& t) {
  const auto& z = t.points();
  // Coincidence pattern. With at most two coincidences per value the numerator
  // pairs {1,3},{2,4} and the denominator pairs {2,3},{1,4} never vanish
  // together, so each singular limit is one of 0, 1, infinity.
  if (z[0] == z[2] || z[1] == z[3]) return SpherePoint{};
  if (z[1] == z[2] || z[0] == z[3]) return SpherePoint::infinity();
  if (z[0] == z[1] || z[2] == z[3]) return SpherePoint(1.0);

  if (!t.contains_infinity()) {
    const Complex z1 = *z[0].finite(), z2 = *z[1].finite();
    const Complex z3 = *z[2].finite(), z4 = *z[3].finite();
    return from_homogeneous({(z1 - z3) * (z2 - z4), (z3 - z2) * (z4 - z1)});
  }
  const Homogeneous h1 = to_homogeneous(z[0]), h2 = to_homogeneous(z[1]);
  const Homogeneous h3 = to_homogeneous(z[2]), h4 = to_homogeneous(z[3]);
  return from_homogeneous({bracket(h1, h3) * bracket(h2, h4), bracket(h3, h2) * bracket(h4, h1)});
}

Tetrad permute(const Tetrad& t, Transposition s) {
  auto p = t.points();
  switch (s) {
    case Transposition::s12: std::swap(p[0], p[1]); break;
    case Transposition::s13: std::swap(p[0], p[2]); break;
    case Transposition::s14: std::swap(p[0], p[3]); break;
  }
  return Tetrad(p);
}

SpherePoint permuted_ratio(const SpherePoint& ratio, Transposition s) {
  const SpherePoint one(1.0);
  switch (s) {
    case Transposition::s12: return ext_inv(ratio);
    case Transposition::s13:
      if (ratio.is_infinite()) return one;
      return ext_div(ratio, ext_sub(ratio, one));
    case Transposition::s14:
      return ext_sub(one, ratio);
  }
  return ratio;
}

bool is_degenerate_ratio(const SpherePoint& alpha) noexcept {
  return alpha.is_infinite() || alpha == SpherePoint(0.0) || alpha == SpherePoint(1.0);
}

namespace {

void require_admissible_alpha(const SpherePoint& alpha) {
  if (is_degenerate_ratio(alpha)) {
    throw Error(ErrorKind::DegenerateAlpha, "anharmonic ratio must avoid 0, 1 and infinity");
  }
}

}  // namespace

std::vector<SpherePoint> orbit(const SpherePoint& alpha) {
  require_admissible_alpha(alpha);
  const Complex a = alpha.value();
  const std::array<Complex, 6> values{a,           1.0 / a,           1.0 - a,
                                      1.0 / (1.0 - a), a / (a - 1.0), (a - 1.0) / a};
  std::vector<SpherePoint> out;
  for (const Complex& v : values) {
    const SpherePoint p(v);
    const bool seen = std::any_of(out.begin(), out.end(), [&](const SpherePoint& q) {
      return chordal_distance(p, q) <= kOrbitDedupTolerance;
    });
    if (!seen) out.push_back(p);
  }
  return out;
}

bool same_point_set(const std::vector<SpherePoint>& a, const std::vector<SpherePoint>& b,
                    double tol) {
  auto covered = [tol](const std::vector<SpherePoint>& xs, const std::vector<SpherePoint>& ys) {
    return std::all_of(xs.begin(), xs.end(), [&](const SpherePoint& x) {
      return std::any_of(ys.begin(), ys.end(),
                         [&](const SpherePoint& y) { return chordal_distance(x, y) <= tol; });
    });
  };
  return a.size() == b.size() && covered(a, b) && covered(b, a);
}

SpherePoint solve_fourth_point(const SpherePoint& z1, const SpherePoint& z2,
                               const SpherePoint& z3, const SpherePoint& alpha) {
  require_admissible_alpha(alpha);
  if (z1 == z2 || z1 == z3 || z2 == z3) {
    throw Error(ErrorKind::CollidingBasePoints, "base points must be pairwise distinct");
  }
  // alpha [32] [41] = [13] [24] is linear in the homogeneous coordinates of z4.
  const Homogeneous h1 = to_homogeneous(z1), h2 = to_homogeneous(z2), h3 = to_homogeneous(z3);
  const Complex k13 = bracket(h1, h3);
  const Complex k32 = alpha.value() * bracket(h3, h2);
  return from_homogeneous({k13 * h2.x + k32 * h1.x, k13 * h2.y + k32 * h1.y});
}

SpherePoint apollonian_ratio(bool upper) noexcept {
  const double s = std::sqrt(3.0) / 2.0;
  return SpherePoint(Complex(0.5, upper ? s : -s));
}

namespace {

void require_distinct(const Tetrad& t) {
  if (!t.nonsingular()) {
    throw Error(ErrorKind::InvalidTetrad, "Apollonian test requires four distinct points");
  }
}

}  // namespace

bool apollonian_by_products(const Tetrad& t, double tol) {
  require_distinct(t);
  if (t.contains_infinity()) {
    throw Error(ErrorKind::InvalidTetrad, "distance products need finite points");
  }
  const Complex z1 = t[0].value(), z2 = t[1].value(), z3 = t[2].value(), z4 = t[3].value();
  const double p1 = std::abs(z2 - z3) * std::abs(z1 - z4);
  const double p2 = std::abs(z3 - z1) * std::abs(z2 - z4);
  const double p3 = std::abs(z1 - z2) * std::abs(z3 - z4);
  const double bound = tol * std::max({p1, p2, p3});
  return std::abs(p1 - p2) <= bound && std::abs(p2 - p3) <= bound && std::abs(p1 - p3) <= bound;
}

bool apollonian_by_cross_ratio(const Tetrad& t, double tol) {
  require_distinct(t);
  const SpherePoint a = cross_ratio(t);
  return chordal_distance(a, apollonian_ratio(true)) <= tol ||
         chordal_distance(a, apollonian_ratio(false)) <= tol;
}

bool is_apollonian(const Tetrad& t, double tol) {
  require_distinct(t);
  if (t.contains_infinity()) return apollonian_by_cross_ratio(t, tol);
  return apollonian_by_products(t, tol);
}

}  // namespace moebius_kit

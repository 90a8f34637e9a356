#include "moebius_kit/circles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace moebius_kit {

namespace {

constexpr double kSignThreshold = 1e-12;

struct Coefficients {
  double A;
  double b1;
  double b2;
  double C;
};

Coefficients normalize(Coefficients k) {
  const double norm = std::sqrt(k.A * k.A + 2.0 * (k.b1 * k.b1 + k.b2 * k.b2) + k.C * k.C);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw Error(ErrorKind::DegenerateFit, "circle coefficients vanish");
  }
  k = {k.A / norm, k.b1 / norm, k.b2 / norm, k.C / norm};
  for (double v : {k.A, k.b1, k.b2, k.C}) {
    if (std::abs(v) > kSignThreshold) {
      if (v < 0.0) k = {-k.A, -k.b1, -k.b2, -k.C};
      break;
    }
  }
  // Lines are identified exactly.
  if (std::abs(k.A) <= kSignThreshold * 1e-3) k.A = 0.0;
  return k;
}

}  // namespace

GeneralizedCircle::GeneralizedCircle(double A, Complex B, double C) {
  const Coefficients k = normalize({A, B.real(), B.imag(), C});
  A_ = k.A;
  B_ = Complex(k.b1, k.b2);
  C_ = k.C;
  if (!(std::norm(B_) - A_ * C_ > 0.0)) {
    throw Error(ErrorKind::DegenerateFit, "coefficients describe a point or an empty set");
  }
}

GeneralizedCircle GeneralizedCircle::circle(Complex center, double radius) {
  return {1.0, -center, std::norm(center) - radius * radius};
}

GeneralizedCircle GeneralizedCircle::line(Complex p, Complex q) {
  const Complex B = Complex(0.0, 1.0) * (q - p);
  return {0.0, B, -2.0 * (B * std::conj(p)).real()};
}

Complex GeneralizedCircle::center() const {
  if (is_line()) throw Error(ErrorKind::DegenerateFit, "a line has no center");
  return -B_ / A_;
}

double GeneralizedCircle::radius() const {
  if (is_line()) throw Error(ErrorKind::DegenerateFit, "a line has no radius");
  return std::sqrt(std::norm(B_) - A_ * C_) / std::abs(A_);
}

double GeneralizedCircle::residual(const SpherePoint& z) const noexcept {
  if (z.is_infinite()) return A_;
  const Complex w = *z.finite();
  return A_ * std::norm(w) + 2.0 * (B_ * std::conj(w)).real() + C_;
}

GeneralizedCircle circle_through(const SpherePoint& p1, const SpherePoint& p2,
                                 const SpherePoint& p3) {
  if (p1 == p2 || p1 == p3 || p2 == p3) {
    throw Error(ErrorKind::CollidingBasePoints, "circle needs three distinct points");
  }
  Eigen::Matrix<double, 3, 4> rows;
  const std::array<const SpherePoint*, 3> pts{&p1, &p2, &p3};
  for (int r = 0; r < 3; ++r) {
    if (pts[r]->is_infinite()) {
      rows.row(r) << 1.0, 0.0, 0.0, 0.0;
    } else {
      const Complex z = *pts[r]->finite();
      rows.row(r) << std::norm(z), 2.0 * z.real(), 2.0 * z.imag(), 1.0;
    }
  }
  // Null vector of the 3x4 system by signed 3x3 cofactors.
  std::array<double, 4> v{};
  for (int col = 0; col < 4; ++col) {
    Eigen::Matrix3d minor;
    for (int c = 0, k = 0; c < 4; ++c) {
      if (c == col) continue;
      minor.col(k++) = rows.col(c);
    }
    v[col] = ((col % 2 == 0) ? 1.0 : -1.0) * minor.determinant();
  }
  try {
    return GeneralizedCircle(v[0], Complex(v[1], v[2]), v[3]);
  } catch (const Error&) {
    throw Error(ErrorKind::CollidingBasePoints, "points are numerically coincident");
  }
}

bool on_circle(const GeneralizedCircle& c, const SpherePoint& z, double tol) {
  return std::abs(c.residual(z)) <= tol;
}

CircleFit fit_circle(std::span<const SpherePoint> points) {
  const bool has_infinity =
      std::any_of(points.begin(), points.end(), [](const SpherePoint& p) { return p.is_infinite(); });
  const auto finite_count = static_cast<Eigen::Index>(
      std::count_if(points.begin(), points.end(), [](const SpherePoint& p) { return p.is_finite(); }));
  if (points.size() < 3 || (has_infinity && finite_count < 2)) {
    throw Error(ErrorKind::TooFewPoints, "circle fit needs at least three points");
  }
  // Unknowns (A, sqrt2 Re B, sqrt2 Im B, C) make the normalization a unit norm.
  const double s2 = std::numbers::sqrt2;
  const int offset = has_infinity ? 1 : 0;
  Eigen::MatrixXd design(finite_count, 4 - offset);
  Eigen::Index r = 0;
  for (const SpherePoint& p : points) {
    if (p.is_infinite()) continue;
    const Complex z = *p.finite();
    Eigen::RowVector4d row(std::norm(z), s2 * z.real(), s2 * z.imag(), 1.0);
    design.row(r++) = row.tail(4 - offset);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const Eigen::VectorXd u = svd.matrixV().col(design.cols() - 1);
  const double A = has_infinity ? 0.0 : u(0);
  const Complex B(u(1 - offset) / s2, u(2 - offset) / s2);
  const double C = u(3 - offset);
  GeneralizedCircle circle(A, B, C);
  double worst = 0.0;
  for (const SpherePoint& p : points) worst = std::max(worst, std::abs(circle.residual(p)));
  return {circle, worst};
}

std::vector<SpherePoint> sample_circle(const GeneralizedCircle& c, std::size_t count) {
  std::vector<SpherePoint> out;
  out.reserve(count);
  const double pi = std::numbers::pi;
  if (!c.is_line()) {
    const Complex center = c.center();
    const double radius = c.radius();
    for (std::size_t k = 0; k < count; ++k) {
      const double phi = 2.0 * pi * static_cast<double>(k) / static_cast<double>(count);
      out.emplace_back(center + std::polar(radius, phi));
    }
    return out;
  }
  const Complex B = c.B();
  const Complex foot = -c.C() * B / (2.0 * std::norm(B));
  const Complex dir = Complex(0.0, 1.0) * B / std::abs(B);
  for (std::size_t k = 0; k < count; ++k) {
    // phi in (-pi/2, pi/2]; the last sample is the point at infinity.
    const double phi = -pi / 2.0 + pi * static_cast<double>(k + 1) / static_cast<double>(count);
    if (k + 1 == count) {
      out.push_back(SpherePoint::infinity());
    } else {
      out.emplace_back(foot + std::tan(phi) * dir);
    }
  }
  return out;
}

}  // namespace moebius_kit

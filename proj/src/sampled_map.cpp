#include "moebius_kit/sampled_map.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace moebius_kit {

namespace {

std::vector<Complex> trimmed(std::vector<Complex> c) {
  while (!c.empty() && c.back() == Complex{}) c.pop_back();
  return c;
}

Complex horner(const std::vector<Complex>& c, Complex w) noexcept {
  Complex acc{};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * w + *it;
  return acc;
}

std::vector<Complex> derivative(const std::vector<Complex>& c) {
  std::vector<Complex> d;
  for (std::size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
  return d;
}

constexpr std::size_t kGridRings = 8;
constexpr std::size_t kGridSpokes = 24;

}  // namespace

void RationalMap::validate() const {
  if (numerator.empty()) {
    throw Error(ErrorKind::InvalidSampledMap, "rational map needs numerator coefficients");
  }
  if (trimmed(denominator).empty()) {
    throw Error(ErrorKind::InvalidSampledMap, "rational map denominator is identically zero");
  }
}

SpherePoint RationalMap::operator()(const SpherePoint& z) const {
  auto num = trimmed(numerator);
  auto den = trimmed(denominator);
  if (num.empty()) return SpherePoint{};
  if (z.is_infinite()) {
    if (num.size() > den.size()) return SpherePoint::infinity();
    if (num.size() < den.size()) return SpherePoint{};
    const Complex lead = num.back() / den.back();
    return SpherePoint(conjugate ? std::conj(lead) : lead);
  }
  const Complex w = conjugate ? std::conj(*z.finite()) : *z.finite();
  SpherePoint value = SpherePoint::infinity();
  while (true) {
    const Complex n = horner(num, w);
    const Complex d = horner(den, w);
    if (std::abs(d) >= kPoleCutoff) {
      value = from_homogeneous({n, d});
      break;
    }
    if (n != Complex{}) break;  // pole
    num = derivative(num);
    den = derivative(den);
    if (num.empty() || den.empty()) {
      // Root of the numerator of higher multiplicity than the denominator.
      value = den.empty() ? SpherePoint::infinity() : SpherePoint{};
      break;
    }
  }
  if (perturbation.kind == Perturbation::Kind::sin_re && value.is_finite()) {
    return SpherePoint(*value.finite() + perturbation.amplitude * std::sin(z.finite()->real()));
  }
  return value;
}

RationalMap RationalMap::from_moebius(const MoebiusMap& m) {
  RationalMap r;
  r.numerator = {m.b(), m.a()};
  r.denominator = {m.d(), m.c()};
  r.conjugate = m.conjugating();
  return r;
}

SampledMap SampledMap::rational(RationalMap map, Disk region) {
  map.validate();
  if (!(region.radius > 0.0)) {
    throw Error(ErrorKind::InvalidSampledMap, "domain disk needs a positive radius");
  }
  SampledMap s;
  s.region_ = region;
  s.rational_ = std::make_shared<const RationalMap>(std::move(map));
  return s;
}

SampledMap SampledMap::moebius(const MoebiusMap& m, Disk region) {
  return rational(RationalMap::from_moebius(m), region);
}

SampledMap SampledMap::callable(Callable f, Disk region) {
  if (!f) throw Error(ErrorKind::InvalidSampledMap, "empty callable");
  if (!(region.radius > 0.0)) {
    throw Error(ErrorKind::InvalidSampledMap, "domain disk needs a positive radius");
  }
  SampledMap s;
  s.region_ = region;
  s.callable_ = std::move(f);
  return s;
}

SampledMap SampledMap::from_pairs(std::vector<SamplePair> pairs) {
  std::vector<SamplePair> unique;
  for (const SamplePair& p : pairs) {
    auto it = std::find_if(unique.begin(), unique.end(),
                           [&](const SamplePair& q) { return q.input == p.input; });
    if (it == unique.end()) {
      unique.push_back(p);
    } else if (!(it->output == p.output)) {
      throw Error(ErrorKind::InvalidSampledMap, "duplicated input with conflicting outputs");
    }
  }
  if (unique.size() < 4) {
    throw Error(ErrorKind::InvalidSampledMap, "explicit map needs at least four distinct inputs");
  }
  Complex sum{};
  std::size_t finite = 0;
  for (const SamplePair& p : unique) {
    if (p.input.is_finite()) {
      sum += *p.input.finite();
      ++finite;
    }
  }
  if (finite == 0) {
    throw Error(ErrorKind::InvalidSampledMap, "explicit map needs finite inputs");
  }
  const Complex center = sum / static_cast<double>(finite);
  double radius = 0.0;
  for (const SamplePair& p : unique) {
    if (p.input.is_finite()) radius = std::max(radius, std::abs(*p.input.finite() - center));
  }
  SampledMap s;
  s.explicit_ = true;
  s.region_ = {center, radius * (1.0 + 1e-9) + 1e-300};
  s.pairs_ = std::move(unique);
  return s;
}

SpherePoint SampledMap::operator()(const SpherePoint& z) const {
  if (rational_) return (*rational_)(z);
  if (callable_) return callable_(z);
  for (const SamplePair& p : pairs_) {
    if (p.input == z) return p.output;
  }
  for (const SamplePair& p : pairs_) {
    if (chordal_distance(p.input, z) <= 1e-12) return p.output;
  }
  throw Error(ErrorKind::InvalidSampledMap, "explicit map has no sample at the requested input");
}

std::vector<SpherePoint> SampledMap::sample_inputs() const {
  std::vector<SpherePoint> out;
  if (explicit_) {
    for (const SamplePair& p : pairs_) out.push_back(p.input);
    return out;
  }
  out.emplace_back(region_.center);
  for (std::size_t k = 1; k <= kGridRings; ++k) {
    const double rho = 0.95 * region_.radius * static_cast<double>(k) / kGridRings;
    const double phase = 0.1 * static_cast<double>(k);
    for (std::size_t j = 0; j < kGridSpokes; ++j) {
      const double theta = phase + 2.0 * std::numbers::pi * static_cast<double>(j) / kGridSpokes;
      out.emplace_back(region_.center + std::polar(rho, theta));
    }
  }
  return out;
}

}  // namespace moebius_kit

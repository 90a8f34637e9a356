#include "moebius_kit/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "moebius_kit/kernels.hpp"
#include "moebius_kit/random.hpp"

namespace moebius_kit {

namespace {

constexpr std::uint64_t kProbeStream = 0x6d696470ULL;   // "midp"
constexpr std::uint64_t kCircleStream = 0x63697263ULL;  // "circ"
constexpr std::size_t kConservationSteps = 20;

// Tetrads drawn from explicit samples match alpha to a tenth of the test tolerance.
constexpr double kExplicitMatchFraction = 0.1;

bool is_real(const SpherePoint& p) noexcept { return p.is_finite() && p.finite()->imag() == 0.0; }

double point_gap(const SpherePoint& x, const SpherePoint& y) noexcept { return chordal_distance(x, y); }

}  // namespace

void PhiTestConfig::validate() const {
  if (is_degenerate_ratio(alpha)) {
    throw Error(ErrorKind::DegenerateAlpha, "alpha must avoid 0, 1 and infinity");
  }
  if (n_tetrads < 1) throw Error(ErrorKind::InvalidConfig, "n_tetrads must be positive");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidConfig, "tolerance must be positive");
}

double default_tolerance(const SampledMap& f) noexcept {
  return f.is_explicit() ? kExplicitTolerance : kAnalyticTolerance;
}

PhiTestResult phi_test(const SampledMap& f, const PhiTestConfig& cfg, Execution exec) {
  cfg.validate();
  kernels::TetradSource source;
  std::vector<Tetrad> found;
  if (f.is_explicit()) {
    found = kernels::explicit_tetrads(f, cfg.alpha, cfg.tol * kExplicitMatchFraction, cfg.n_tetrads);
    source = [&found](std::size_t i) -> std::optional<Tetrad> {
      if (i < found.size()) return found[i];
      return std::nullopt;
    };
  } else {
    const Disk region = f.region();
    source = [region, alpha = cfg.alpha, seed = cfg.seed](std::size_t i) {
      return kernels::draw_tetrad(region, alpha, seed, i);
    };
  }
  PhiTestResult r = exec == Execution::serial
                        ? kernels::phi_sweep_serial(f, source, cfg.n_tetrads, cfg.alpha, cfg.tol)
                        : kernels::phi_sweep_parallel(f, source, cfg.n_tetrads, cfg.alpha, cfg.tol);
  if (2 * r.generated < cfg.n_tetrads) {
    throw Error(ErrorKind::InsufficientSamples,
                "only " + std::to_string(r.generated) + " of " + std::to_string(cfg.n_tetrads) +
                    " tetrads with the requested ratio could be generated");
  }
  return r;
}

double reevaluate_witness(const SampledMap& f, const PhiWitness& w) {
  std::array<SpherePoint, 4> image;
  for (std::size_t k = 0; k < 4; ++k) image[k] = f(w.tetrad[k]);
  return chordal_distance(cross_ratio(Tetrad(image)), w.alpha);
}

InjectivityResult injectivity_probe(const SampledMap& f, double tol, Execution exec) {
  InjectivityResult r;
  const std::vector<SpherePoint> inputs = f.sample_inputs();
  r.samples = inputs.size();
  if (inputs.size() < 2) {
    throw Error(ErrorKind::TooFewPoints, "injectivity probe needs two samples");
  }
  const std::vector<SpherePoint> outputs = kernels::map_points(std::cref(f), inputs, exec);
  const std::vector<SpherePoint> first(outputs.size(), outputs.front());
  r.spread = (exec == Execution::serial ? kernels::max_chordal_gap_serial(outputs, first)
                                        : kernels::max_chordal_gap_parallel(outputs, first))
                 .value;
  if (r.spread <= tol) {
    r.verdict = InjectivityClass::constant_like;
    return r;
  }
  const auto hit = exec == Execution::serial
                       ? kernels::find_collision_serial(inputs, outputs, tol)
                       : kernels::find_collision_parallel(inputs, outputs, tol);
  if (hit) {
    r.verdict = InjectivityClass::collision;
    r.collision = std::pair{inputs[hit->first], inputs[hit->second]};
  }
  return r;
}

SpherePoint select_midpoint_beta(const SpherePoint& alpha) {
  if (is_degenerate_ratio(alpha)) {
    throw Error(ErrorKind::DegenerateAlpha, "alpha must avoid 0, 1 and infinity");
  }
  const Complex a = alpha.value();
  return std::abs(a) > 1.0 ? alpha : SpherePoint(1.0 / a);
}

MidpointSequence midpoint_sequence(const SpherePoint& beta, Complex z0, Complex w0,
                                   std::size_t k_max) {
  if (is_degenerate_ratio(beta)) {
    throw Error(ErrorKind::DegenerateAlpha, "beta must avoid 0, 1 and infinity");
  }
  const Complex b = beta.value();
  const Complex one_minus_2b = 1.0 - 2.0 * b;
  if (one_minus_2b == Complex{}) {
    throw Error(ErrorKind::InvalidConfig, "beta = 1/2 has no midpoint sequence");
  }
  MidpointSequence s{beta,
                     SpherePoint((1.0 - b) / one_minus_2b),
                     1.0 / one_minus_2b,
                     1.0 / std::abs(one_minus_2b),
                     std::abs(b - 0.5) > 0.5,
                     z0,
                     {},
                     {}};
  Complex w = w0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    s.offsets.push_back(w);
    s.pairs.emplace_back(z0 + w, z0 - w);
    w *= s.step;
  }
  return s;
}

namespace {

// Returns 2 (the diameter) when the extended sum is indeterminate.
double sum_gap(const SpherePoint& x1, const SpherePoint& x2, const SpherePoint& target) {
  try {
    return chordal_distance(ext_add(x1, x2), target);
  } catch (const Error&) {
    return 2.0;
  }
}

}  // namespace

MidpointResult check_midpoints(const SampledMap::Callable& g, std::span<const MidpointProbe> probes,
                               const SpherePoint& alpha, double tol) {
  MidpointResult r;
  r.beta = select_midpoint_beta(alpha);
  const bool contracting = std::abs(r.beta.value() - 0.5) > 0.5;
  r.conservation_checked = contracting;
  r.probes = probes.size();
  for (const MidpointProbe& p : probes) {
    const SpherePoint ga = g(p.z0 + p.w0);
    const SpherePoint gb = g(p.z0 - p.w0);
    const SpherePoint gz = g(p.z0);
    // g(z0) = (g(a0) + g(b0)) / 2 compared as 2 g(z0) = g(a0) + g(b0).
    const SpherePoint twice = gz.is_infinite() ? gz : SpherePoint(2.0 * *gz.finite());
    r.max_midpoint_gap = std::max(r.max_midpoint_gap, sum_gap(ga, gb, twice));
    if (!contracting) continue;
    SpherePoint sum0;
    try {
      sum0 = ext_add(ga, gb);
    } catch (const Error&) {
      r.max_conservation_gap = 2.0;
      continue;
    }
    const MidpointSequence seq = midpoint_sequence(r.beta, p.z0, p.w0, kConservationSteps);
    for (std::size_t k = 1; k < seq.pairs.size(); ++k) {
      const auto& [a, b] = seq.pairs[k];
      r.max_conservation_gap = std::max(r.max_conservation_gap, sum_gap(g(a), g(b), sum0));
    }
  }
  r.pass = r.max_midpoint_gap <= tol && r.max_conservation_gap <= tol;
  return r;
}

std::vector<MidpointProbe> disk_probes(const Disk& region, std::size_t n, std::uint64_t seed) {
  Rng rng(seed, kProbeStream);
  std::vector<MidpointProbe> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex z0 = rng.in_disk(region.center, 0.9 * region.radius);
    const double room = region.radius - std::abs(z0 - region.center);
    out.push_back({z0, rng.in_disk(0.0, 0.9 * room)});
  }
  return out;
}

MidpointResult midpoint_test(const SampledMap& f, const SpherePoint& alpha, std::size_t n_probes,
                             double tol, std::uint64_t seed) {
  const Complex c = f.region().center;
  const double half = f.region().radius / 2.0;
  const std::array<SpherePoint, 3> base{SpherePoint(c), SpherePoint(c + half), SpherePoint(c - half)};
  const std::array<SpherePoint, 3> frame{SpherePoint::infinity(), SpherePoint(1.0), SpherePoint(-1.0)};
  const std::array<SpherePoint, 3> images{f(base[0]), f(base[1]), f(base[2])};
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (point_gap(images[i], images[j]) <= tol) {
        throw Error(ErrorKind::NormalizationFailure,
                    "images of the normalization points coincide");
      }
    }
  }
  MoebiusMap source_to_frame, image_to_frame;
  try {
    source_to_frame = from_three_points(base, frame);
    image_to_frame = from_three_points(images, frame);
  } catch (const Error& e) {
    throw Error(ErrorKind::NormalizationFailure, e.what());
  }
  // u = (r/2) / (z - c): the region becomes |u| > 1/2 and c goes to infinity.
  const MoebiusMap frame_to_source = invert(source_to_frame);
  const SampledMap::Callable g = [&](const SpherePoint& u) {
    return image_to_frame(f(frame_to_source(u)));
  };
  Rng rng(seed, kProbeStream);
  std::vector<MidpointProbe> probes;
  for (std::size_t i = 0; i < n_probes; ++i) {
    const Complex u0 = std::polar(rng.uniform(0.75, 2.5), 2.0 * std::numbers::pi * rng.uniform());
    const double room = std::abs(u0) - 0.5;
    probes.push_back({u0, rng.in_disk(0.0, 0.9 * room)});
  }
  return check_midpoints(g, probes, alpha, tol);
}

MoebiusMap bounding_rotation(std::span<const SpherePoint> points) {
  constexpr int kCandidates = 63;
  auto min_distance = [&](const SpherePoint& p) {
    double m = 2.0;
    for (const SpherePoint& q : points) m = std::min(m, chordal_distance(p, q));
    return m;
  };
  SpherePoint best = SpherePoint::infinity();
  double best_d = min_distance(best);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < kCandidates; ++k) {
    // Fibonacci lattice on the sphere, stereographically projected.
    const double zc = 1.0 - 2.0 * (k + 0.5) / kCandidates;
    const double rho = std::sqrt(1.0 - zc * zc);
    const Complex xy = std::polar(rho, golden * k);
    const SpherePoint p(xy / (1.0 - zc));
    const double d = min_distance(p);
    if (d > best_d) {
      best = p;
      best_d = d;
    }
  }
  if (best.is_infinite()) return MoebiusMap::identity();
  const Complex p = best.value();
  return {std::conj(p), 1.0, -1.0, p};
}

CircleFit fit_circle_bounded(std::span<const SpherePoint> points) {
  const MoebiusMap rot = bounding_rotation(points);
  std::vector<SpherePoint> rotated;
  rotated.reserve(points.size());
  for (const SpherePoint& p : points) rotated.push_back(rot(p));
  return fit_circle(rotated);
}

namespace {

// Residual of one image set: zero when the set collapses to a point,
// infinity when the best algebraic fit is not a real circle.
double image_set_residual(std::span<const SpherePoint> images, double tol) {
  const bool collapsed = std::all_of(images.begin(), images.end(), [&](const SpherePoint& p) {
    return chordal_distance(p, images.front()) <= tol;
  });
  if (collapsed) return 0.0;
  try {
    return fit_circle_bounded(images).residual;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::DegenerateFit) throw;
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

CircleTestResult circle_test(const SampledMap& f, std::size_t n_circles,
                             std::size_t samples_per_circle, double tol, std::uint64_t seed) {
  if (samples_per_circle < 3) {
    throw Error(ErrorKind::TooFewPoints, "circle test needs three samples per circle");
  }
  const Disk& region = f.region();
  Rng rng(seed, kCircleStream);
  CircleTestResult r;
  r.circles = n_circles;
  std::vector<SpherePoint> all_images;
  for (std::size_t k = 0; k < n_circles; ++k) {
    std::vector<SpherePoint> pts;
    if (k % 4 == 3) {
      // Segment of a line, inside the disk by convexity.
      const Complex p = rng.in_disk(region.center, 0.9 * region.radius);
      const Complex q = rng.in_disk(region.center, 0.9 * region.radius);
      for (std::size_t j = 0; j < samples_per_circle; ++j) {
        const double t = static_cast<double>(j) / static_cast<double>(samples_per_circle - 1);
        pts.emplace_back(p + t * (q - p));
      }
    } else {
      const Complex m = rng.in_disk(region.center, 0.5 * region.radius);
      const double rho = rng.uniform(0.2, 0.9) * (region.radius - std::abs(m - region.center));
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      for (std::size_t j = 0; j < samples_per_circle; ++j) {
        const double theta =
            phase + 2.0 * std::numbers::pi * static_cast<double>(j) / samples_per_circle;
        pts.emplace_back(m + std::polar(rho, theta));
      }
    }
    std::vector<SpherePoint> images;
    for (const SpherePoint& p : pts) images.push_back(f(p));
    r.max_residual = std::max(r.max_residual, image_set_residual(images, tol));
    all_images.insert(all_images.end(), images.begin(), images.end());
  }
  for (const SpherePoint& z : f.sample_inputs()) all_images.push_back(f(z));
  r.full_image_residual = image_set_residual(all_images, tol);
  r.degenerate = r.full_image_residual <= tol;
  r.pass = r.max_residual <= tol;
  return r;
}

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::constant: return "constant";
    case Verdict::moebius: return "moebius";
    case Verdict::phi_violating: return "phi_violating";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string_view to_string(StageStatus s) noexcept {
  switch (s) {
    case StageStatus::pass: return "pass";
    case StageStatus::fail: return "fail";
    case StageStatus::skipped: return "skipped";
  }
  return "skipped";
}

std::string_view to_string(InjectivityClass c) noexcept {
  switch (c) {
    case InjectivityClass::injective_like: return "injective_like";
    case InjectivityClass::constant_like: return "constant_like";
    case InjectivityClass::collision: return "collision";
  }
  return "injective_like";
}

namespace {

// Three inputs far apart in the chordal metric.
std::array<SpherePoint, 3> spread_inputs(const SampledMap& f) {
  if (!f.is_explicit()) {
    const Disk& d = f.region();
    std::array<SpherePoint, 3> out;
    for (int k = 0; k < 3; ++k) {
      out[k] = SpherePoint(d.center + std::polar(0.9 * d.radius, 2.0 * std::numbers::pi * k / 3.0));
    }
    return out;
  }
  const auto& pairs = f.pairs();
  std::array<std::size_t, 3> pick{0, 0, 0};
  auto score = [&](std::size_t i, std::size_t used) {
    double m = 2.0;
    for (std::size_t u = 0; u < used; ++u) {
      m = std::min(m, chordal_distance(pairs[i].input, pairs[pick[u]].input));
    }
    return m;
  };
  for (std::size_t slot = 1; slot < 3; ++slot) {
    double best = -1.0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double s = score(i, slot);
      if (s > best) {
        best = s;
        pick[slot] = i;
      }
    }
  }
  return {pairs[pick[0]].input, pairs[pick[1]].input, pairs[pick[2]].input};
}

struct MapFit {
  MoebiusMap map;
  double residual;
};

std::optional<MapFit> fit_map(const SampledMap& f, const std::array<SpherePoint, 3>& p,
                              const std::vector<SpherePoint>& inputs,
                              const std::vector<SpherePoint>& outputs, bool conjugating,
                              Execution exec) {
  const std::array<SpherePoint, 3> q{f(p[0]), f(p[1]), f(p[2])};
  MoebiusMap m;
  try {
    if (conjugating) {
      const MoebiusMap h = from_three_points({ext_conj(p[0]), ext_conj(p[1]), ext_conj(p[2])}, q);
      m = compose(h, MoebiusMap::conjugation());
    } else {
      m = from_three_points(p, q);
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  const std::vector<SpherePoint> predicted =
      kernels::map_points([&m](const SpherePoint& z) { return m(z); }, inputs, exec);
  const double residual = (exec == Execution::serial
                               ? kernels::max_chordal_gap_serial(predicted, outputs)
                               : kernels::max_chordal_gap_parallel(predicted, outputs))
                              .value;
  return MapFit{m, residual};
}

}  // namespace

ClassificationReport classify(const SampledMap& f, const PhiTestConfig& cfg,
                              const ClassifyOptions& options) {
  cfg.validate();
  ClassificationReport report;
  report.seed = cfg.seed;
  report.alpha = cfg.alpha;
  report.tol = cfg.tol;
  report.n_tetrads = cfg.n_tetrads;
  const Execution exec = options.exec;

  report.injectivity = injectivity_probe(f, cfg.tol, exec);
  if (report.injectivity.verdict == InjectivityClass::constant_like) {
    report.verdict = Verdict::constant;
    report.max_residual = report.injectivity.spread;
    return report;
  }

  report.phi = phi_test(f, cfg, exec);
  if (!report.phi->pass) {
    report.phi_status = StageStatus::fail;
    report.verdict = Verdict::phi_violating;
    report.witness = report.phi->witness;
    return report;
  }
  // A map preserving alpha preserves every ratio of its orbit.
  const std::vector<SpherePoint> orb = orbit(cfg.alpha);
  PhiTestConfig corroborate = cfg;
  corroborate.alpha = orb.size() > 1 ? orb[1] : orb[0];
  report.corroboration_alpha = corroborate.alpha;
  report.phi_corroboration = phi_test(f, corroborate, exec);
  if (!report.phi_corroboration->pass) {
    report.phi_status = StageStatus::fail;
    report.verdict = Verdict::phi_violating;
    report.witness = report.phi_corroboration->witness;
    return report;
  }
  report.phi_status = StageStatus::pass;

  if (report.injectivity.verdict == InjectivityClass::collision) {
    report.verdict = Verdict::inconclusive;
    report.diagnostics.emplace_back(
        "non-injective sample pair alongside a passing phi test: a nonconstant map "
        "preserving the ratio must be injective");
    return report;
  }

  bool stages_agree = true;
  if (f.is_explicit()) {
    report.diagnostics.emplace_back("midpoint and circle tests need an analytic map; skipped");
  } else {
    try {
      report.midpoint = midpoint_test(f, cfg.alpha, options.n_probes, cfg.tol, cfg.seed);
      report.midpoint_status = report.midpoint->pass ? StageStatus::pass : StageStatus::fail;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NormalizationFailure) throw;
      report.midpoint_status = StageStatus::fail;
      report.diagnostics.emplace_back(std::string("midpoint test: ") + e.what());
    }
    if (report.midpoint_status == StageStatus::fail) {
      stages_agree = false;
      report.diagnostics.emplace_back("midpoint identity fails in the normalized frame");
    }
    report.circle = circle_test(f, options.n_circles, options.samples_per_circle, cfg.tol, cfg.seed);
    report.circle_status = report.circle->pass ? StageStatus::pass : StageStatus::fail;
    if (!report.circle->pass) {
      stages_agree = false;
      report.diagnostics.emplace_back("image of a sampled circle leaves every generalized circle");
    }
    if (report.circle->degenerate) {
      stages_agree = false;
      report.diagnostics.emplace_back("whole image lies on one generalized circle");
    }
  }

  const std::array<SpherePoint, 3> anchors = spread_inputs(f);
  std::vector<SpherePoint> inputs = f.sample_inputs();
  inputs.insert(inputs.end(), anchors.begin(), anchors.end());
  const std::vector<SpherePoint> outputs = kernels::map_points(std::cref(f), inputs, exec);
  const auto direct = fit_map(f, anchors, inputs, outputs, false, exec);
  const auto reversed = fit_map(f, anchors, inputs, outputs, true, exec);
  std::optional<MapFit> chosen;
  if (direct && direct->residual <= cfg.tol) {
    chosen = direct;
  } else if (reversed && reversed->residual <= cfg.tol) {
    if (is_real(cfg.alpha)) {
      chosen = reversed;
    } else {
      stages_agree = false;
      report.diagnostics.emplace_back(
          "orientation-reversing fit at non-real alpha contradicts the passing phi test");
    }
  }
  if (!chosen) {
    report.fit_status = StageStatus::fail;
    double best = std::numeric_limits<double>::infinity();
    if (direct) best = std::min(best, direct->residual);
    if (reversed) best = std::min(best, reversed->residual);
    report.max_residual = best;
    report.diagnostics.emplace_back("no Möbius map fits all samples within tolerance");
    report.verdict = Verdict::inconclusive;
    return report;
  }
  report.fit_status = StageStatus::pass;
  report.fitted_map = chosen->map;
  report.max_residual = chosen->residual;
  report.verdict = stages_agree ? Verdict::moebius : Verdict::inconclusive;
  return report;
}

}  // namespace moebius_kit

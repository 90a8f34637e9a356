#include "moebius_kit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "kernels_detail.hpp"
#include "moebius_kit/random.hpp"

namespace moebius_kit::kernels {

namespace {

constexpr int kDrawAttempts = 64;

bool separated(const std::array<Complex, 4>& z, std::size_t count, double sep) {
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = i + 1; j < count; ++j) {
      if (std::abs(z[i] - z[j]) < sep) return false;
    }
  }
  return true;
}

}  // namespace

std::optional<Tetrad> draw_tetrad(const Disk& region, const SpherePoint& alpha,
                                  std::uint64_t seed, std::size_t index) {
  Rng rng(seed, index);
  const double sep = region.radius / 100.0;
  for (int attempt = 0; attempt < kDrawAttempts; ++attempt) {
    std::array<Complex, 4> z{};
    for (std::size_t k = 0; k < 3; ++k) z[k] = rng.in_disk(region.center, region.radius);
    if (!separated(z, 3, sep)) continue;
    const SpherePoint z4 = solve_fourth_point(z[0], z[1], z[2], alpha);
    if (z4.is_infinite() || !region.contains(*z4.finite())) continue;
    z[3] = *z4.finite();
    if (!separated(z, 4, sep)) continue;
    return Tetrad(z[0], z[1], z[2], z[3]);
  }
  return std::nullopt;
}

std::vector<Tetrad> explicit_tetrads(const SampledMap& f, const SpherePoint& alpha,
                                     double match_tol, std::size_t limit) {
  std::vector<SpherePoint> in;
  for (const SamplePair& p : f.pairs()) in.push_back(p.input);
  std::vector<Tetrad> out;
  const std::size_t n = in.size();
  for (std::size_t i = 0; i < n && out.size() < limit; ++i) {
    for (std::size_t j = 0; j < n && out.size() < limit; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n && out.size() < limit; ++k) {
        if (k == i || k == j) continue;
        const SpherePoint z4 = solve_fourth_point(in[i], in[j], in[k], alpha);
        std::size_t best = n;
        double best_d = match_tol;
        for (std::size_t l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          const double d = chordal_distance(in[l], z4);
          if (d <= best_d) {
            best = l;
            best_d = d;
          }
        }
        if (best < n) out.emplace_back(in[i], in[j], in[k], in[best]);
      }
    }
  }
  return out;
}

TetradEvaluation evaluate_tetrad(const SampledMap& f, const std::optional<Tetrad>& t,
                                 const SpherePoint& alpha, double tol, std::size_t index) {
  TetradEvaluation ev;
  if (!t) return ev;
  std::array<SpherePoint, 4> w;
  for (std::size_t k = 0; k < 4; ++k) w[k] = f((*t)[k]);
  for (std::size_t i = 0; i < 4; ++i) {
    int close = 0;
    for (std::size_t j = 0; j < 4; ++j) {
      if (chordal_distance(w[i], w[j]) <= tol) ++close;
    }
    if (close >= 3) {
      ev.outcome = TetradOutcome::skipped;
      return ev;
    }
  }
  const Tetrad image(w);
  const SpherePoint achieved = cross_ratio(image);
  ev.gap = chordal_distance(achieved, alpha);
  if (ev.gap > tol) {
    ev.outcome = TetradOutcome::violates;
    ev.witness = PhiWitness{index, *t, image, alpha, achieved, ev.gap};
  } else {
    ev.outcome = TetradOutcome::agrees;
  }
  return ev;
}

namespace detail {

void accumulate(PhiTestResult& r, TetradEvaluation&& ev) {
  if (ev.outcome == TetradOutcome::rejected) return;
  ++r.generated;
  if (ev.outcome == TetradOutcome::skipped) {
    ++r.skipped;
    return;
  }
  ++r.admissible;
  r.max_gap = std::max(r.max_gap, ev.gap);
  if (ev.outcome == TetradOutcome::violates) {
    ++r.violations;
    if (!r.witness || ev.witness->index < r.witness->index) r.witness = std::move(ev.witness);
  }
}

void merge(PhiTestResult& into, PhiTestResult&& part) {
  into.generated += part.generated;
  into.admissible += part.admissible;
  into.skipped += part.skipped;
  into.violations += part.violations;
  into.max_gap = std::max(into.max_gap, part.max_gap);
  if (part.witness && (!into.witness || part.witness->index < into.witness->index)) {
    into.witness = std::move(part.witness);
  }
}

}  // namespace detail

PhiTestResult phi_sweep_serial(const SampledMap& f, const TetradSource& source,
                               std::size_t count, const SpherePoint& alpha, double tol) {
  PhiTestResult r;
  r.alpha = alpha;
  r.requested = count;
  for (std::size_t i = 0; i < count; ++i) detail::accumulate(r, evaluate_tetrad(f, source(i), alpha, tol, i));
  r.pass = r.violations == 0;
  return r;
}

std::optional<std::pair<std::size_t, std::size_t>> find_collision_serial(
    std::span<const SpherePoint> inputs, std::span<const SpherePoint> outputs, double tol) {
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t j = i + 1; j < inputs.size(); ++j) {
      if (chordal_distance(inputs[i], inputs[j]) > 10.0 * tol &&
          chordal_distance(outputs[i], outputs[j]) <= tol) {
        return std::pair{i, j};
      }
    }
  }
  return std::nullopt;
}

GapMax max_chordal_gap_serial(std::span<const SpherePoint> a, std::span<const SpherePoint> b) {
  GapMax m;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = chordal_distance(a[i], b[i]);
    if (d > m.value) m = {d, i};
  }
  return m;
}

}  // namespace moebius_kit::kernels

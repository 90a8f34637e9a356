#pragma once

// Data-parallel inner loops of the classifier. Each kernel has a serial
// reference and an OpenMP version that must agree bit for bit: work items
// are indexed, randomness is derived per index, and reductions pick the
// smallest index on ties.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>

#include "moebius_kit/classifier.hpp"

namespace moebius_kit::kernels {

/// Tetrad for work item `index`, or nullopt if none could be drawn.
using TetradSource = std::function<std::optional<Tetrad>(std::size_t index)>;

/// Random tetrad of ratio alpha inside the disk: three base points with
/// pairwise separation >= radius / 100 and the solved fourth point, retried
/// until the fourth point is finite, inside and separated as well.
std::optional<Tetrad> draw_tetrad(const Disk& region, const SpherePoint& alpha,
                                  std::uint64_t seed, std::size_t index);

/// Tetrads of ratio alpha (within match_tol) among explicit sample inputs,
/// in lexicographic order of the base triple, at most `limit` of them.
std::vector<Tetrad> explicit_tetrads(const SampledMap& f, const SpherePoint& alpha,
                                     double match_tol, std::size_t limit);

enum class TetradOutcome { rejected, skipped, agrees, violates };

struct TetradEvaluation {
  TetradOutcome outcome = TetradOutcome::rejected;
  double gap = 0.0;
  std::optional<PhiWitness> witness;
};

TetradEvaluation evaluate_tetrad(const SampledMap& f, const std::optional<Tetrad>& t,
                                 const SpherePoint& alpha, double tol, std::size_t index);

PhiTestResult phi_sweep_serial(const SampledMap& f, const TetradSource& source,
                               std::size_t count, const SpherePoint& alpha, double tol);
PhiTestResult phi_sweep_parallel(const SampledMap& f, const TetradSource& source,
                                 std::size_t count, const SpherePoint& alpha, double tol);

/// First pair (i, j), i < j lexicographically, whose inputs are chordally
/// farther than 10 tol apart while their outputs are within tol.
std::optional<std::pair<std::size_t, std::size_t>> find_collision_serial(
    std::span<const SpherePoint> inputs, std::span<const SpherePoint> outputs, double tol);
std::optional<std::pair<std::size_t, std::size_t>> find_collision_parallel(
    std::span<const SpherePoint> inputs, std::span<const SpherePoint> outputs, double tol);

struct GapMax {
  double value = 0.0;
  std::size_t index = 0;
};

/// Largest chordal distance between a[i] and b[i]; smallest index on ties.
GapMax max_chordal_gap_serial(std::span<const SpherePoint> a, std::span<const SpherePoint> b);
GapMax max_chordal_gap_parallel(std::span<const SpherePoint> a, std::span<const SpherePoint> b);

/// Pointwise f over the inputs.
std::vector<SpherePoint> map_points(const SampledMap::Callable& f,
                                    std::span<const SpherePoint> inputs, Execution exec);

}  // namespace moebius_kit::kernels

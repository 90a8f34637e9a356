#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "moebius_kit/circles.hpp"
#include "moebius_kit/moebius.hpp"
#include "moebius_kit/sampled_map.hpp"
#include "moebius_kit/tetrad.hpp"

namespace moebius_kit {

enum class Execution { serial, parallel };

inline constexpr double kAnalyticTolerance = 1e-7;
inline constexpr double kExplicitTolerance = 1e-4;
inline constexpr std::uint64_t kDefaultSeed = 20080701;

/// Configuration of the fixed-ratio preservation test.
struct PhiTestConfig {
  SpherePoint alpha{2.0};
  std::size_t n_tetrads = 500;
  double tol = kAnalyticTolerance;
  std::uint64_t seed = kDefaultSeed;

  /// Throws DegenerateAlpha or InvalidConfig.
  void validate() const;
};

/// Default tolerance regime: analytic descriptors vs measured sample pairs.
double default_tolerance(const SampledMap& f) noexcept;

/// A tetrad of ratio alpha whose image is admissible but has another ratio.
struct PhiWitness {
  std::size_t index;
  Tetrad tetrad;
  Tetrad image;
  SpherePoint alpha;
  SpherePoint achieved;
  /// chordal_distance(achieved, alpha)
  double gap;
};

struct PhiTestResult {
  bool pass = true;
  SpherePoint alpha{2.0};
  std::size_t requested = 0;
  /// Tetrads of ratio alpha drawn inside the region.
  std::size_t generated = 0;
  /// Of those, tetrads whose image is again a tetrad.
  std::size_t admissible = 0;
  /// Images with three or more (near-)coincident points.
  std::size_t skipped = 0;
  std::size_t violations = 0;
  double max_gap = 0.0;
  std::optional<PhiWitness> witness;
};

/// Draws tetrads with cross-ratio alpha inside the region, maps them and
/// compares image ratios with alpha. The first witness is the violating
/// tetrad of smallest index, independent of execution mode.
/// Throws InsufficientSamples when fewer than n_tetrads / 2 tetrads exist.
PhiTestResult phi_test(const SampledMap& f, const PhiTestConfig& cfg,
                       Execution exec = Execution::parallel);

/// Recomputes the witness image ratio; returns its chordal gap to alpha.
double reevaluate_witness(const SampledMap& f, const PhiWitness& w);

enum class InjectivityClass { injective_like, constant_like, collision };

struct InjectivityResult {
  InjectivityClass verdict = InjectivityClass::injective_like;
  std::size_t samples = 0;
  /// Inputs of the first colliding pair.
  std::optional<std::pair<SpherePoint, SpherePoint>> collision;
  /// Largest chordal deviation of an output from the first output.
  double spread = 0.0;
};

InjectivityResult injectivity_probe(const SampledMap& f, double tol,
                                    Execution exec = Execution::parallel);

/// Offsets w_k = (2 beta' - 1)^k w_0 around z_0 with beta' = (1 - beta)/(1 - 2 beta).
/// Each step the tetrads {b_k, a_{k+1}, b_{k+1}, inf} and
/// {a_k, b_{k+1}, a_{k+1}, inf} have ratio beta.
struct MidpointSequence {
  SpherePoint beta;
  SpherePoint beta_prime;
  /// 2 beta' - 1, which equals 1 / (1 - 2 beta).
  Complex step;
  /// |step| = 1 / |1 - 2 beta|.
  double q;
  bool contracting;
  Complex center;
  std::vector<Complex> offsets;
  /// (a_k, b_k) = (z_0 + w_k, z_0 - w_k).
  std::vector<std::pair<Complex, Complex>> pairs;
};

/// beta = alpha when |alpha| > 1, else 1 / alpha.
SpherePoint select_midpoint_beta(const SpherePoint& alpha);

/// Throws DegenerateAlpha, and InvalidConfig for beta = 1/2.
MidpointSequence midpoint_sequence(const SpherePoint& beta, Complex z0, Complex w0,
                                   std::size_t k_max);

struct MidpointProbe {
  Complex z0;
  Complex w0;
};

struct MidpointResult {
  bool pass = true;
  SpherePoint beta{2.0};
  bool conservation_checked = false;
  std::size_t probes = 0;
  double max_midpoint_gap = 0.0;
  double max_conservation_gap = 0.0;
};

/// Checks g(z0) = (g(a0) + g(b0)) / 2 at every probe, and the conservation
/// g(a_k) + g(b_k) = g(a0) + g(b0) for k <= 20 when the sequence contracts.
/// Gaps are chordal.
MidpointResult check_midpoints(const SampledMap::Callable& g, std::span<const MidpointProbe> probes,
                               const SpherePoint& alpha, double tol);

/// Probes with z0 in the disk and |w0| < dist(z0, boundary).
std::vector<MidpointProbe> disk_probes(const Disk& region, std::size_t n, std::uint64_t seed);

/// Conjugates f by Möbius maps to g fixing infinity (domain point and its
/// image sent to infinity), then runs check_midpoints on probes in the image
/// of the region. Throws NormalizationFailure when the sampled images needed
/// by the conjugating maps coincide.
MidpointResult midpoint_test(const SampledMap& f, const SpherePoint& alpha, std::size_t n_probes,
                             double tol, std::uint64_t seed = kDefaultSeed);

struct CircleTestResult {
  bool pass = true;
  /// The whole image sample lies on one generalized circle.
  bool degenerate = false;
  std::size_t circles = 0;
  double max_residual = 0.0;
  double full_image_residual = 0.0;
};

/// Maps samples of random circles and chords inside the region and fits a
/// generalized circle to each image set. Residuals are measured after a
/// rotation of the sphere that moves the image set away from infinity.
CircleTestResult circle_test(const SampledMap& f, std::size_t n_circles,
                             std::size_t samples_per_circle, double tol,
                             std::uint64_t seed = kDefaultSeed);

/// Sphere rotation sending the candidate point farthest from the set to
/// infinity, so the rotated set is bounded.
MoebiusMap bounding_rotation(std::span<const SpherePoint> points);

/// Circle fit of points after bounding_rotation.
CircleFit fit_circle_bounded(std::span<const SpherePoint> points);

enum class Verdict { constant, moebius, phi_violating, inconclusive };
enum class StageStatus { pass, fail, skipped };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(StageStatus s) noexcept;
std::string_view to_string(InjectivityClass c) noexcept;

struct ClassifyOptions {
  Execution exec = Execution::parallel;
  std::size_t n_probes = 64;
  std::size_t n_circles = 24;
  std::size_t samples_per_circle = 20;
};

struct ClassificationReport {
  Verdict verdict = Verdict::inconclusive;
  std::uint64_t seed = kDefaultSeed;
  SpherePoint alpha{2.0};
  /// Ratio of the corroborating phi test, a second orbit member.
  std::optional<SpherePoint> corroboration_alpha;
  double tol = kAnalyticTolerance;
  std::size_t n_tetrads = 0;
  std::optional<MoebiusMap> fitted_map;
  double max_residual = 0.0;
  std::optional<PhiWitness> witness;

  InjectivityResult injectivity;
  StageStatus phi_status = StageStatus::skipped;
  std::optional<PhiTestResult> phi;
  std::optional<PhiTestResult> phi_corroboration;
  StageStatus midpoint_status = StageStatus::skipped;
  std::optional<MidpointResult> midpoint;
  StageStatus circle_status = StageStatus::skipped;
  std::optional<CircleTestResult> circle;
  StageStatus fit_status = StageStatus::skipped;
  std::vector<std::string> diagnostics;
};

/// Constant, Möbius (with fitted map), phi-violating (with witness), or
/// inconclusive when stages disagree. The fitted-map residual over all
/// samples decides the Möbius verdict; at non-real alpha only a
/// non-conjugating fit is accepted.
ClassificationReport classify(const SampledMap& f, const PhiTestConfig& cfg,
                              const ClassifyOptions& options = {});

}  // namespace moebius_kit

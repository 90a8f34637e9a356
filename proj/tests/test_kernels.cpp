#include <gtest/gtest.h>

#include "moebius_kit/kernels.hpp"
#include "test_support.hpp"

namespace moebius_kit {
namespace {

const Disk kUnit{0.0, 1.0};

TEST(DrawTetrad, RatioRegionAndSeparation) {
  for (const SpherePoint& alpha : {SpherePoint(2.0), SpherePoint(Complex(0.5, 0.866)), SpherePoint(-1.0)}) {
    for (std::size_t i = 0; i < 300; ++i) {
      const auto t = kernels::draw_tetrad({Complex(1.0, 2.0), 0.5}, alpha, 7, i);
      ASSERT_TRUE(t.has_value());
      EXPECT_LE(chordal_distance(cross_ratio(*t), alpha), 1e-12);
      for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_LT(std::abs((*t)[k].value() - Complex(1.0, 2.0)), 0.5);
        for (std::size_t l = k + 1; l < 4; ++l) {
          EXPECT_GE(std::abs((*t)[k].value() - (*t)[l].value()), 0.005);
        }
      }
    }
  }
}

TEST(DrawTetrad, DeterministicPerIndex) {
  EXPECT_EQ(kernels::draw_tetrad(kUnit, 2.0, 1, 5), kernels::draw_tetrad(kUnit, 2.0, 1, 5));
  EXPECT_NE(kernels::draw_tetrad(kUnit, 2.0, 1, 5), kernels::draw_tetrad(kUnit, 2.0, 1, 6));
  EXPECT_NE(kernels::draw_tetrad(kUnit, 2.0, 1, 5), kernels::draw_tetrad(kUnit, 2.0, 2, 5));
}

TEST(EvaluateTetrad, Outcomes) {
  RationalMap c;
  c.numerator = {Complex(4.0)};
  const auto constant = SampledMap::rational(c, kUnit);
  const auto t = kernels::draw_tetrad(kUnit, 2.0, 3, 0);
  EXPECT_EQ(kernels::evaluate_tetrad(constant, t, 2.0, 1e-7, 0).outcome, kernels::TetradOutcome::skipped);
  EXPECT_EQ(kernels::evaluate_tetrad(constant, std::nullopt, 2.0, 1e-7, 0).outcome,
            kernels::TetradOutcome::rejected);
  const auto id = SampledMap::moebius(MoebiusMap::identity(), kUnit);
  EXPECT_EQ(kernels::evaluate_tetrad(id, t, 2.0, 1e-7, 0).outcome, kernels::TetradOutcome::agrees);
  const auto ev = kernels::evaluate_tetrad(id, t, 3.0, 1e-7, 9);
  EXPECT_EQ(ev.outcome, kernels::TetradOutcome::violates);
  ASSERT_TRUE(ev.witness.has_value());
  EXPECT_EQ(ev.witness->index, 9u);
}

TEST(PhiSweep, ParallelMatchesSerial) {
  Rng rng(61);
  for (int trial = 0; trial < 6; ++trial) {
    RationalMap r;
    r.numerator = {0.0, 1.0, Complex(0.01 * trial, 0.0)};
    const auto f = SampledMap::rational(r, kUnit);
    const SpherePoint alpha = testing::random_complex(rng);
    const kernels::TetradSource src = [&](std::size_t i) {
      return kernels::draw_tetrad(kUnit, alpha, 17, i);
    };
    const auto a = kernels::phi_sweep_serial(f, src, 1500, alpha, 1e-7);
    const auto b = kernels::phi_sweep_parallel(f, src, 1500, alpha, 1e-7);
    EXPECT_EQ(a.generated, b.generated);
    EXPECT_EQ(a.admissible, b.admissible);
    EXPECT_EQ(a.violations, b.violations);
    EXPECT_EQ(a.max_gap, b.max_gap);
    EXPECT_EQ(a.pass, b.pass);
    ASSERT_EQ(a.witness.has_value(), b.witness.has_value());
    if (a.witness) EXPECT_EQ(a.witness->index, b.witness->index);
  }
}

TEST(PhiSweep, ErrorsPropagateFromLowestIndex) {
  const auto f = SampledMap::callable(
      [](const SpherePoint& z) -> SpherePoint {
        if (z.value().real() > 0.9) throw Error(ErrorKind::InvalidPoint, "outside");
        return z;
      },
      kUnit);
  const kernels::TetradSource src = [](std::size_t i) {
    return kernels::draw_tetrad(kUnit, 2.0, 5, i);
  };
  EXPECT_THROW(kernels::phi_sweep_serial(f, src, 2000, 2.0, 1e-7), Error);
  EXPECT_THROW(kernels::phi_sweep_parallel(f, src, 2000, 2.0, 1e-7), Error);
}

TEST(Collision, FirstPairAndAgreement) {
  std::vector<SpherePoint> in, out;
  for (int i = 0; i < 50; ++i) {
    in.emplace_back(std::polar(0.5, 0.3 * i));
    out.push_back(in.back());
  }
  EXPECT_FALSE(kernels::find_collision_serial(in, out, 1e-7).has_value());
  out[30] = out[7];
  out[40] = out[3];
  const auto a = kernels::find_collision_serial(in, out, 1e-7);
  const auto b = kernels::find_collision_parallel(in, out, 1e-7);
  ASSERT_TRUE(a.has_value());
  EXPECT_EQ(*a, std::make_pair(std::size_t{3}, std::size_t{40}));
  EXPECT_EQ(a, b);
  // Inputs closer than 10 tol do not count.
  in[41] = SpherePoint(in[3].value() + 1e-8);
  out[41] = out[3];
  EXPECT_EQ(*kernels::find_collision_serial(in, out, 1e-7), std::make_pair(std::size_t{3}, std::size_t{40}));
}

TEST(GapMax, TiesPickSmallestIndex) {
  std::vector<SpherePoint> a(100, SpherePoint(0.0)), b(100, SpherePoint(0.0));
  b[20] = 1.0;
  b[70] = 1.0;
  b[50] = 0.5;
  const auto s = kernels::max_chordal_gap_serial(a, b);
  const auto p = kernels::max_chordal_gap_parallel(a, b);
  EXPECT_EQ(s.index, 20u);
  EXPECT_EQ(p.index, 20u);
  EXPECT_EQ(s.value, p.value);
  EXPECT_DOUBLE_EQ(s.value, std::sqrt(2.0));
}

TEST(MapPoints, ModesAgree) {
  const MoebiusMap m(1.0, 2.0, 3.0, 7.0);
  std::vector<SpherePoint> in;
  Rng rng(62);
  for (int i = 0; i < 500; ++i) in.emplace_back(testing::random_complex(rng));
  EXPECT_EQ(kernels::map_points(m, in, Execution::serial), kernels::map_points(m, in, Execution::parallel));
}

}  // namespace
}  // namespace moebius_kit

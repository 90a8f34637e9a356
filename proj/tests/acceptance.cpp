// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "moebius_kit/circles.hpp"
#include "moebius_kit/classifier.hpp"
#include "moebius_kit/cli.hpp"
#include "moebius_kit/json_io.hpp"
#include "test_support.hpp"

using namespace moebius_kit;
namespace mt = moebius_kit::testing;

namespace {

const SpherePoint kInf = SpherePoint::infinity();
const Complex I(0.0, 1.0);
const Disk kUnit{0.0, 1.0};

struct Check {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

SampledMap rational(std::vector<Complex> num, Disk region = kUnit, bool conj = false,
                    Perturbation p = {}) {
  RationalMap r;
  r.numerator = std::move(num);
  r.conjugate = conj;
  r.perturbation = p;
  return SampledMap::rational(r, region);
}

PhiTestConfig config(SpherePoint alpha, std::size_t n, double tol) {
  PhiTestConfig c;
  c.alpha = alpha;
  c.n_tetrads = n;
  c.tol = tol;
  return c;
}

SpherePoint real_alpha(Rng& rng) {
  while (true) {
    const double a = rng.uniform(-4.0, 4.0);
    if (std::abs(a) > 0.2 && std::abs(a - 1.0) > 0.2) return a;
  }
}

SpherePoint nonreal_alpha(Rng& rng) {
  return Complex(rng.uniform(-3.0, 3.0), (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.3, 3.0));
}

Check cross_ratio_correctness() {
  Check c;
  c.require(cross_ratio(Tetrad(0.0, 1.0, 2.0, 3.0)) == SpherePoint(4.0 / 3.0), "{0,1,2,3} != 4/3");
  c.require(cross_ratio(Tetrad(0.0, 1.0, 2.0, kInf)) == SpherePoint(2.0), "{0,1,2,inf} != 2");
  c.require(std::abs(mt::naive_cross_ratio(0.0, 1.0, 2.0, 3.0) - 4.0 / 3.0) < 1e-15, "oracle 4/3");
  c.require(std::abs(mt::naive_cross_ratio(0.0, 1.0, 2.0, 1e8) - 2.0) < 1e-7, "oracle z4 = 1e8");
  Rng rng(1001);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Tetrad t = mt::random_nonsingular_tetrad(rng);
    const SpherePoint a = cross_ratio(t);
    for (Transposition s : {Transposition::s12, Transposition::s13, Transposition::s14}) {
      worst = std::max(worst, chordal_distance(cross_ratio(permute(t, s)), permuted_ratio(a, s)));
    }
  }
  c.require(worst <= 1e-10, "permutation law gap " + fmt(worst));
  if (c.ok) c.detail = "permutation identities max gap " + fmt(worst);
  return c;
}

// Numeric limit of the cross-ratio as positions i and j coalesce. The pair
// either approaches a finite point, or infinity (in the coordinate 1/z).
// With `other_inf`, one of the remaining positions is replaced by a large
// finite stand-in for infinity.
SpherePoint numeric_limit(const std::array<Complex, 4>& base, int i, int j, bool pair_at_inf,
                          int other_inf, Complex dir, double eps) {
  std::array<Complex, 4> w = base;
  if (pair_at_inf) {
    const Complex u = std::polar(1.0, std::arg(dir) + 2.0);
    w[i] = 1.0 / (eps * u);
    w[j] = 1.0 / (eps * (u + eps * dir));
  } else {
    w[j] = w[i] + eps * dir;
  }
  if (other_inf >= 0) w[other_inf] = std::polar(1e12, std::arg(dir) + 1.0);
  return mt::naive_cross_ratio(w[0], w[1], w[2], w[3]);
}

Check limit_case_consistency() {
  Check c;
  struct Pattern {
    int i, j;
    SpherePoint expected;
  };
  const std::array<Pattern, 6> patterns{
      {{0, 2, 0.0}, {1, 3, 0.0}, {0, 1, 1.0}, {2, 3, 1.0}, {1, 2, kInf}, {0, 3, kInf}}};
  Rng rng(1002);
  double worst = 0.0;
  int cases = 0;
  for (const Pattern& p : patterns) {
    for (int variant = 0; variant < 3; ++variant) {
      for (int path = 0; path < 10; ++path) {
        const Tetrad t = mt::random_finite_tetrad(rng, 3.0, 0.2);
        std::array<Complex, 4> base;
        for (int k = 0; k < 4; ++k) base[k] = t[k].value();
        const Complex dir = std::polar(1.0, 2.0 * std::numbers::pi * rng.uniform());
        auto exact_pts = t.points();
        int other = -1;
        if (variant == 1) {
          for (int k = 0; k < 4 && other < 0; ++k)
            if (k != p.i && k != p.j) other = k;
          exact_pts[other] = kInf;
        }
        const bool pair_at_inf = variant == 2;
        exact_pts[p.j] = exact_pts[p.i];
        if (pair_at_inf) exact_pts[p.i] = exact_pts[p.j] = kInf;
        const SpherePoint exact = cross_ratio(Tetrad(exact_pts));
        c.require(exact == p.expected, "closed form not exactly in {0, 1, inf}");
        const SpherePoint approx = numeric_limit(base, p.i, p.j, pair_at_inf, other, dir, 1e-9);
        const double gap = chordal_distance(exact, approx);
        worst = std::max(worst, gap);
        ++cases;
      }
    }
  }
  c.require(worst <= 1e-6, "numeric limit gap " + fmt(worst));
  if (c.ok) c.detail = std::to_string(cases) + " approach paths, max gap " + fmt(worst);
  return c;
}

Check orbit_structure() {
  Check c;
  Rng rng(1003);
  for (int i = 0; i < 100; ++i) {
    const SpherePoint a = mt::random_complex(rng);
    const auto o = orbit(a);
    c.require(o.size() == 6, "generic orbit size " + std::to_string(o.size()));
    for (const SpherePoint& b : o) c.require(same_point_set(orbit(b), o, 1e-10), "orbit not closed");
  }
  c.require(same_point_set(orbit(2.0), {2.0, 0.5, -1.0}), "orbit(2)");
  const SpherePoint w = apollonian_ratio(true);
  c.require(orbit(w).size() == 2, "orbit((1+i sqrt3)/2) size");
  c.require(same_point_set(orbit(w), {w, ext_conj(w)}), "orbit((1+i sqrt3)/2) members");
  if (c.ok) c.detail = "100 generic orbits of size 6, special orbits 3 and 2";
  return c;
}

Check apollonian_equivalence() {
  Check c;
  const Complex w1 = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const Complex w2 = std::conj(w1);
  const Tetrad omega(1.0, w1, w2, 0.0);
  c.require(apollonian_by_products(omega, 1e-12), "product test on {1, w, w^2, 0}");
  c.require(apollonian_by_cross_ratio(omega, 1e-12), "cross-ratio test on {1, w, w^2, 0}");
  Rng rng(1004);
  int agree = 0, apollonian = 0;
  for (int i = 0; i < 200; ++i) {
    Tetrad t = mt::random_finite_tetrad(rng);
    if (i % 2 == 0) {
      // Half of the sample is Apollonian by construction.
      while (true) {
        const Tetrad img = image_tetrad(mt::random_moebius_regular_on(rng, i % 4 == 0, 0.0, 1.0, 0.5), omega);
        if (!img.contains_infinity()) {
          t = img;
          break;
        }
      }
    }
    const bool p = apollonian_by_products(t, 1e-8);
    const bool q = apollonian_by_cross_ratio(t, 1e-8);
    agree += p == q ? 1 : 0;
    apollonian += q ? 1 : 0;
  }
  c.require(agree == 200, "tests disagree on " + std::to_string(200 - agree) + " tetrads");
  for (int i = 0; i < 50; ++i) {
    const Tetrad img = image_tetrad(mt::random_moebius(rng, i % 2 == 1), omega);
    c.require(apollonian_by_cross_ratio(img, 1e-8), "Möbius image lost Apollonian status");
  }
  if (c.ok) c.detail = "200/200 agree (" + std::to_string(apollonian) + " Apollonian), 50 images invariant";
  return c;
}

Check moebius_group() {
  Check c;
  Rng rng(1005);
  const MoebiusMap id = MoebiusMap::identity();
  for (int i = 0; i < 300; ++i) {
    const MoebiusMap a = mt::random_moebius(rng, i % 2 == 0);
    const MoebiusMap b = mt::random_moebius(rng, i % 3 == 0);
    const MoebiusMap m = mt::random_moebius(rng, i % 5 == 0);
    c.require(approx_equal(compose(compose(a, b), m), compose(a, compose(b, m)), 1e-10), "associativity");
    c.require(approx_equal(compose(a, invert(a)), id, 1e-10), "right inverse");
    c.require(approx_equal(compose(invert(a), a), id, 1e-10), "left inverse");
    c.require(approx_equal(compose(a, id), a, 1e-10) && approx_equal(compose(id, a), a, 1e-10), "identity");
    const SpherePoint z = mt::random_complex(rng);
    c.require(chordal_distance(apply(compose(a, b), z), apply(a, apply(b, z))) <= 1e-10, "composition order");
  }
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const bool conj = i % 2 == 1;
    const MoebiusMap m = mt::random_moebius(rng, conj);
    const Tetrad t = mt::random_nonsingular_tetrad(rng);
    const SpherePoint a = cross_ratio(t);
    worst = std::max(worst, chordal_distance(cross_ratio(image_tetrad(m, t)), conj ? ext_conj(a) : a));
  }
  c.require(worst <= 1e-9, "cross-ratio law gap " + fmt(worst));
  if (c.ok) c.detail = "group laws hold, ratio law max gap " + fmt(worst);
  return c;
}

Check dichotomy_positive() {
  Check c;
  Rng rng(1006);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = SampledMap::moebius(mt::random_moebius(rng, i % 2 == 1), kUnit);
    const auto r = classify(f, config(real_alpha(rng), 500, 1e-8));
    c.require(r.verdict == Verdict::moebius, "Möbius map at real alpha not recognized");
    worst = std::max(worst, r.max_residual);
  }
  c.require(worst <= 1e-8, "max residual " + fmt(worst));
  for (double v : {7.0, -2.5}) {
    c.require(classify(rational({v}), config(2.0, 500, 1e-8)).verdict == Verdict::constant, "constant map");
  }
  for (int i = 0; i < 50; ++i) {
    const SpherePoint alpha = nonreal_alpha(rng);
    const auto plain = SampledMap::moebius(mt::random_moebius(rng, false), kUnit);
    const auto r = classify(plain, config(alpha, 500, 1e-8));
    c.require(r.verdict == Verdict::moebius, "non-conjugating map at non-real alpha");
    worst = std::max(worst, r.max_residual);
    const auto conj = SampledMap::moebius(mt::random_moebius(rng, true), kUnit);
    const auto q = classify(conj, config(alpha, 500, 1e-8));
    c.require(q.phi_status == StageStatus::fail && q.verdict == Verdict::phi_violating,
              "conjugating map at non-real alpha not rejected by the phi test");
  }
  if (c.ok) c.detail = "150 maps and 2 constants classified, max residual " + fmt(worst);
  return c;
}

Check dichotomy_negative() {
  Check c;
  const std::vector<std::pair<std::string, SampledMap>> maps{
      {"z^2", rational({0.0, 0.0, 1.0}, {3.0, 1.0})},
      {"z + 0.01 z^2", rational({0.0, 1.0, 0.01})},
      {"z + 0.1 sin(Re z)", rational({0.0, 1.0}, kUnit, false, {Perturbation::Kind::sin_re, 0.1})}};
  std::string gaps;
  for (const auto& [name, f] : maps) {
    const auto r = classify(f, config(2.0, 2000, 1e-6));
    c.require(r.verdict == Verdict::phi_violating, name + " not phi_violating");
    if (!r.witness) {
      c.require(false, name + " has no witness");
      continue;
    }
    // Independent re-evaluation of the witness image ratio.
    const Tetrad& t = r.witness->tetrad;
    std::array<SpherePoint, 4> img;
    for (int k = 0; k < 4; ++k) img[k] = f(t[k]);
    const SpherePoint direct = mt::naive_cross_ratio(img[0].value(), img[1].value(), img[2].value(), img[3].value());
    c.require(std::abs(reevaluate_witness(f, *r.witness) - r.witness->gap) <= 1e-12, name + " witness gap");
    c.require(std::abs(chordal_distance(direct, 2.0) - r.witness->gap) <= 1e-10, name + " oracle gap");
    c.require(chordal_distance(cross_ratio(t), 2.0) <= 1e-12, name + " witness ratio");
    gaps += (gaps.empty() ? "" : ", ") + name + " gap " + fmt(r.witness->gap);
  }
  if (c.ok) c.detail = gaps;
  return c;
}

Check constructive_machinery() {
  Check c;
  const auto s = midpoint_sequence(2.0, 0.0, 1.0, 20);
  c.require(s.beta_prime == SpherePoint(1.0 / 3.0), "beta' != 1/3");
  c.require(s.q == 1.0 / 3.0, "q != 1/3");
  const SampledMap::Callable affine = [](const SpherePoint& z) {
    return SpherePoint(Complex(5.0, 0.5) * z.value() - Complex(2.0, 1.0));
  };
  std::vector<MidpointProbe> probes;
  for (int i = 0; i < 16; ++i) probes.push_back({Complex(0.25 * i, -0.5), Complex(0.125, 0.0625 * i)});
  const auto exact = check_midpoints(affine, probes, 2.0, 1e-12);
  c.require(exact.max_midpoint_gap == 0.0, "affine midpoint gap " + fmt(exact.max_midpoint_gap));
  Rng rng(1008);
  double mid = 0.0, cons = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = SampledMap::moebius(mt::random_moebius(rng, false), kUnit);
    const auto r = midpoint_test(f, 2.0, 64, 1e-8);
    c.require(r.pass && r.conservation_checked, "midpoint test on a Möbius map");
    mid = std::max(mid, r.max_midpoint_gap);
    cons = std::max(cons, r.max_conservation_gap);
  }
  c.require(mid <= 1e-8 && cons <= 1e-8, "gaps " + fmt(mid) + " / " + fmt(cons));
  if (c.ok) c.detail = "beta' = q = 1/3, conjugated Möbius gaps " + fmt(mid) + " / " + fmt(cons);
  return c;
}

Check circle_criterion() {
  Check c;
  Rng rng(1009);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const auto f = SampledMap::moebius(mt::random_moebius(rng, i % 2 == 0), kUnit);
    const auto r = circle_test(f, 24, 20, 1e-8);
    c.require(r.pass && !r.degenerate, "circle test on a Möbius map");
    worst = std::max(worst, r.max_residual);
  }
  const auto bad = circle_test(rational({0.0, 1.0, 0.05}), 24, 20, 1e-8);
  c.require(!bad.pass, "z + 0.05 z^2 passed the circle test");
  std::vector<SpherePoint> pts;
  for (int k = 0; k < 10; ++k) {
    const Complex w = 1.0 / Complex(1.0, -4.5 + k);
    c.require(std::abs(std::abs(w - 0.5) - 0.5) <= 1e-15, "oracle image off |w - 1/2| = 1/2");
    pts.push_back(w);
  }
  const auto fit = fit_circle(pts);
  const double center_err = std::abs(fit.circle.center() - 0.5);
  const double radius_err = std::abs(fit.circle.radius() - 0.5);
  c.require(center_err <= 1e-8 && radius_err <= 1e-8, "inversion image fit error");
  if (c.ok) {
    c.detail = "Möbius max residual " + fmt(worst) + ", z + 0.05 z^2 residual " + fmt(bad.max_residual) +
               ", inversion fit error " + fmt(std::max(center_err, radius_err));
  }
  return c;
}

Check cli_determinism() {
  Check c;
  auto run = [] {
    std::ostringstream out, err;
    const int code = cli::run({"moebius_kit", "fuzz"}, out, err);
    return std::pair{code, out.str()};
  };
  const auto [code1, out1] = run();
  const auto [code2, out2] = run();
  c.require(code1 == 0, "fuzz exit code " + std::to_string(code1));
  c.require(out1 == out2, "repeated fuzz runs differ");
  const auto j = json::parse(out1);
  std::size_t violating = 0;
  for (const auto& cs : j["cases"]) violating += cs["verdict"] == "phi_violating" ? 1 : 0;
  c.require(violating == j["cases"].size() && j["all_phi_violating"].get<bool>(), "zoo not fully rejected");
  if (c.ok) c.detail = std::to_string(violating) + "/" + std::to_string(j["cases"].size()) +
                       " phi_violating, byte-identical reruns";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Check()>>> criteria{
      {"cross-ratio correctness", cross_ratio_correctness},
      {"limit-case consistency", limit_case_consistency},
      {"orbit structure", orbit_structure},
      {"Apollonian equivalence", apollonian_equivalence},
      {"Möbius group", moebius_group},
      {"dichotomy, positive direction", dichotomy_positive},
      {"dichotomy, negative direction", dichotomy_negative},
      {"constructive machinery", constructive_machinery},
      {"circle criterion", circle_criterion},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Check result;
    try {
      result = criteria[k].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    failures += result.ok ? 0 : 1;
    std::printf("%s %2zu %s: %s\n", result.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                result.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

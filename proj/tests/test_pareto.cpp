#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "optifab/pareto.hpp"
#include "optifab/problems.hpp"
#include "optifab/rng.hpp"
#include "test_util.hpp"

using namespace optifab;

namespace {

std::vector<ObjectiveVector> random_points(Rng& rng, size_t count, size_t m, double lo = 0.0,
                                           double hi = 1.0) {
  std::vector<ObjectiveVector> pts(count, ObjectiveVector(m));
  for (auto& p : pts)
    for (double& v : p) v = rng.uniform(lo, hi);
  return pts;
}

}  // namespace

TEST_CASE("domination basics") {
  CHECK(dominates({1.0, 2.0}, {2.0, 2.0}));
  CHECK(!dominates({1.0, 2.0}, {1.0, 2.0}));
  CHECK(!dominates({1.0, 3.0}, {2.0, 2.0}));
}

TEST_CASE("pareto_filter stated examples") {
  auto front = pareto_filter({{1, 2}, {2, 1}, {1.5, 1.5}, {2, 2}});
  CHECK(front.size() == 3);
  CHECK(std::find(front.begin(), front.end(), ObjectiveVector{2, 2}) == front.end());

  CHECK(pareto_filter({{1, 1}, {1, 1}}) == std::vector<ObjectiveVector>{{1, 1}});

  CHECK_THROWS_AS(pareto_filter({{1, 2}, {1, 2, 3}}), Error);
}

TEST_CASE("pareto_filter matches brute force on random sets") {
  Rng rng(101);
  for (int rep = 0; rep < 20; ++rep) {
    auto pts = random_points(rng, 50, 3);
    auto got = pareto_filter(pts);
    auto expected = testutil::brute_force_front(pts);
    CHECK(got == expected);
  }
}

TEST_CASE("hypervolume_exact stated examples") {
  CHECK(hypervolume_exact({{1, 0}, {0, 1}}, {2, 2}) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(hypervolume_exact({{0, 0}}, {1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hypervolume_exact({}, {1, 1}) == 0.0);
  CHECK_THROWS_AS(hypervolume_exact({{0, 0, 0, 0, 0}}, {1, 1, 1, 1, 1}), Error);
}

TEST_CASE("hypervolume_exact matches inclusion-exclusion on random fronts") {
  Rng rng(202);
  for (size_t m : {2u, 3u}) {
    for (int rep = 0; rep < 30; ++rep) {
      const size_t k = 1 + rng.uniform_index(20);
      auto pts = random_points(rng, k, m);
      ObjectiveVector ref(m, 1.1);
      const double expected = testutil::inclusion_exclusion_hv(pts, ref);
      // The sweep takes the filtered front; inclusion-exclusion of the raw
      // set measures the same union.
      const double got = hypervolume_exact(pareto_filter(pts), ref);
      CHECK(got == doctest::Approx(expected).epsilon(1e-9));
    }
  }
}

TEST_CASE("hypervolume_exact m=2 equals staircase closed form") {
  Rng rng(303);
  for (int rep = 0; rep < 25; ++rep) {
    auto pts = random_points(rng, 15, 2);
    ObjectiveVector ref{1.05, 1.2};
    CHECK(hypervolume_exact(pts, ref) ==
          doctest::Approx(testutil::staircase_hv_2d(pts, ref)).epsilon(1e-12));
  }
}

TEST_CASE("hypervolume is monotone and permutation invariant") {
  Rng rng(404);
  auto pts = random_points(rng, 12, 3);
  ObjectiveVector ref(3, 1.1);
  double hv = hypervolume_exact(pts, ref);

  SUBCASE("adding a point never decreases it") {
    for (int rep = 0; rep < 10; ++rep) {
      auto extra = pts;
      extra.push_back(random_points(rng, 1, 3)[0]);
      CHECK(hypervolume_exact(extra, ref) >= hv - 1e-12);
    }
  }
  SUBCASE("adding a dominated point leaves it unchanged") {
    auto extra = pts;
    ObjectiveVector dominated = pts[0];
    for (double& v : dominated) v = std::min(v + 0.01, 1.0999);
    extra.push_back(dominated);
    CHECK(hypervolume_exact(extra, ref) == doctest::Approx(hv).epsilon(1e-12));
  }
  SUBCASE("permutation invariance") {
    auto shuffled = pts;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[rng.uniform_index(i)]);
    CHECK(hypervolume_exact(shuffled, ref) == doctest::Approx(hv).epsilon(1e-12));
  }
}

TEST_CASE("hypervolume_mc stated examples") {
  SUBCASE("whole box dominated, zero standard error") {
    auto est = hypervolume_mc({{0, 0}}, {1, 1}, 100000, 1);
    CHECK(est.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(est.std_error == 0.0);
  }
  SUBCASE("two-point front near 3.0") {
    auto est = hypervolume_mc({{1, 0}, {0, 1}}, {2, 2}, 100000, 2);
    CHECK(std::fabs(est.value - 3.0) <= 3.0 * est.std_error + 1e-9);
    CHECK(est.std_error > 0.0);
  }
  SUBCASE("m=3 sphere front agrees with exact sweep") {
    ProblemSpec spec;
    spec.name = "dtlz2";
    spec.n = 3;
    spec.m = 3;
    auto front = true_front_sample(spec, 50, 7);
    ObjectiveVector ref(3, 1.1);
    const double exact = hypervolume_exact(front, ref);
    auto est = hypervolume_mc(front, ref, 200000, 3);
    CHECK(std::fabs(est.value - exact) <= 3.0 * est.std_error);
  }
  SUBCASE("deterministic given seed") {
    auto a = hypervolume_mc({{1, 0}, {0, 1}}, {2, 2}, 50000, 9);
    auto b = hypervolume_mc({{1, 0}, {0, 1}}, {2, 2}, 50000, 9);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
  }
  SUBCASE("rejects tiny sample counts") {
    CHECK_THROWS_AS(hypervolume_mc({{0, 0}}, {1, 1}, 10, 1), Error);
  }
}

TEST_CASE("parallel and serial MC estimators agree bitwise") {
  Rng rng(505);
  for (int rep = 0; rep < 5; ++rep) {
    auto pts = random_points(rng, 10, 3);
    ObjectiveVector ref(3, 1.2);
    auto par = hypervolume_mc(pts, ref, 20000, 42 + rep);
    auto ser = hypervolume_mc_serial(pts, ref, 20000, 42 + rep);
    CHECK(par.value == ser.value);
    CHECK(par.std_error == ser.std_error);
  }
}

TEST_CASE("MC estimate converges against exact values across seeds") {
  Rng rng(606);
  auto pts = random_points(rng, 15, 3);
  ObjectiveVector ref(3, 1.1);
  const double exact = hypervolume_exact(pts, ref);
  int hits = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    auto est = hypervolume_mc(pts, ref, 20000, seed);
    if (std::fabs(est.value - exact) <= 4.0 * est.std_error) ++hits;
  }
  CHECK(hits >= 99);
}

TEST_CASE("DTLZ2 analytic hypervolume ceilings") {
  // ref (1.1,...): box volume minus the unit-ball orthant volume.
  const double ceiling2 = 1.1 * 1.1 - 3.14159265358979323846 / 4.0;
  const double ceiling3 = 1.1 * 1.1 * 1.1 - 3.14159265358979323846 / 6.0;
  CHECK(ceiling2 == doctest::Approx(0.42460).epsilon(1e-4));
  CHECK(ceiling3 == doctest::Approx(0.80740).epsilon(1e-4));

  ProblemSpec spec;
  spec.name = "dtlz2";
  spec.m = 2;
  spec.n = 6;
  auto front2 = true_front_sample(spec, 200, 11);
  const double hv2 = hypervolume_exact(front2, {1.1, 1.1});
  CHECK(hv2 <= ceiling2 + 1e-9);
  CHECK(hv2 > 0.40);  // a dense front sample should approach the ceiling

  spec.m = 3;
  spec.n = 6;
  auto front3 = true_front_sample(spec, 400, 12);
  const double hv3 = hypervolume_exact(front3, {1.1, 1.1, 1.1});
  CHECK(hv3 <= ceiling3 + 1e-9);
  CHECK(hv3 > 0.70);
}

TEST_CASE("clip_to_reference drops boundary and outside points") {
  auto kept = clip_to_reference({{0.5, 0.5}, {1.1, 0.2}, {0.2, 1.5}}, {1.1, 1.1});
  CHECK(kept == std::vector<ObjectiveVector>{{0.5, 0.5}});
}

TEST_CASE("ParetoArchive keeps exactly the nondominated subset") {
  Rng rng(707);
  ParetoArchive archive;
  std::vector<ObjectiveVector> all;
  for (int i = 0; i < 120; ++i) {
    auto p = random_points(rng, 1, 3)[0];
    all.push_back(p);
    archive.insert(p);
    // Invariant at every step, checkable by brute force.
    if (i % 20 == 19) {
      auto expected = testutil::brute_force_front(all);
      auto got = archive.points();
      std::sort(expected.begin(), expected.end());
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  }
  CHECK(archive.seen_min().size() == 3);
  for (size_t d = 0; d < 3; ++d) CHECK(archive.seen_min()[d] <= archive.seen_max()[d]);
}

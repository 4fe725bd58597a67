#include <doctest.h>

#include <chrono>
#include <cmath>
#include <fstream>

#include "optifab/pareto.hpp"
#include "optifab/problems.hpp"
#include "optifab/rng.hpp"

using namespace optifab;

TEST_CASE("dtlz2 stated examples") {
  SUBCASE("center of the position variables") {
    auto f = dtlz2_eval({0.5, 0.5}, 2);
    CHECK(f[0] == doctest::Approx(0.70711).epsilon(1e-5));
    CHECK(f[1] == doctest::Approx(0.70711).epsilon(1e-5));
  }
  SUBCASE("boundary of the front") {
    auto f = dtlz2_eval({0.0, 0.5}, 2);
    CHECK(f[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f[1] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("n=100 m=5 with distance variables at 1") {
    DesignPoint x(100, 1.0);
    for (int i = 0; i < 4; ++i) x[i] = 0.0;  // position variables
    auto f = dtlz2_eval(x, 5);
    CHECK(f[0] == doctest::Approx(25.0).epsilon(1e-12));  // g = 96 * 0.25 = 24
    for (int k = 1; k < 5; ++k) CHECK(f[k] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("rejects out-of-bounds coordinates") {
    CHECK_THROWS_AS(dtlz2_eval({1.5, 0.5}, 2), Error);
  }
}

TEST_CASE("dtlz2 objective identity: sum f^2 = (1+g)^2") {
  Rng rng(31);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 6;
    const int m = 3;
    DesignPoint x(n);
    for (double& v : x) v = rng.uniform01();
    double g = 0.0;
    for (int i = m - 1; i < n; ++i) g += (x[i] - 0.5) * (x[i] - 0.5);
    auto f = dtlz2_eval(x, m);
    double sum = 0.0;
    for (double v : f) {
      CHECK(v >= 0.0);
      sum += v * v;
    }
    CHECK(sum == doctest::Approx((1 + g) * (1 + g)).epsilon(1e-10));
    CHECK(sum >= 1.0 - 1e-12);  // no reachable point dominates the true front
  }
}

TEST_CASE("true_front_sample properties") {
  ProblemSpec spec;
  spec.name = "dtlz2";
  spec.n = 6;
  spec.m = 2;

  SUBCASE("m=2 deterministic grid includes the endpoints") {
    auto pts = true_front_sample(spec, 3, 1);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0][0] == doctest::Approx(1.0));
    CHECK(pts[0][1] == doctest::Approx(0.0));
    CHECK(pts[1][0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(pts[1][1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(pts[2][0] == doctest::Approx(0.0));
    CHECK(pts[2][1] == doctest::Approx(1.0));
  }
  SUBCASE("every sample lies on the unit sphere") {
    spec.m = 4;
    spec.n = 8;
    auto pts = true_front_sample(spec, 100, 9);
    for (const auto& p : pts) {
      double sum = 0.0;
      for (double v : p) sum += v * v;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("sphere points are mutually nondominated") {
    spec.m = 3;
    spec.n = 6;
    auto pts = true_front_sample(spec, 60, 4);
    CHECK(pareto_filter(pts) == pts);
  }
  SUBCASE("only dtlz2 has a known front") {
    ProblemSpec toy;
    toy.name = "detector-toy";
    CHECK_THROWS_AS(true_front_sample(toy, 5, 1), Error);
  }
}

TEST_CASE("detector-toy exclusion and golden anchor") {
  const DesignSpace space = detector_toy_space();
  REQUIRE(space.dimension() == 7);

  SUBCASE("center of the exclusion region is invalid") {
    std::vector<double> center(7, 0.5);
    auto out = detector_toy_eval(space.from_unit(center));
    CHECK(out.status == TrialStatus::kInvalid);
    CHECK(!out.objectives.has_value());
  }

  SUBCASE("documented anchor point matches the golden file") {
    std::ifstream in(std::string(OPTIFAB_TEST_DATA_DIR) + "/detector_toy_golden.json");
    REQUIRE(in.good());
    Json golden = Json::parse(in);
    const std::vector<double> unit = golden.at("unit_coordinates").get<std::vector<double>>();
    auto out = detector_toy_eval(space.from_unit(unit));
    REQUIRE(out.status == TrialStatus::kValid);
    const std::vector<double> expected = golden.at("objectives").get<std::vector<double>>();
    REQUIRE(out.objectives->size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i)
      CHECK((*out.objectives)[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }

  SUBCASE("invalid rate of uniform samples is the calibrated 0.10") {
    Rng rng(2024);
    const int n = 10000;
    int invalid = 0;
    for (int i = 0; i < n; ++i) {
      std::vector<double> u(7);
      for (double& v : u) v = rng.uniform01();
      auto out = detector_toy_eval(space.from_unit(u));
      if (out.status == TrialStatus::kInvalid) ++invalid;
    }
    const double rate = static_cast<double>(invalid) / n;
    CHECK(rate == doctest::Approx(0.10).epsilon(0.1));  // 0.10 +- 0.01
  }
}

TEST_CASE("problem registry and eval_delay") {
  SUBCASE("resolve by name") {
    ProblemSpec spec;
    spec.name = "dtlz2";
    spec.n = 6;
    spec.m = 2;
    auto problem = make_problem(spec);
    CHECK(problem->design_space().dimension() == 6);
    auto out = problem->evaluate({0.5, 0.5, 0.5, 0.5, 0.5, 0.5});
    CHECK(out.status == TrialStatus::kValid);
  }
  SUBCASE("unknown name rejected") {
    ProblemSpec spec;
    spec.name = "zdt1";
    CHECK_THROWS_AS(make_problem(spec), ConfigError);
  }
  SUBCASE("dtlz2 m > n rejected") {
    ProblemSpec spec;
    spec.name = "dtlz2";
    spec.n = 2;
    spec.m = 3;
    CHECK_THROWS_AS(spec.validate(), ConfigError);
  }
  SUBCASE("eval_delay takes at least the configured wall time") {
    ProblemSpec spec;
    spec.name = "dtlz2";
    spec.n = 2;
    spec.m = 2;
    spec.eval_delay = 0.2;
    auto problem = make_problem(spec);
    const auto t0 = std::chrono::steady_clock::now();
    auto out = problem->evaluate({0.5, 0.5});
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(elapsed >= 0.2);
    CHECK(out.eval_duration >= 0.2);
  }
  SUBCASE("cancellation cuts the delay short") {
    ProblemSpec spec;
    spec.name = "dtlz2";
    spec.n = 2;
    spec.m = 2;
    spec.eval_delay = 30.0;
    auto problem = make_problem(spec);
    CancelToken token;
    token.set_deadline(std::chrono::steady_clock::now() + std::chrono::milliseconds(100));
    const auto t0 = std::chrono::steady_clock::now();
    CHECK_THROWS_AS(problem->evaluate({0.5, 0.5}, &token), Error);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    CHECK(elapsed < 5.0);
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "panelid/dgp.hpp"
#include "panelid/distributions.hpp"
#include "panelid/inference.hpp"

using namespace panelid;

namespace {

DgpConfig dgp1(int n, int t, double theta0, double sigma_c_sq) {
  DgpConfig c;
  c.theta0 = theta0;
  c.sigma_c_sq = sigma_c_sq;
  c.sigma_sq.assign(t - 1, 1.0);
  c.n_individuals = n;
  c.n_periods = t;
  return c;
}

const ThetaGrid kCoarse{-0.5, 1.5, 0.01};

}  // namespace

TEST_CASE("grid arithmetic") {
  CHECK(ThetaGrid{0.0, 1.0, 0.25}.size() == 5);
  CHECK(ThetaGrid{-0.5, 1.5, 0.001}.size() == 2001);
  CHECK(ThetaGrid{0.0, 1.0, 0.25}.point(2) == doctest::Approx(0.5));
  CHECK_THROWS_AS((ThetaGrid{1.0, 0.0, 0.1}.size()), domain_error);
  CHECK_THROWS_AS((ThetaGrid{0.0, 1.0, -0.1}.size()), domain_error);
  CHECK_THROWS_AS((ThetaGrid{0.0, 1e6, 1e-3}.size()), domain_error);
}

TEST_CASE("invert_test shapes on synthetic evaluators") {
  SUBCASE("never rejecting gives the whole window, unbounded-convex") {
    const ConfidenceSet cs = invert_test(
        [](double) { return GridStat{0.0, 1, false}; }, kCoarse, 0.05);
    CHECK(cs.shape == SetShape::UnboundedConvex);
    REQUIRE(cs.intervals.size() == 1);
    CHECK(cs.intervals[0].first == doctest::Approx(-0.5));
    CHECK(cs.intervals[0].second == doctest::Approx(1.5));
  }
  SUBCASE("always rejecting gives the empty set") {
    const ConfidenceSet cs = invert_test(
        [](double) { return GridStat{1e6, 1, false}; }, kCoarse, 0.05);
    CHECK(cs.shape == SetShape::Empty);
    CHECK(cs.intervals.empty());
  }
  SUBCASE("parabola interior acceptance is bounded-convex") {
    const ConfidenceSet cs = invert_test(
        [](double theta) {
          return GridStat{50.0 * (theta - 0.3) * (theta - 0.3), 1, false};
        },
        kCoarse, 0.05);
    CHECK(cs.shape == SetShape::BoundedConvex);
    REQUIRE(cs.intervals.size() == 1);
    CHECK(cs.intervals[0].first < 0.3);
    CHECK(cs.intervals[0].second > 0.3);
    // inversion consistency at the interval edge
    const double crit = chi2_quantile(0.95, 1);
    const double inside = cs.intervals[0].first;
    CHECK(50.0 * (inside - 0.3) * (inside - 0.3) <= crit);
    const double outside = inside - kCoarse.step;
    CHECK(50.0 * (outside - 0.3) * (outside - 0.3) > crit);
  }
  SUBCASE("two interior lobes give bounded-disjoint") {
    const ConfidenceSet cs = invert_test(
        [](double theta) {
          const double lobe =
              std::min(std::fabs(theta - 0.0), std::fabs(theta - 1.0));
          return GridStat{100.0 * lobe * lobe, 1, false};
        },
        kCoarse, 0.05);
    CHECK(cs.shape == SetShape::BoundedDisjoint);
    CHECK(cs.intervals.size() == 2);
  }
  SUBCASE("acceptance at one edge gives unbounded-disjoint with a lobe") {
    const ConfidenceSet cs = invert_test(
        [](double theta) {
          if (theta > 1.2) return GridStat{0.0, 1, false};
          return GridStat{100.0 * (theta - 0.0) * (theta - 0.0), 1, false};
        },
        kCoarse, 0.05);
    CHECK(cs.shape == SetShape::UnboundedDisjoint);
    CHECK(cs.intervals.size() == 2);
  }
  SUBCASE("isolated evaluator failures count as rejections") {
    const ConfidenceSet cs = invert_test(
        [](double theta) {
          if (theta > 0.0 && theta < 0.1)
            throw degeneracy_error("synthetic failure");
          return GridStat{0.0, 1, false};
        },
        kCoarse, 0.05);
    CHECK(cs.n_failed_points > 0);
    CHECK(cs.shape == SetShape::UnboundedDisjoint);
  }
  SUBCASE("failure everywhere is an inference error") {
    CHECK_THROWS_AS(
        invert_test([](double) -> GridStat { throw degeneracy_error("x"); },
                    kCoarse, 0.05),
        experiment_error);
  }
}

TEST_CASE("pvalue_curve basics") {
  const auto curve = pvalue_curve(
      [](double theta) {
        return GridStat{theta <= 0.5 ? 0.0 : 10.0, 1, false};
      },
      ThetaGrid{0.0, 1.0, 0.25});
  REQUIRE(curve.size() == 5);
  CHECK(curve[0].second == doctest::Approx(0.0));  // statistic 0 -> 1-p = 0
  CHECK(curve[4].second == doctest::Approx(chi2_cdf(10.0, 1)));
  // monotone in the statistic at fixed dof
  CHECK(curve[4].second > curve[0].second);
}

TEST_CASE("confidence sets on simulated panels") {
  SUBCASE("well identified data gives a bounded KLM set containing theta0") {
    const PanelData panel = generate_panel(dgp1(250, 3, 0.5, 0.5), 8);
    const ConfidenceSet cs = invert_test(
        make_evaluator(StatKind::Klm, MomentSet::Sys, panel), kCoarse, 0.05);
    CHECK(cs.shape == SetShape::BoundedConvex);
    bool contains = false;
    for (const auto& [lo, hi] : cs.intervals)
      if (lo <= 0.5 && 0.5 <= hi) contains = true;
    CHECK(contains);
  }
  SUBCASE("weakly identified Dif data gives an unbounded set") {
    const PanelData panel = generate_panel(dgp1(250, 3, 0.95, 0.5), 8);
    const ConfidenceSet cs = invert_test(
        make_evaluator(StatKind::Klm, MomentSet::Dif, panel), kCoarse, 0.05);
    const bool unbounded = cs.shape == SetShape::UnboundedConvex ||
                           cs.shape == SetShape::UnboundedDisjoint;
    CHECK(unbounded);
  }
  SUBCASE("Dif p-value curve stays below 0.95 when theta0 = 0.95, sc2 = 0") {
    const PanelData panel = generate_panel(dgp1(250, 3, 0.95, 0.0), 8);
    const auto curve = pvalue_curve(
        make_evaluator(StatKind::Klm, MomentSet::Dif, panel), kCoarse);
    double max_one_minus_p = 0.0;
    for (const auto& [theta, omp] : curve)
      max_one_minus_p = std::max(max_one_minus_p, omp);
    CHECK(max_one_minus_p < 0.95);
  }
}

TEST_CASE("cue_minimize") {
  SUBCASE("recovers the argmin of a synthetic quadratic via GMM-AR shape") {
    // use simulated well-identified data; the CUE must sit near theta0 and
    // KLM at the CUE must be ~0
    const PanelData panel = generate_panel(dgp1(500, 3, 0.5, 0.5), 99);
    const CueResult cue =
        cue_minimize(MomentSet::Sys, panel, ThetaGrid{-0.5, 1.5, 0.01}, 3);
    CHECK_FALSE(cue.at_boundary);
    CHECK(std::fabs(cue.theta - 0.5) < 0.2);
    const TestOutcome lm = klm(MomentSet::Sys, panel, cue.theta, 0.05);
    CHECK(lm.statistic <= 0.01);
  }
  SUBCASE("boundary minimum is flagged") {
    const PanelData panel = generate_panel(dgp1(100, 3, 0.5, 0.5), 5);
    // window far to the right of the CUE: objective is increasing there
    const CueResult cue =
        cue_minimize(MomentSet::Sys, panel, ThetaGrid{2.0, 3.0, 0.1}, 1);
    CHECK(cue.at_boundary);
  }
}

TEST_CASE("inversion output is independent of the thread count") {
  const PanelData panel = generate_panel(dgp1(200, 4, 0.6, 0.5), 12);
  const auto evaluator = make_evaluator(StatKind::Klm, MomentSet::AS, panel);
  const ConfidenceSet one = invert_test(evaluator, kCoarse, 0.05, 1);
  const ConfidenceSet four = invert_test(evaluator, kCoarse, 0.05, 4);
  CHECK(one.shape == four.shape);
  REQUIRE(one.intervals.size() == four.intervals.size());
  for (std::size_t i = 0; i < one.intervals.size(); ++i) {
    CHECK(one.intervals[i].first == four.intervals[i].first);
    CHECK(one.intervals[i].second == four.intervals[i].second);
  }
}

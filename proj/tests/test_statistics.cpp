#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "panelid/dgp.hpp"
#include "panelid/distributions.hpp"
#include "panelid/parallel.hpp"
#include "panelid/rng.hpp"
#include "panelid/statistics.hpp"

using namespace panelid;

namespace {

DgpConfig well_identified(int n = 250, int t = 3) {
  DgpConfig c;
  c.theta0 = 0.5;
  c.sigma_c_sq = 0.5;
  c.sigma_sq.assign(t - 1, 1.0);
  c.n_individuals = n;
  c.n_periods = t;
  return c;
}

MomentEval synthetic_eval(const Eigen::MatrixXd& f, const Eigen::MatrixXd& q,
                          double theta = 0.5) {
  MomentEval eval;
  eval.k = static_cast<int>(f.cols());
  eval.theta = theta;
  eval.f_individual = f;
  eval.q_individual = q;
  eval.f_bar = f.colwise().mean();
  eval.q_bar = q.colwise().mean();
  return eval;
}

}  // namespace

TEST_CASE("gmm_ar hand case: k=1, f values {1,3} give 8") {
  Eigen::MatrixXd f(2, 1), q(2, 1);
  f << 1, 3;
  q << -1, -1;
  const TestOutcome out = gmm_ar(synthetic_eval(f, q), 0.05);
  CHECK(out.statistic == doctest::Approx(8.0));
  CHECK(out.dof == 1);
  CHECK(out.reject);  // 8 > 3.84
  CHECK(out.p_value == doctest::Approx(1.0 - chi2_cdf(8.0, 1)));
}

TEST_CASE("gmm_ar degenerate inputs") {
  Eigen::MatrixXd f(3, 1), q(3, 1);
  f << 2, 2, 2;
  q << -1, -1, -1;
  CHECK_THROWS_AS(gmm_ar(synthetic_eval(f, q), 0.05), degeneracy_error);
}

TEST_CASE("zero mean moment vector gives statistic 0 and p = 1") {
  Eigen::MatrixXd f(4, 1), q(4, 1);
  f << -1, 1, -2, 2;
  q << 1, 2, 1, 2;
  const TestOutcome out = gmm_ar(synthetic_eval(f, q), 0.05);
  CHECK(out.statistic == doctest::Approx(0.0));
  CHECK(out.p_value == doctest::Approx(1.0));
  CHECK_FALSE(out.reject);
}

TEST_CASE("d_hat arithmetic") {
  SUBCASE("k=1 hand case") {
    // q_bar = 2, V_qf = 1, V_ff = 1, f_bar = 0.5 -> 1.5
    Eigen::MatrixXd f(3, 1), q(3, 1);
    // f deviations {-1,0,1} with mean 0.5; q deviations equal -> V_qf = V_ff
    f << -0.5, 0.5, 1.5;
    q << 1, 2, 3;
    const Eigen::VectorXd d = d_hat(synthetic_eval(f, q));
    const double vff = 2.0 / 3.0, vqf = 2.0 / 3.0;
    CHECK(d(0) == doctest::Approx(2.0 - vqf / vff * 0.5));
  }
  SUBCASE("f_bar = 0 leaves q_bar") {
    Eigen::MatrixXd f(4, 1), q(4, 1);
    f << -1, 1, -2, 2;
    q << 5, 5, 7, 7;
    CHECK(d_hat(synthetic_eval(f, q))(0) == doctest::Approx(6.0));
  }
  SUBCASE("uncorrelated q leaves q_bar") {
    Eigen::MatrixXd f(4, 1), q(4, 1);
    f << 1, 2, 1, 2;
    q << 3, 3, 4, 4;  // cov with f is zero
    CHECK(d_hat(synthetic_eval(f, q))(0) == doctest::Approx(3.5));
  }
}

TEST_CASE("klm equals gmm_ar when k = 1") {
  const PanelData panel = generate_panel(well_identified(), 3);
  const MomentEval eval = evaluate(MomentSet::Dif, panel, 0.4);
  const TestOutcome ar = gmm_ar(eval, 0.05);
  const TestOutcome lm = klm(eval, 0.05);
  CHECK(lm.statistic == doctest::Approx(ar.statistic).epsilon(1e-12));
  CHECK(lm.dof == 1);
}

TEST_CASE("klm is bounded by gmm_ar (projection)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const PanelData panel = generate_panel(well_identified(250, 4), seed);
    for (const MomentSet set : {MomentSet::Sys, MomentSet::AS}) {
      for (const double theta : {0.1, 0.5, 0.9}) {
        const MomentEval eval = evaluate(set, panel, theta);
        const double ar = gmm_ar(eval, 0.05).statistic;
        const double lm = klm(eval, 0.05).statistic;
        CHECK(lm <= ar + 1e-10);
        CHECK(lm >= 0.0);
      }
    }
  }
}

TEST_CASE("klm is zero when f is V-orthogonal to the Jacobian estimate") {
  // Constant q makes V_qf = 0, so d_hat = q_bar = (0, 2)'. The f rows are
  // chosen with a diagonal covariance and f_bar = (0.5, 0)', which is then
  // V^-1-orthogonal to d_hat: the projection annihilates f.
  Eigen::MatrixXd f(4, 2), q(4, 2);
  f << 1, 1,
      -1, -1,
       2, -1,
       0, 1;
  q << 0, 2, 0, 2, 0, 2, 0, 2;
  const TestOutcome out = klm(synthetic_eval(f, q), 0.05);
  CHECK(out.statistic == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("klm rank deficiency error") {
  Eigen::MatrixXd f(4, 1), q(4, 1);
  f << 1, 2, 3, 4;
  q << 0, 0, 0, 0;  // q_bar = 0 and V_qf = 0 -> denom = 0
  CHECK_THROWS_AS(klm(synthetic_eval(f, q), 0.05), degeneracy_error);
}

TEST_CASE("both statistics are invariant to fixed nonsingular moment maps") {
  const PanelData panel = generate_panel(well_identified(200, 4), 17);
  const MomentEval eval = evaluate(MomentSet::Sys, panel, 0.3);
  Eigen::MatrixXd map(eval.k, eval.k);
  Rng rng(5);
  for (Eigen::Index i = 0; i < map.rows(); ++i)
    for (Eigen::Index j = 0; j < map.cols(); ++j) map(i, j) = rng.gaussian();
  map += 3.0 * Eigen::MatrixXd::Identity(eval.k, eval.k);

  MomentEval mapped = eval;
  mapped.f_individual = eval.f_individual * map.transpose();
  mapped.q_individual = eval.q_individual * map.transpose();
  mapped.f_bar = map * eval.f_bar;
  mapped.q_bar = map * eval.q_bar;

  CHECK(gmm_ar(mapped, 0.05).statistic ==
        doctest::Approx(gmm_ar(eval, 0.05).statistic).epsilon(1e-10));
  CHECK(klm(mapped, 0.05).statistic ==
        doctest::Approx(klm(eval, 0.05).statistic).epsilon(1e-10));
}

TEST_CASE("null distributions match chi-squared (Kolmogorov distance)") {
  const int reps = 5000;
  const DgpConfig dgp = well_identified();
  std::vector<double> ar_stats(reps), klm_stats(reps);
  parallel_for(reps, 0, [&](std::size_t r) {
    const PanelData panel = generate_panel(dgp, replication_seed(2025, r));
    const MomentEval eval = evaluate(MomentSet::Sys, panel, 0.5);
    ar_stats[r] = gmm_ar(eval, 0.05).statistic;
    klm_stats[r] = klm(eval, 0.05).statistic;
  });
  auto kolmogorov = [&](std::vector<double>& stats, int dof) {
    std::sort(stats.begin(), stats.end());
    double dist = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double cdf = chi2_cdf(stats[i], dof);
      dist = std::max(dist, std::fabs(cdf - (i + 1.0) / reps));
      dist = std::max(dist, std::fabs(cdf - static_cast<double>(i) / reps));
    }
    return dist;
  };
  CHECK(kolmogorov(ar_stats, 2) <= 0.03);
  CHECK(kolmogorov(klm_stats, 1) <= 0.03);
}

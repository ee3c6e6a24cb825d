#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "panelid/dgp.hpp"
#include "panelid/moments.hpp"

using namespace panelid;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

PanelData random_panel(int n, int t, std::uint64_t seed) {
  DgpConfig c;
  c.theta0 = 0.6;
  c.sigma_c_sq = 0.5;
  c.sigma_sq.assign(t - 1, 1.0);
  c.n_individuals = n;
  c.n_periods = t;
  return generate_panel(c, seed);
}

}  // namespace

TEST_CASE("k_dim formulas and domain") {
  CHECK(k_dim(MomentSet::Dif, 4) == 3);
  CHECK(k_dim(MomentSet::Sys, 3) == 2);
  CHECK(k_dim(MomentSet::AS, 4) == 4);
  CHECK(k_dim(MomentSet::Dif, 3) == 1);
  CHECK(k_dim(MomentSet::Lev, 5) == 3);
  CHECK(k_dim(MomentSet::NL, 5) == 2);
  CHECK(k_dim(MomentSet::Sys, 5) == 9);
  CHECK(k_dim(MomentSet::AS, 5) == 8);
  CHECK_THROWS_AS(k_dim(MomentSet::NL, 3), dimension_error);
  CHECK_THROWS_AS(k_dim(MomentSet::AS, 3), dimension_error);
  CHECK_THROWS_AS(k_dim(MomentSet::Dif, 2), dimension_error);
}

TEST_CASE("moments_individual hand values at T = 3") {
  const Eigen::VectorXd row = vec({1, 2, 3});
  SUBCASE("Dif") {
    const auto [f, q] = moments_individual(MomentSet::Dif, row, 0.5);
    CHECK(f(0) == doctest::Approx(0.5));
    CHECK(q(0) == doctest::Approx(-1.0));
  }
  SUBCASE("Lev") {
    const auto [f, q] = moments_individual(MomentSet::Lev, row, 0.5);
    CHECK(f(0) == doctest::Approx(2.0));
    CHECK(q(0) == doctest::Approx(-2.0));
  }
  SUBCASE("Sys stacks Dif before Lev") {
    const auto [f, q] = moments_individual(MomentSet::Sys, row, 0.5);
    CHECK(f(0) == doctest::Approx(0.5));
    CHECK(f(1) == doctest::Approx(2.0));
  }
  SUBCASE("zero row gives zero moments") {
    const auto [f, q] = moments_individual(MomentSet::Sys, vec({0, 0, 0}), 0.7);
    CHECK(f.cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("NL needs T >= 4") {
    CHECK_THROWS_AS(moments_individual(MomentSet::NL, row, 0.5),
                    dimension_error);
    CHECK_THROWS_AS(moments_individual(MomentSet::AS, row, 0.5),
                    dimension_error);
  }
}

TEST_CASE("evaluate aggregates to exact column means") {
  Eigen::MatrixXd values(2, 3);
  values << 1, 2, 3, 1, 2, 3;
  const PanelData panel(values);
  const MomentEval eval = evaluate(MomentSet::Dif, panel, 0.5);
  CHECK(eval.f_bar(0) == doctest::Approx(0.5));

  Eigen::MatrixXd mixed(2, 3);
  mixed << 1, 2, 3, 0, 0, 0;
  const MomentEval eval2 = evaluate(MomentSet::Dif, PanelData(mixed), 0.5);
  CHECK(eval2.f_bar(0) == doctest::Approx(0.25));

  Eigen::MatrixXd single(1, 3);
  single << 1, 2, 3;
  const MomentEval eval3 = evaluate(MomentSet::Lev, PanelData(single), 0.5);
  CHECK(eval3.f_bar(0) == doctest::Approx(2.0));

  const PanelData big = random_panel(333, 4, 5);
  const MomentEval eval4 = evaluate(MomentSet::AS, big, 0.3);
  CHECK((eval4.f_bar - eval4.f_individual.colwise().mean().transpose())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
  CHECK((eval4.q_bar - eval4.q_individual.colwise().mean().transpose())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);
}

TEST_CASE("covariance estimators") {
  SUBCASE("identical rows give the zero matrix") {
    Eigen::MatrixXd values(3, 3);
    values << 1, 2, 3, 1, 2, 3, 1, 2, 3;
    const MomentEval eval = evaluate(MomentSet::Sys, PanelData(values), 0.5);
    CHECK(covariance_ff(eval).cwiseAbs().maxCoeff() == 0.0);
    CHECK(covariance_qf(eval).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("k = 1 hand case: f values {1, 3} give variance 1") {
    MomentEval eval;
    eval.k = 1;
    eval.f_individual.resize(2, 1);
    eval.f_individual << 1, 3;
    eval.q_individual.resize(2, 1);
    eval.q_individual << 1, 3;
    eval.f_bar = eval.f_individual.colwise().mean();
    eval.q_bar = eval.q_individual.colwise().mean();
    CHECK(covariance_ff(eval)(0, 0) == doctest::Approx(1.0));
    CHECK(covariance_qf(eval)(0, 0) == doctest::Approx(1.0));
  }
  SUBCASE("V_ff is symmetric, V_qf transposes") {
    const PanelData panel = random_panel(64, 4, 11);
    const MomentEval eval = evaluate(MomentSet::AS, panel, 0.4);
    const Eigen::MatrixXd vff = covariance_ff(eval);
    CHECK((vff - vff.transpose()).cwiseAbs().maxCoeff() == 0.0);

    MomentEval swapped = eval;
    std::swap(swapped.f_individual, swapped.q_individual);
    std::swap(swapped.f_bar, swapped.q_bar);
    const Eigen::MatrixXd vqf = covariance_qf(eval);
    const Eigen::MatrixXd vfq = covariance_qf(swapped);
    CHECK((vqf - vfq.transpose()).cwiseAbs().maxCoeff() <= 1e-14);
  }
  SUBCASE("single individual is degenerate") {
    Eigen::MatrixXd values(1, 3);
    values << 1, 2, 3;
    const MomentEval eval = evaluate(MomentSet::Dif, PanelData(values), 0.5);
    CHECK_THROWS_AS(covariance_ff(eval), degeneracy_error);
  }
}

TEST_CASE("stacking is exact: AS = Dif + NL, Sys = Dif + Lev") {
  const PanelData panel = random_panel(40, 5, 21);
  for (const double theta : {-0.3, 0.0, 0.5, 1.0, 1.7}) {
    const MomentEval as = evaluate(MomentSet::AS, panel, theta);
    const MomentEval sys = evaluate(MomentSet::Sys, panel, theta);
    const MomentEval dif = evaluate(MomentSet::Dif, panel, theta);
    const MomentEval nl = evaluate(MomentSet::NL, panel, theta);
    const MomentEval lev = evaluate(MomentSet::Lev, panel, theta);
    const int kd = dif.k;
    auto same = [](const auto& lhs, const auto& rhs) {
      return (lhs - rhs).cwiseAbs().maxCoeff() == 0.0;
    };
    CHECK(same(as.f_individual.leftCols(kd), dif.f_individual));
    CHECK(same(as.f_individual.rightCols(nl.k), nl.f_individual));
    CHECK(same(sys.f_individual.leftCols(kd), dif.f_individual));
    CHECK(same(sys.f_individual.rightCols(lev.k), lev.f_individual));
    CHECK(same(as.q_individual.rightCols(nl.k), nl.q_individual));
    CHECK(same(sys.q_individual.rightCols(lev.k), lev.q_individual));
  }
}

TEST_CASE("Dif, Lev, Sys are affine in theta with theta-free derivative") {
  const PanelData panel = random_panel(25, 5, 31);
  for (const MomentSet set :
       {MomentSet::Dif, MomentSet::Lev, MomentSet::Sys}) {
    const MomentEval at0 = evaluate(set, panel, 0.0);
    for (const double theta : {-1.0, 0.25, 0.8, 2.0}) {
      const MomentEval at = evaluate(set, panel, theta);
      const Eigen::MatrixXd predicted =
          at0.f_individual + theta * at0.q_individual;
      CHECK((at.f_individual - predicted).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK((at.q_individual - at0.q_individual).cwiseAbs().maxCoeff() <=
            1e-12);
    }
  }
}

TEST_CASE("NL derivative matches central finite differences") {
  const PanelData panel = random_panel(25, 5, 41);
  const double h = 1e-6;
  for (const double theta : {-0.5, 0.2, 0.9, 1.5}) {
    const MomentEval mid = evaluate(MomentSet::NL, panel, theta);
    const MomentEval up = evaluate(MomentSet::NL, panel, theta + h);
    const MomentEval down = evaluate(MomentSet::NL, panel, theta - h);
    const Eigen::MatrixXd fd =
        (up.f_individual - down.f_individual) / (2.0 * h);
    CHECK((mid.q_individual - fd).cwiseAbs().maxCoeff() <= 1e-6);
  }
}

TEST_CASE("moments vanish at the true value as N grows") {
  DgpConfig c;
  c.theta0 = 0.5;
  c.sigma_c_sq = 0.5;
  c.sigma_sq.assign(3, 1.0);
  c.n_individuals = 100000;
  c.n_periods = 4;
  const PanelData panel = generate_panel(c, 77);
  const MomentEval eval = evaluate(MomentSet::Sys, panel, 0.5);
  // bound 5 * max_t sigma_t * sqrt(var(y_i1)) / sqrt(N); var(y_i1) = 3
  const double bound = 5.0 * 1.0 * std::sqrt(3.0) / std::sqrt(100000.0);
  CHECK(eval.f_bar.cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("evaluate is independent of the thread count") {
  const PanelData panel = random_panel(5000, 4, 51);
  const MomentEval a = evaluate(MomentSet::Sys, panel, 0.4, 1);
  const MomentEval b = evaluate(MomentSet::Sys, panel, 0.4, 4);
  CHECK((a.f_individual - b.f_individual).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.f_bar - b.f_bar).cwiseAbs().maxCoeff() == 0.0);
}

#include "panelid/robust.hpp"

#include <cmath>
#include <string>

namespace panelid {

namespace {

void check_robust_args(MomentSet set, int t) {
  if (set != MomentSet::AS && set != MomentSet::Sys)
    throw dimension_error("robust moments exist only for AS and Sys");
  if (t != 4 && t != 5)
    throw dimension_error(
        "robust moment coefficients are tabulated for T in {4,5}, got T = " +
        std::to_string(t) + "; no closed form is available beyond T = 5");
}

}  // namespace

RobustQuad robust_quad(MomentSet set, int t, const PanelData& panel) {
  check_robust_args(set, t);
  if (panel.n_periods() != t)
    throw dimension_error("robust_quad: panel has T = " +
                          std::to_string(panel.n_periods()) +
                          " periods, expected " + std::to_string(t));
  const Eigen::Index n = panel.n_individuals();
  RobustQuad quad;
  quad.set = set;
  quad.t = t;
  quad.p = t == 4 ? 1 : 3;
  quad.p_max = t == 4 ? 2 : 5;
  quad.a_individual.resize(n, quad.p_max);
  quad.b_individual.resize(n, quad.p_max);
  quad.d_individual.resize(n, quad.p_max);

  const auto& y = panel.values();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double y1 = y(i, 0), y2 = y(i, 1), y3 = y(i, 2);
    const double d2 = y2 - y1, d3 = y3 - y2;
    auto a = quad.a_individual.row(i);
    auto b = quad.b_individual.row(i);
    auto d = quad.d_individual.row(i);
    if (t == 4) {
      const double y4 = y(i, 3);
      const double d4 = y4 - y3;
      if (set == MomentSet::Sys) {
        a << d2 * d2, 0.0;
        b << -(y3 - y1) * (y3 - y1), -d2 * d3;
        d << (y4 - y1) * d3, d2 * d4;
      } else {
        a << (y3 - y1) * d2, 0.0;
        b << -((y3 - y1) * d3 + (y4 - y1) * d2), -d2 * d3;
        d << (y4 - y1) * d3, d2 * d4;
      }
    } else {
      const double y4 = y(i, 3), y5 = y(i, 4);
      const double d4 = y4 - y3, d5 = y5 - y4;
      if (set == MomentSet::Sys) {
        a << d2 * d2, (y3 - y1) * d3, d3 * d3, 0.0, 0.0;
        b << -(y3 - y1) * (y3 - y1), -(y4 - y1) * (y4 - y2),
            -(y4 - y2) * (y4 - y2), -d2 * d4, -d3 * d4;
        d << (y4 - y1) * d3, (y5 - y1) * d4, (y5 - y2) * d4, d2 * d5, d3 * d5;
      } else {
        a << (y3 - y1) * d2, (y4 - y1) * d3, (y4 - y2) * d3, 0.0, 0.0;
        b << -((y4 - y1) * d2 + (y3 - y1) * d3),
            -((y4 - y1) * d4 + (y5 - y1) * d3),
            -((y4 - y2) * d4 + (y5 - y2) * d3), -d2 * d4, -d3 * d4;
        d << (y4 - y1) * d3, (y5 - y1) * d4, (y5 - y2) * d4, d2 * d5, d3 * d5;
      }
    }
  }
  quad.a = quad.a_individual.colwise().mean();
  quad.b = quad.b_individual.colwise().mean();
  quad.d = quad.d_individual.colwise().mean();
  return quad;
}

Eigen::VectorXd robust_eval(const RobustQuad& quad, double theta) {
  return quad.a * (theta * theta) + quad.b * theta + quad.d;
}

Eigen::VectorXd robust_eval_individual(const RobustQuad& quad, Eigen::Index i,
                                       double theta) {
  return (quad.a_individual.row(i) * (theta * theta) +
          quad.b_individual.row(i) * theta + quad.d_individual.row(i))
      .transpose();
}

namespace {

// Per-individual g_i(theta) rows and their Eicker-White covariance.
struct GSample {
  RowMajorMatrixXd rows;  // N x p_max
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

GSample g_sample(const RobustQuad& quad, double theta) {
  GSample s;
  s.rows = quad.a_individual * (theta * theta) + quad.b_individual * theta +
           quad.d_individual;
  s.mean = s.rows.colwise().mean();
  const RowMajorMatrixXd centered = s.rows.rowwise() - s.mean.transpose();
  s.cov = (centered.transpose() * centered) /
          static_cast<double>(s.rows.rows());
  return s;
}

}  // namespace

TestOutcome robust_gmm_ar(const RobustQuad& quad, double theta_star,
                          double alpha) {
  if (quad.n() < quad.p_max + 1)
    throw degeneracy_error("robust_gmm_ar: needs N >= p_max + 1");
  const GSample s = g_sample(quad, theta_star);
  const auto ldlt = spd_factor(s.cov, "robust_gmm_ar");
  const double stat =
      static_cast<double>(quad.n()) * s.mean.dot(ldlt.solve(s.mean));
  return make_outcome(stat, quad.p_max, alpha, theta_star,
                      StatKind::RobustAr);
}

TestOutcome robust_gmm_ar(MomentSet set, int t, const PanelData& panel,
                          double theta_star, double alpha) {
  return robust_gmm_ar(robust_quad(set, t, panel), theta_star, alpha);
}

Eigen::MatrixXd as_from_sys_map(int t, double theta) {
  if (t == 4) {
    Eigen::MatrixXd m(2, 2);
    m << 1, -theta, 0, 1;
    return m;
  }
  if (t == 5) {
    if (theta == 1.0)
      throw domain_error("as_from_sys_map: T = 5 map is undefined at theta = 1");
    const double r = theta / (1.0 - theta);
    Eigen::MatrixXd m(5, 5);
    m << 1, -r, r, 0, 0,
         0, 1, 0, 0, -theta,
         0, 0, 1, 0, -theta,
         0, 0, 0, 1, 0,
         0, 0, 0, 0, 1;
    return m;
  }
  throw dimension_error("as_from_sys_map: T must be 4 or 5");
}

double AsymptoticDesign::theta_e() const {
  return 1.0 + e * std::pow(static_cast<double>(n), -0.25);
}

Eigen::MatrixXd b_matrix(double e, std::int64_t n, int p_max) {
  if (n < 1) throw domain_error("b_matrix: n must be positive");
  if (p_max < 1) throw domain_error("b_matrix: p_max must be positive");
  const double r = e * std::pow(static_cast<double>(n), -0.25);
  const double scalars[3] = {1.0 + r * (2.0 + r), 1.0 + r, 1.0};
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(3 * p_max, p_max);
  for (int blk = 0; blk < 3; ++blk)
    b.block(blk * p_max, 0, p_max, p_max) =
        scalars[blk] * Eigen::MatrixXd::Identity(p_max, p_max);
  return b;
}

Eigen::MatrixXd v_abd(const RobustQuad& quad) {
  const Eigen::Index n = quad.n();
  if (n < 2) throw degeneracy_error("v_abd: needs at least two individuals");
  RowMajorMatrixXd stacked(n, 3 * quad.p_max);
  stacked << quad.a_individual, quad.b_individual, quad.d_individual;
  const Eigen::RowVectorXd mean = stacked.colwise().mean();
  const RowMajorMatrixXd centered = stacked.rowwise() - mean;
  return (centered.transpose() * centered) / static_cast<double>(n);
}

Eigen::VectorXd optimal_weight(const Eigen::VectorXd& a_target,
                               const Eigen::MatrixXd& bn,
                               const Eigen::MatrixXd& vabd) {
  const Eigen::MatrixXd bvb = bn.transpose() * vabd * bn;
  const auto ldlt = spd_factor(bvb, "optimal_weight");
  return ldlt.solve(a_target);
}

double delta_noncentrality(const AsymptoticDesign& design,
                           const Eigen::MatrixXd& bn,
                           const Eigen::MatrixXd& vabd, int p) {
  const int p_max = static_cast<int>(bn.cols());
  if (p < 1 || p > p_max)
    throw domain_error("delta_noncentrality: need 1 <= p <= p_max");
  Eigen::VectorXd target = Eigen::VectorXd::Zero(p_max);
  target.head(p).setOnes();
  const Eigen::MatrixXd bvb = bn.transpose() * vabd * bn;
  const auto ldlt = spd_factor(bvb, "delta_noncentrality");
  const double es = design.e * design.sigma;
  return es * es * es * es * target.dot(ldlt.solve(target));
}

TestOutcome optimal_weighted_ar(const RobustQuad& quad,
                                const AsymptoticDesign& design,
                                WeightMode mode, double alpha) {
  if (quad.n() < 2)
    throw degeneracy_error("optimal_weighted_ar: needs at least two "
                           "individuals");
  const Eigen::MatrixXd bn = b_matrix(design.e, design.n, quad.p_max);
  const Eigen::MatrixXd vabd = v_abd(quad);
  Eigen::VectorXd a_target;
  if (mode == WeightMode::Oracle) {
    a_target = Eigen::VectorXd::Zero(quad.p_max);
    a_target.head(quad.p).setConstant(design.sigma * design.sigma);
  } else {
    a_target = quad.a;
  }
  const Eigen::VectorXd w = optimal_weight(a_target, bn, vabd);

  const double theta = design.theta_e();
  const Eigen::VectorXd scalar_series =
      (quad.a_individual * (theta * theta) + quad.b_individual * theta +
       quad.d_individual) *
      w;
  const double mean = scalar_series.mean();
  const double var =
      (scalar_series.array() - mean).square().sum() /
      static_cast<double>(quad.n());
  if (!(var > 0.0))
    throw degeneracy_error("optimal_weighted_ar: weighted moment has zero "
                           "sample variance");
  const double stat = static_cast<double>(quad.n()) * mean * mean / var;
  return make_outcome(stat, 1, alpha, theta, StatKind::OptimalAr);
}

}  // namespace panelid

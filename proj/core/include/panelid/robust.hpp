#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "panelid/panel.hpp"
#include "panelid/representation.hpp"
#include "panelid/statistics.hpp"

namespace panelid {

// Robust sample moments g(theta) = a_f(theta)_perp' f_N(theta), which are
// quadratic in theta: g(theta) = a theta^2 + b theta + d. They involve only
// differenced data, so they keep identifying theta when the variance of the
// initial observations is large. Coordinate order follows the orthogonal
// complement: the p rows induced by g_f first, then the rows of g_2 (whose
// a-entries are identically zero).
struct RobustQuad {
  Eigen::VectorXd a, b, d;           // p_max, sample means
  RowMajorMatrixXd a_individual;     // N x p_max
  RowMajorMatrixXd b_individual;
  RowMajorMatrixXd d_individual;
  MomentSet set = MomentSet::Sys;
  int t = 4;
  int p = 1;
  int p_max = 2;

  Eigen::Index n() const { return a_individual.rows(); }
};

// Per-individual coefficients for AS/Sys with T in {4,5}; the panel must
// have exactly T = t periods.
RobustQuad robust_quad(MomentSet set, int t, const PanelData& panel);

// a theta^2 + b theta + d.
Eigen::VectorXd robust_eval(const RobustQuad& quad, double theta);
// Same per individual i.
Eigen::VectorXd robust_eval_individual(const RobustQuad& quad,
                                       Eigen::Index i, double theta);

// GMM-AR statistic on the robust moments:
//   N g(theta*)' Vgg(theta*)^-1 g(theta*),  dof = p_max,
// with Vgg the Eicker-White covariance of the per-individual g_i(theta*).
TestOutcome robust_gmm_ar(const RobustQuad& quad, double theta_star,
                          double alpha);
TestOutcome robust_gmm_ar(MomentSet set, int t, const PanelData& panel,
                          double theta_star, double alpha);

// Invertible map sending the Sys robust moments to the AS ones,
// g_AS(theta) = M_T(theta) g_Sys(theta). The T = 5 map has 1/(1-theta)
// entries and is undefined at theta = 1.
Eigen::MatrixXd as_from_sys_map(int t, double theta);

// Local-to-unity design theta(e) = 1 + e / N^(1/4) under time series
// homoskedasticity with common standard deviation sigma.
struct AsymptoticDesign {
  double e = 0.0;
  std::int64_t n = 1;
  double sigma = 1.0;

  double theta_e() const;
};

// B(N): three stacked p_max x p_max blocks scaling the (a, b, d) deviations
// at theta(e); block scalars (1 + r(2 + r), 1 + r, 1) with r = e / N^(1/4).
Eigen::MatrixXd b_matrix(double e, std::int64_t n, int p_max);

// Eicker-White covariance of the stacked per-individual (a_i', b_i', d_i')'.
Eigen::MatrixXd v_abd(const RobustQuad& quad);

// w = (B' V_abd B)^-1 a_target, the weighting that maximizes the
// noncentrality of a one-degree-of-freedom AR test on w'g(theta(e)).
Eigen::VectorXd optimal_weight(const Eigen::VectorXd& a_target,
                               const Eigen::MatrixXd& bn,
                               const Eigen::MatrixXd& vabd);

// delta(N) = (e sigma)^4 (iota_p; 0)' (B' V_abd B)^-1 (iota_p; 0).
double delta_noncentrality(const AsymptoticDesign& design,
                           const Eigen::MatrixXd& bn,
                           const Eigen::MatrixXd& vabd, int p);

// Weighted AR statistic N (w'g)^2 / (w' Vgg w) at theta(e), dof = 1.
// Oracle mode uses a_target = sigma^2 (iota_p; 0); plugin mode uses the
// sample a vector of the quad.
enum class WeightMode { Oracle, Plugin };

TestOutcome optimal_weighted_ar(const RobustQuad& quad,
                                const AsymptoticDesign& design,
                                WeightMode mode, double alpha);

}  // namespace panelid

#pragma once

#include <string>

#include <Eigen/Dense>

#include "panelid/moments.hpp"

namespace panelid {

enum class StatKind { GmmAr, Klm, RobustAr, OptimalAr };

// Label used in JSON output and power-table rows ("GMM-AR", "KLM", ...).
std::string to_string(StatKind kind);
// Short lowercase label for CSV curve names ("ar", "klm", ...).
std::string short_label(StatKind kind);
StatKind stat_kind_from_string(const std::string& name);

struct TestOutcome {
  double statistic = 0.0;
  int dof = 1;
  double p_value = 1.0;
  bool reject = false;
  double alpha = 0.05;
  double theta_star = 0.0;
  StatKind kind = StatKind::GmmAr;
};

// p-value, rejection flag and bookkeeping for a chi-squared statistic.
// Rejects when the statistic exceeds the (1-alpha) quantile of chi2(dof).
TestOutcome make_outcome(double statistic, int dof, double alpha,
                         double theta_star, StatKind kind);

// Factor a symmetric covariance matrix after checking its eigenvalue-ratio
// condition estimate. Throws degeneracy_error when the estimate exceeds 1e12
// or the matrix is not positive definite; no silent regularization.
Eigen::LDLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& v,
                                        const char* what);

// GMM-AR(theta*) = N f_N' V_ff^-1 f_N, chi2(k) under the null.
TestOutcome gmm_ar(const MomentEval& eval, double alpha);
TestOutcome gmm_ar(MomentSet set, const PanelData& panel, double theta_star,
                   double alpha);

// Identification-robust Jacobian estimate D_N = q_N - V_qf V_ff^-1 f_N.
Eigen::VectorXd d_hat(const MomentEval& eval);
Eigen::VectorXd d_hat(MomentSet set, const PanelData& panel,
                      double theta_star);

// KLM(theta*) = N f' V^-1 D (D' V^-1 D)^-1 D' V^-1 f, chi2(1) under the null.
TestOutcome klm(const MomentEval& eval, double alpha);
TestOutcome klm(MomentSet set, const PanelData& panel, double theta_star,
                double alpha);

}  // namespace panelid

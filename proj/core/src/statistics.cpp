#include "panelid/statistics.hpp"

#include <algorithm>
#include <cmath>

#include "panelid/distributions.hpp"

namespace panelid {

std::string to_string(StatKind kind) {
  switch (kind) {
    case StatKind::GmmAr:     return "GMM-AR";
    case StatKind::Klm:       return "KLM";
    case StatKind::RobustAr:  return "RobustAR";
    case StatKind::OptimalAr: return "OptimalAR";
  }
  return "?";
}

std::string short_label(StatKind kind) {
  switch (kind) {
    case StatKind::GmmAr:     return "ar";
    case StatKind::Klm:       return "klm";
    case StatKind::RobustAr:  return "robar";
    case StatKind::OptimalAr: return "optar";
  }
  return "?";
}

StatKind stat_kind_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "ar" || s == "gmm-ar" || s == "gmmar") return StatKind::GmmAr;
  if (s == "klm") return StatKind::Klm;
  if (s == "robar" || s == "robust-ar") return StatKind::RobustAr;
  if (s == "optar" || s == "optimal-ar") return StatKind::OptimalAr;
  throw config_error("unknown statistic '" + name + "'");
}

TestOutcome make_outcome(double statistic, int dof, double alpha,
                         double theta_star, StatKind kind) {
  TestOutcome out;
  out.statistic = std::max(statistic, 0.0);
  out.dof = dof;
  out.alpha = alpha;
  out.theta_star = theta_star;
  out.kind = kind;
  out.p_value = 1.0 - chi2_cdf(out.statistic, dof);
  out.reject = out.statistic > chi2_quantile(1.0 - alpha, dof);
  return out;
}

Eigen::LDLT<Eigen::MatrixXd> spd_factor(const Eigen::MatrixXd& v,
                                        const char* what) {
  constexpr double max_condition = 1e12;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(v,
                                                    Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  if (!(hi > 0.0) || lo <= 0.0 || hi / lo > max_condition)
    throw degeneracy_error(std::string(what) +
                           ": covariance is singular or ill-conditioned");
  return v.ldlt();
}

TestOutcome gmm_ar(const MomentEval& eval, double alpha) {
  const Eigen::Index n = eval.f_individual.rows();
  if (n <= eval.k)
    throw degeneracy_error("gmm_ar: needs N > k individuals");
  const auto ldlt = spd_factor(covariance_ff(eval), "gmm_ar");
  const double stat =
      static_cast<double>(n) * eval.f_bar.dot(ldlt.solve(eval.f_bar));
  return make_outcome(stat, eval.k, alpha, eval.theta, StatKind::GmmAr);
}

TestOutcome gmm_ar(MomentSet set, const PanelData& panel, double theta_star,
                   double alpha) {
  return gmm_ar(evaluate(set, panel, theta_star), alpha);
}

Eigen::VectorXd d_hat(const MomentEval& eval) {
  const auto ldlt = spd_factor(covariance_ff(eval), "d_hat");
  return eval.q_bar - covariance_qf(eval) * ldlt.solve(eval.f_bar);
}

Eigen::VectorXd d_hat(MomentSet set, const PanelData& panel,
                      double theta_star) {
  return d_hat(evaluate(set, panel, theta_star));
}

TestOutcome klm(const MomentEval& eval, double alpha) {
  const Eigen::Index n = eval.f_individual.rows();
  if (n <= eval.k) throw degeneracy_error("klm: needs N > k individuals");
  const auto ldlt = spd_factor(covariance_ff(eval), "klm");
  const Eigen::VectorXd vf = ldlt.solve(eval.f_bar);
  const Eigen::VectorXd d = eval.q_bar - covariance_qf(eval) * vf;
  const Eigen::VectorXd vd = ldlt.solve(d);
  const double denom = d.dot(vd);
  if (denom <= 0.0 || denom < 1e-14 * eval.q_bar.squaredNorm())
    throw degeneracy_error("klm: Jacobian estimate is rank deficient");
  const double proj = eval.f_bar.dot(vd);
  const double stat = static_cast<double>(n) * proj * proj / denom;
  return make_outcome(stat, 1, alpha, eval.theta, StatKind::Klm);
}

TestOutcome klm(MomentSet set, const PanelData& panel, double theta_star,
                double alpha) {
  return klm(evaluate(set, panel, theta_star), alpha);
}

}  // namespace panelid

#include "panelid/representation.hpp"

#include <string>

namespace panelid {

namespace {

void check_t(MomentSet set, int t) {
  if (t < 3 || t > 5)
    throw dimension_error(
        "representation matrices are tabulated for T in {3,4,5}, got T = " +
        std::to_string(t));
  if ((set == MomentSet::NL || set == MomentSet::AS) && t < 4)
    throw dimension_error(to_string(set) + " representation needs T >= 4");
}

// Block layouts in psi coordinates (y_i1 u_i2 ... y_i1 u_iT), T-1 columns.
// a_q and mu_q are the exact theta derivatives of a_f and mu_f.

ReprMatrices dif_repr(int t, double theta) {
  const int k = k_dim(MomentSet::Dif, t);
  ReprMatrices r;
  r.a_f = Eigen::MatrixXd::Zero(k, t - 1);
  r.a_q = Eigen::MatrixXd::Zero(k, t - 1);
  int idx = 0;
  for (int tt = 3; tt <= t; ++tt) {
    for (int j = 1; j <= tt - 2; ++j, ++idx) {
      r.a_f(idx, tt - 3) = -theta;
      r.a_f(idx, tt - 2) = 1.0;
      r.a_q(idx, tt - 3) = -1.0;
    }
  }
  r.mu_f = Eigen::VectorXd::Zero(k);
  r.mu_q = Eigen::VectorXd::Zero(k);
  return r;
}

ReprMatrices lev_repr(int t, double theta, const Eigen::VectorXd& s) {
  const int k = k_dim(MomentSet::Lev, t);
  ReprMatrices r;
  r.a_f = Eigen::MatrixXd::Zero(k, t - 1);
  r.a_q = Eigen::MatrixXd::Zero(k, t - 1);
  r.mu_f.resize(k);
  r.mu_q.resize(k);
  for (int tt = 3; tt <= t; ++tt) {
    const int idx = tt - 3;
    r.a_f(idx, idx) = 1.0 - theta;
    r.a_q(idx, idx) = -1.0;
    r.mu_f(idx) = (1.0 - theta) * s(idx);  // sigma_{t-1}^2
    r.mu_q(idx) = -s(idx);
  }
  return r;
}

ReprMatrices nl_repr(int t, double theta, const Eigen::VectorXd& s) {
  const int k = k_dim(MomentSet::NL, t);
  ReprMatrices r;
  r.a_f = Eigen::MatrixXd::Zero(k, t - 1);
  r.a_q = Eigen::MatrixXd::Zero(k, t - 1);
  r.mu_f.resize(k);
  r.mu_q.resize(k);
  for (int tt = 4; tt <= t; ++tt) {
    const int idx = tt - 4;
    r.a_f(idx, idx) = theta * (theta - 1.0);
    r.a_f(idx, idx + 1) = 1.0 - theta;
    r.a_q(idx, idx) = 2.0 * theta - 1.0;
    r.a_q(idx, idx + 1) = -1.0;
    // (1-theta)(sigma_{t-1}^2 - theta sigma_{t-2}^2); s(j) is sigma_{j+2}^2.
    r.mu_f(idx) = (1.0 - theta) * (s(tt - 3) - theta * s(tt - 4));
    r.mu_q(idx) = (2.0 * theta - 1.0) * s(tt - 4) - s(tt - 3);
  }
  return r;
}

ReprMatrices stack(const ReprMatrices& top, const ReprMatrices& bottom) {
  ReprMatrices r;
  const int k = static_cast<int>(top.a_f.rows() + bottom.a_f.rows());
  r.a_f.resize(k, top.a_f.cols());
  r.a_f << top.a_f, bottom.a_f;
  r.a_q.resize(k, top.a_q.cols());
  r.a_q << top.a_q, bottom.a_q;
  r.mu_f.resize(k);
  r.mu_f << top.mu_f, bottom.mu_f;
  r.mu_q.resize(k);
  r.mu_q << top.mu_q, bottom.mu_q;
  return r;
}

}  // namespace

ReprMatrices repr_matrices(MomentSet set, int t, double theta,
                           const Eigen::VectorXd& sigma_sq) {
  check_t(set, t);
  if (sigma_sq.size() != t - 1)
    throw dimension_error(
        "repr_matrices: sigma_sq must hold sigma_t^2 for t = 2..T");
  ReprMatrices r;
  switch (set) {
    case MomentSet::Dif: r = dif_repr(t, theta); break;
    case MomentSet::Lev: r = lev_repr(t, theta, sigma_sq); break;
    case MomentSet::NL:  r = nl_repr(t, theta, sigma_sq); break;
    case MomentSet::AS:
      r = stack(dif_repr(t, theta), nl_repr(t, theta, sigma_sq));
      break;
    case MomentSet::Sys:
      r = stack(dif_repr(t, theta), lev_repr(t, theta, sigma_sq));
      break;
  }
  r.set = set;
  r.t = t;
  r.theta = theta;
  r.sigma_sq = sigma_sq;
  return r;
}

OrthoComplement ortho_complement(MomentSet set, int t, double theta) {
  if (set != MomentSet::AS && set != MomentSet::Sys) {
    if (set == MomentSet::Dif)
      throw dimension_error(
          "ortho_complement: the Dif complement carries no identifying "
          "information; only AS and Sys are supported here");
    throw dimension_error("ortho_complement: a_f(theta)_perp does not exist "
                          "for " + to_string(set) + " moments");
  }
  if (set == MomentSet::Sys && t == 3)
    throw dimension_error(
        "ortho_complement: a_f(theta) is square full rank for Sys at T = 3, "
        "so no orthogonal complement exists");
  if (t != 4 && t != 5)
    throw dimension_error(
        "ortho_complement: tabulated for T in {4,5}, got T = " +
        std::to_string(t));

  OrthoComplement oc;
  if (t == 4) {
    oc.p = 1;
    oc.p_max = 2;
    if (set == MomentSet::AS) {
      oc.g_f.resize(4, 1);
      oc.g_f << theta - 1.0, 0, 0, 1;
      oc.g_2.resize(4, 1);
      oc.g_2 << 0, -1, 1, 0;
    } else {
      oc.g_f.resize(5, 1);
      oc.g_f << theta - 1.0, 0, 0, -theta, 1;
      oc.g_2.resize(5, 1);
      oc.g_2 << 0, -1, 1, 0, 0;
    }
    return oc;
  }
  oc.p = 3;
  oc.p_max = 5;
  const double tm1 = theta - 1.0;
  if (set == MomentSet::AS) {
    oc.g_f.resize(8, 3);
    oc.g_f << tm1, 0, 0,
              0, tm1, 0,
              0, 0, tm1,
              0, 0, 0,
              0, 0, 0,
              0, 0, 0,
              1, 0, 0,
              0, 1, 1;
    oc.g_2.resize(8, 2);
    oc.g_2 << 0, 0,
              0, 0,
              0, 0,
              -1, 0,
              1, -1,
              0, 1,
              0, 0,
              0, 0;
  } else {
    oc.g_f.resize(9, 3);
    oc.g_f << tm1, 0, 0,
              0, tm1, 0,
              0, 0, tm1,
              0, 0, 0,
              0, 0, 0,
              0, 0, 0,
              -theta, 0, 0,
              1, -theta, -theta,
              0, 1, 1;
    oc.g_2.resize(9, 2);
    oc.g_2 << 0, 0,
              0, 0,
              0, 0,
              -1, 0,
              1, -1,
              0, 1,
              0, 0,
              0, 0,
              0, 0;
  }
  return oc;
}

}  // namespace panelid

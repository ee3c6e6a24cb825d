#include "panelid/moments.hpp"

#include <algorithm>

#include "panelid/parallel.hpp"

namespace panelid {

std::string to_string(MomentSet set) {
  switch (set) {
    case MomentSet::Dif: return "dif";
    case MomentSet::Lev: return "lev";
    case MomentSet::NL:  return "nl";
    case MomentSet::AS:  return "as";
    case MomentSet::Sys: return "sys";
  }
  return "?";
}

MomentSet moment_set_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "dif") return MomentSet::Dif;
  if (s == "lev") return MomentSet::Lev;
  if (s == "nl") return MomentSet::NL;
  if (s == "as") return MomentSet::AS;
  if (s == "sys") return MomentSet::Sys;
  throw config_error("unknown moment set '" + name + "'");
}

int k_dim(MomentSet set, int t) {
  if (t < 3) throw dimension_error("moment conditions need T >= 3");
  if ((set == MomentSet::NL || set == MomentSet::AS) && t < 4)
    throw dimension_error(to_string(set) + " moments need T >= 4");
  switch (set) {
    case MomentSet::Dif: return (t - 1) * (t - 2) / 2;
    case MomentSet::Lev: return t - 2;
    case MomentSet::NL:  return t - 3;
    case MomentSet::AS:  return (t - 1) * (t - 2) / 2 + t - 3;
    case MomentSet::Sys: return (t + 1) * (t - 2) / 2;
  }
  throw dimension_error("unknown moment set");
}

namespace {

// y is 0-based; dy(t) = y_{t} - y_{t-1} with t in conventional indexing (2..T).
inline double dy(const ConstRowView& y, int t) {
  return y(t - 1) - y(t - 2);
}

void dif_block(const ConstRowView& y, double theta, RowView f, RowView q) {
  const int t_count = static_cast<int>(y.size());
  int idx = 0;
  for (int t = 3; t <= t_count; ++t) {
    const double diff = dy(y, t) - theta * dy(y, t - 1);
    for (int j = 1; j <= t - 2; ++j, ++idx) {
      f(idx) = y(j - 1) * diff;
      q(idx) = -y(j - 1) * dy(y, t - 1);
    }
  }
}

void lev_block(const ConstRowView& y, double theta, RowView f, RowView q) {
  const int t_count = static_cast<int>(y.size());
  for (int t = 3; t <= t_count; ++t) {
    f(t - 3) = dy(y, t - 1) * (y(t - 1) - theta * y(t - 2));
    q(t - 3) = -dy(y, t - 1) * y(t - 2);
  }
}

void nl_block(const ConstRowView& y, double theta, RowView f, RowView q) {
  const int t_count = static_cast<int>(y.size());
  for (int t = 4; t <= t_count; ++t) {
    const double level = y(t - 1) - theta * y(t - 2);
    const double diff = dy(y, t - 1) - theta * dy(y, t - 2);
    f(t - 4) = level * diff;
    q(t - 4) = -y(t - 2) * diff - level * dy(y, t - 2);
  }
}

}  // namespace

void moments_individual(MomentSet set, const ConstRowView& row, double theta,
                        RowView f, RowView q) {
  const int t_count = static_cast<int>(row.size());
  const int k = k_dim(set, t_count);
  if (f.size() != k || q.size() != k)
    throw dimension_error("moments_individual: output size mismatch");
  switch (set) {
    case MomentSet::Dif:
      dif_block(row, theta, f, q);
      return;
    case MomentSet::Lev:
      lev_block(row, theta, f, q);
      return;
    case MomentSet::NL:
      nl_block(row, theta, f, q);
      return;
    case MomentSet::AS: {
      const int kd = k_dim(MomentSet::Dif, t_count);
      dif_block(row, theta, f.head(kd), q.head(kd));
      nl_block(row, theta, f.tail(k - kd), q.tail(k - kd));
      return;
    }
    case MomentSet::Sys: {
      const int kd = k_dim(MomentSet::Dif, t_count);
      dif_block(row, theta, f.head(kd), q.head(kd));
      lev_block(row, theta, f.tail(k - kd), q.tail(k - kd));
      return;
    }
  }
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> moments_individual(
    MomentSet set, const Eigen::VectorXd& row, double theta) {
  const int k = k_dim(set, static_cast<int>(row.size()));
  Eigen::RowVectorXd f(k), q(k);
  moments_individual(set, row.transpose(), theta, f, q);
  return {f.transpose(), q.transpose()};
}

MomentEval evaluate(MomentSet set, const PanelData& panel, double theta,
                    unsigned threads) {
  const int n = static_cast<int>(panel.n_individuals());
  const int k = k_dim(set, static_cast<int>(panel.n_periods()));
  MomentEval eval;
  eval.k = k;
  eval.theta = theta;
  eval.f_individual.resize(n, k);
  eval.q_individual.resize(n, k);
  const auto& values = panel.values();
  auto fill_row = [&](std::size_t i) {
    moments_individual(set, values.row(static_cast<Eigen::Index>(i)), theta,
                       eval.f_individual.row(static_cast<Eigen::Index>(i)),
                       eval.q_individual.row(static_cast<Eigen::Index>(i)));
  };
  if (threads <= 1 || n < 4096) {
    for (int i = 0; i < n; ++i) fill_row(static_cast<std::size_t>(i));
  } else {
    parallel_for(static_cast<std::size_t>(n), threads, fill_row);
  }
  // Column means in fixed row order, so the result never depends on threads.
  eval.f_bar = eval.f_individual.colwise().mean();
  eval.q_bar = eval.q_individual.colwise().mean();
  return eval;
}

namespace {

Eigen::MatrixXd centered_cross(const RowMajorMatrixXd& lhs,
                               const Eigen::VectorXd& lhs_mean,
                               const RowMajorMatrixXd& rhs,
                               const Eigen::VectorXd& rhs_mean) {
  const Eigen::Index n = lhs.rows();
  if (n < 2)
    throw degeneracy_error("covariance needs at least two individuals");
  const RowMajorMatrixXd lc = lhs.rowwise() - lhs_mean.transpose();
  const RowMajorMatrixXd rc = rhs.rowwise() - rhs_mean.transpose();
  return (lc.transpose() * rc) / static_cast<double>(n);
}

}  // namespace

Eigen::MatrixXd covariance_ff(const MomentEval& eval) {
  return centered_cross(eval.f_individual, eval.f_bar, eval.f_individual,
                        eval.f_bar);
}

Eigen::MatrixXd covariance_qf(const MomentEval& eval) {
  return centered_cross(eval.q_individual, eval.q_bar, eval.f_individual,
                        eval.f_bar);
}

}  // namespace panelid

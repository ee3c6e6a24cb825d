#pragma once

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "panelid/panel.hpp"

namespace panelid {

// Moment condition families for the panel AR(1).
//   Dif: lagged levels instrument the differenced equation
//   Lev: lagged differences instrument the level equation
//   NL:  Ahn-Schmidt products of levels and differences
//   AS:  Dif stacked over NL;  Sys: Dif stacked over Lev
enum class MomentSet { Dif, Lev, NL, AS, Sys };

std::string to_string(MomentSet set);
MomentSet moment_set_from_string(const std::string& name);

// Per-individual blocks are stored row-major: rows are filled one individual
// at a time and then consumed by matrix products.
using RowMajorMatrixXd =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
// Read-only view of one individual's observations; tolerates the stride of
// a matrix row.
using ConstRowView =
    Eigen::Ref<const Eigen::RowVectorXd, 0, Eigen::InnerStride<>>;
using RowView = Eigen::Ref<Eigen::RowVectorXd>;

// Moment dimension k for a given family and panel length. NL and AS need
// T >= 4; everything else needs T >= 3.
int k_dim(MomentSet set, int t);

// Per-individual moment vector f_i(theta) and derivative q_i(theta).
// Row ordering of the Dif block: outer loop t = 3..T, inner loop j = 1..t-2.
// AS and Sys put their Dif block first.
void moments_individual(MomentSet set, const ConstRowView& row, double theta,
                        RowView f, RowView q);

std::pair<Eigen::VectorXd, Eigen::VectorXd> moments_individual(
    MomentSet set, const Eigen::VectorXd& row, double theta);

// Sample moments of one panel at one theta. Row i of f_individual is
// f_i(theta)'; f_bar and q_bar are exact column means.
struct MomentEval {
  RowMajorMatrixXd f_individual;  // N x k
  RowMajorMatrixXd q_individual;  // N x k
  Eigen::VectorXd f_bar;          // k
  Eigen::VectorXd q_bar;          // k
  int k = 0;
  double theta = 0.0;
};

MomentEval evaluate(MomentSet set, const PanelData& panel, double theta,
                    unsigned threads = 1);

// Eicker-White covariance (1/N) sum (f_i - f_bar)(f_i - f_bar)'.
Eigen::MatrixXd covariance_ff(const MomentEval& eval);

// Cross term (1/N) sum (q_i - q_bar)(f_i - f_bar)'.
Eigen::MatrixXd covariance_qf(const MomentEval& eval);

}  // namespace panelid

#pragma once

#include <Eigen/Dense>

#include "panelid/moments.hpp"

namespace panelid {

// Closed-form matrices describing the large-N behavior of the sample moments
// when the variance of the initial observations diverges: f_N(theta) splits
// into a part spanned by a_f (loaded on the diverging initial-observation
// terms) plus the deterministic drift mu_f; a_q and mu_q are their theta
// derivatives and play the same role for q_N(theta).
struct ReprMatrices {
  Eigen::MatrixXd a_f;   // k x (T-1)
  Eigen::MatrixXd a_q;   // k x (T-1)
  Eigen::VectorXd mu_f;  // k
  Eigen::VectorXd mu_q;  // k
  MomentSet set = MomentSet::Dif;
  int t = 3;
  double theta = 0.0;
  Eigen::VectorXd sigma_sq;  // sigma_t^2 for t = 2..T
};

// Tabulated for T in {3,4,5} (Dif, Lev, Sys) and T in {4,5} (NL, AS).
// AS and Sys are the stacked Dif/NL and Dif/Lev blocks, Dif first.
ReprMatrices repr_matrices(MomentSet set, int t, double theta,
                           const Eigen::VectorXd& sigma_sq);

// Basis of the null space of a_f(theta)', split into the theta-dependent
// block g_f and the theta-free block g_2:  a_f(theta)_perp = (g_f : g_2).
// Exists only for AS and Sys with T in {4,5}.
struct OrthoComplement {
  Eigen::MatrixXd g_f;  // k x p
  Eigen::MatrixXd g_2;  // k x (p_max - p)
  int p = 0;
  int p_max = 0;

  Eigen::MatrixXd full() const {
    Eigen::MatrixXd m(g_f.rows(), p_max);
    m << g_f, g_2;
    return m;
  }
};

OrthoComplement ortho_complement(MomentSet set, int t, double theta);

}  // namespace panelid

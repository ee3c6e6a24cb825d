#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "panelid/panel.hpp"

namespace panelid {

// Data generating processes for y_it = c_i + theta0 * y_{i,t-1} + u_it under
// mean stationarity, y_i1 = mu_i + u_i1 with mu_i = c_i / (1 - theta0).
// The variants differ in how the variance of u_i1 relates to theta0:
//
//   Dgp1: sigma_1^2 fixed (supplied), effects drawn as c_i ~ N(0, sigma_c^2)
//   Dgp2: sigma_1^2 = sigma^2 / (1 - theta0^2), c_i drawn
//   Dgp3: sigma_1^2 = sigma^2 / (1 - theta0^2), mu_i drawn ~ N(0, sigma_mu^2)
//   Dgp4: sigma_1^2 = sigma^2 (1 - theta0^(2(g+1))) / (1 - theta0^2), mu_i drawn
//   Dgp5: same sigma_1^2 as Dgp4, c_i drawn
//
// Dgp4/Dgp5 describe a process started g periods in the past; Dgp2/Dgp3 one
// started infinitely long ago.
enum class DgpVariant { Dgp1, Dgp2, Dgp3, Dgp4, Dgp5 };

// theta_{0,N} = 1 + l / N^tau, a drifting true value approaching one from
// below as the cross-section grows.
double drifting_theta(double l, double tau, std::int64_t n);

struct Drift {
  double l;    // < 0
  double tau;  // > 1/2
};

struct DgpConfig {
  double theta0 = 0.5;
  std::optional<Drift> drift;    // when set, overrides theta0
  double sigma_c_sq = 0.0;       // var(c_i)    (Dgp1/2/5)
  double sigma_mu_sq = 0.0;      // var(mu_i)   (Dgp3/4)
  std::vector<double> sigma_sq;  // sigma_t^2 for t = 2..T, size T-1
  DgpVariant variant = DgpVariant::Dgp1;
  double sigma1_sq_dgp1 = 1.0;   // sigma_1^2, used by Dgp1 only
  int g = 1;                     // start-up periods, Dgp4/Dgp5
  int n_individuals = 0;
  int n_periods = 0;

  // Resolved true value: drifting_theta(l, tau, N) when drift is set.
  double effective_theta0() const;
};

// Variance of the initial disturbance u_i1 implied by the variant.
double sigma1_sq(const DgpConfig& config);

// Simulates a panel. Within one stream seeded by `seed`, the draw order per
// individual is: effect (c_i or mu_i), u_i1, then u_i2..u_iT. Identical
// (config, seed) give identical panels.
PanelData generate_panel(const DgpConfig& config, std::uint64_t seed);

// Same panel plus the drawn individual effects c_i, for DGP diagnostics.
std::pair<PanelData, Eigen::VectorXd> generate_panel_with_effects(
    const DgpConfig& config, std::uint64_t seed);

}  // namespace panelid

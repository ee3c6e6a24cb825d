#include "panelid/dgp.hpp"

#include <cmath>
#include <string>

#include "panelid/rng.hpp"

namespace panelid {

namespace {

bool draws_mu_directly(DgpVariant v) {
  return v == DgpVariant::Dgp3 || v == DgpVariant::Dgp4;
}

// Common sigma^2 of u_i2..u_iT; Dgp2-5 assume a single value.
double common_sigma_sq(const DgpConfig& config) {
  const auto& s = config.sigma_sq;
  if (s.empty()) throw config_error("sigma_sq profile is empty");
  for (double v : s)
    if (v != s.front())
      throw config_error(
          "DGP2-DGP5 assume a time-homoskedastic sigma_t^2 profile");
  return s.front();
}

void validate(const DgpConfig& config) {
  if (config.n_individuals < 1)
    throw config_error("n_individuals must be positive");
  if (config.n_periods < 3) throw config_error("n_periods must be at least 3");
  if (static_cast<int>(config.sigma_sq.size()) != config.n_periods - 1)
    throw config_error("sigma_sq must list sigma_t^2 for t = 2..T (size T-1)");
  if (config.sigma_c_sq < 0 || config.sigma_mu_sq < 0 ||
      config.sigma1_sq_dgp1 < 0)
    throw config_error("variances must be non-negative");
  for (double v : config.sigma_sq)
    if (v < 0) throw config_error("variances must be non-negative");
  if ((config.variant == DgpVariant::Dgp4 ||
       config.variant == DgpVariant::Dgp5) &&
      config.g < 1)
    throw config_error("DGP4/DGP5 need g >= 1");
  if (config.drift) {
    if (!(config.drift->l < 0) || !(config.drift->tau > 0.5))
      throw domain_error("drift requires l < 0 and tau > 1/2");
  }
}

}  // namespace

double drifting_theta(double l, double tau, std::int64_t n) {
  if (!(l < 0)) throw domain_error("drifting_theta: l must be negative");
  if (!(tau > 0.5)) throw domain_error("drifting_theta: tau must exceed 1/2");
  if (n < 1) throw domain_error("drifting_theta: n must be positive");
  return 1.0 + l * std::pow(static_cast<double>(n), -tau);
}

double DgpConfig::effective_theta0() const {
  if (drift) return drifting_theta(drift->l, drift->tau, n_individuals);
  return theta0;
}

double sigma1_sq(const DgpConfig& config) {
  validate(config);
  const double theta = config.effective_theta0();
  switch (config.variant) {
    case DgpVariant::Dgp1:
      return config.sigma1_sq_dgp1;
    case DgpVariant::Dgp2:
    case DgpVariant::Dgp3: {
      if (theta * theta >= 1.0)
        throw domain_error("DGP2/DGP3 need theta0^2 < 1, got theta0 = " +
                           std::to_string(theta));
      return common_sigma_sq(config) / (1.0 - theta * theta);
    }
    case DgpVariant::Dgp4:
    case DgpVariant::Dgp5: {
      // (1 - theta^(2(g+1))) / (1 - theta^2) as the finite geometric sum
      // sum_{j=0}^{g} theta^(2j), which is also defined at theta = 1.
      const double t2 = theta * theta;
      double sum = 1.0, pow_t2 = 1.0;
      for (int j = 1; j <= config.g; ++j) {
        pow_t2 *= t2;
        sum += pow_t2;
      }
      return common_sigma_sq(config) * sum;
    }
  }
  throw config_error("unknown DGP variant");
}

namespace {

std::pair<PanelData, Eigen::VectorXd> generate_impl(const DgpConfig& config,
                                                    std::uint64_t seed) {
  validate(config);
  const double theta = config.effective_theta0();
  const bool mu_direct = draws_mu_directly(config.variant);
  if (!mu_direct && theta == 1.0)
    throw domain_error(
        "theta0 = 1 makes mu_i = c_i / (1 - theta0) singular; "
        "use a drifting sequence or a mu-based variant");

  const double sd_effect =
      std::sqrt(mu_direct ? config.sigma_mu_sq : config.sigma_c_sq);
  const double sd_u1 = std::sqrt(sigma1_sq(config));
  const int n = config.n_individuals;
  const int t_count = config.n_periods;

  Eigen::MatrixXd y(n, t_count);
  Eigen::VectorXd effects(n);
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    const double effect = sd_effect * rng.gaussian();
    double c_i, mu_i;
    if (mu_direct) {
      mu_i = effect;
      c_i = (1.0 - theta) * mu_i;
    } else {
      c_i = effect;
      mu_i = c_i / (1.0 - theta);
    }
    effects(i) = c_i;
    y(i, 0) = mu_i + sd_u1 * rng.gaussian();
    for (int t = 1; t < t_count; ++t) {
      const double sd_t = std::sqrt(config.sigma_sq[t - 1]);
      y(i, t) = c_i + theta * y(i, t - 1) + sd_t * rng.gaussian();
    }
  }
  return {PanelData(std::move(y)), std::move(effects)};
}

}  // namespace

PanelData generate_panel(const DgpConfig& config, std::uint64_t seed) {
  return generate_impl(config, seed).first;
}

std::pair<PanelData, Eigen::VectorXd> generate_panel_with_effects(
    const DgpConfig& config, std::uint64_t seed) {
  return generate_impl(config, seed);
}

}  // namespace panelid

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "panelid/dgp.hpp"
#include "panelid/statistics.hpp"

namespace panelid {

// One test to run per replication: which statistic on which moment family.
struct TestSpec {
  StatKind kind = StatKind::Klm;
  MomentSet set = MomentSet::Sys;

  std::string label() const { return short_label(kind) + "-" + to_string(set); }
};

struct ExperimentSpec {
  DgpConfig dgp;
  std::vector<double> theta0_grid;  // sweep of true values ...
  std::vector<double> e_grid;       // ... or of localizing parameters
  std::vector<TestSpec> tests;
  double theta_star = 0.5;          // fixed hypothesis for theta0 sweeps
  double alpha = 0.05;
  int replications = 5000;
  std::uint64_t base_seed = 0;
  unsigned threads = 0;             // 0 = machine parallelism
};

struct PowerRow {
  double sweep_value = 0.0;
  std::string test_label;
  double rejection_frequency = 0.0;
  double mc_se = 0.0;
};

struct PowerTable {
  std::vector<PowerRow> rows;
};

// Fraction of replications rejecting H0: theta = theta_star, plus its
// binomial Monte Carlo standard error. Replication r is seeded with
// replication_seed(base_seed, r), so the result is independent of the
// thread count. Replications that die with a degeneracy error are dropped
// from the denominator; more than 10% of them is an experiment error.
std::pair<double, double> rejection_frequency(const DgpConfig& dgp,
                                              const TestSpec& test,
                                              double theta_star, double alpha,
                                              int replications,
                                              std::uint64_t base_seed,
                                              unsigned threads = 0);

// Rejection frequencies over theta0_grid x tests, one row per pair.
PowerTable power_curve(const ExperimentSpec& spec);

// Local-to-unity sweep: for each e the hypothesis is theta(e) = 1 + e/N^(1/4)
// while the DGP stays fixed. Panels are generated once per replication and
// shared across the whole e grid.
PowerTable local_power_curve(const ExperimentSpec& spec);

}  // namespace panelid

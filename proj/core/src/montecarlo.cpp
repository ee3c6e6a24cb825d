#include "panelid/montecarlo.hpp"

#include <cmath>
#include <utility>

#include "panelid/parallel.hpp"
#include "panelid/rng.hpp"
#include "panelid/robust.hpp"

namespace panelid {

namespace {

enum class RepResult : unsigned char { Accept, Reject, Failed };

bool run_single_test(const TestSpec& test, const PanelData& panel,
                     double theta_star, double alpha) {
  switch (test.kind) {
    case StatKind::GmmAr:
      return gmm_ar(test.set, panel, theta_star, alpha).reject;
    case StatKind::Klm:
      return klm(test.set, panel, theta_star, alpha).reject;
    case StatKind::RobustAr:
      return robust_gmm_ar(test.set, static_cast<int>(panel.n_periods()),
                           panel, theta_star, alpha)
          .reject;
    case StatKind::OptimalAr:
      throw config_error(
          "the optimal weighted AR test runs only in local power sweeps");
  }
  throw config_error("unknown statistic kind");
}

std::pair<double, double> summarize(const std::vector<RepResult>& results,
                                    const char* what) {
  int rejects = 0, failures = 0;
  for (const RepResult r : results) {
    if (r == RepResult::Failed)
      ++failures;
    else if (r == RepResult::Reject)
      ++rejects;
  }
  const int total = static_cast<int>(results.size());
  if (failures * 10 > total)
    throw experiment_error(std::string(what) + ": " +
                           std::to_string(failures) + " of " +
                           std::to_string(total) +
                           " replications failed with evaluator errors");
  const int used = total - failures;
  const double freq = used > 0 ? static_cast<double>(rejects) / used : 0.0;
  const double se = used > 0 ? std::sqrt(freq * (1.0 - freq) / used) : 0.0;
  return {freq, se};
}

void check_spec(const ExperimentSpec& spec) {
  if (spec.replications < 1)
    throw config_error("experiment needs at least one replication");
  if (spec.tests.empty()) throw config_error("experiment lists no tests");
  if (spec.theta0_grid.empty() == spec.e_grid.empty())
    throw config_error(
        "experiment needs exactly one of theta0_grid / e_grid");
}

}  // namespace

std::pair<double, double> rejection_frequency(const DgpConfig& dgp,
                                              const TestSpec& test,
                                              double theta_star, double alpha,
                                              int replications,
                                              std::uint64_t base_seed,
                                              unsigned threads) {
  if (replications < 1)
    throw config_error("rejection_frequency needs replications >= 1");
  std::vector<RepResult> results(replications, RepResult::Failed);
  parallel_for(static_cast<std::size_t>(replications), threads,
               [&](std::size_t r) {
                 const PanelData panel =
                     generate_panel(dgp, replication_seed(base_seed, r));
                 try {
                   results[r] = run_single_test(test, panel, theta_star, alpha)
                                    ? RepResult::Reject
                                    : RepResult::Accept;
                 } catch (const degeneracy_error&) {
                   results[r] = RepResult::Failed;
                 }
               });
  return summarize(results, "rejection_frequency");
}

PowerTable power_curve(const ExperimentSpec& spec) {
  check_spec(spec);
  if (spec.theta0_grid.empty())
    throw config_error("power_curve needs a theta0 sweep");
  PowerTable table;
  for (const double theta0 : spec.theta0_grid) {
    DgpConfig dgp = spec.dgp;
    dgp.theta0 = theta0;
    dgp.drift.reset();
    for (const TestSpec& test : spec.tests) {
      const auto [freq, se] =
          rejection_frequency(dgp, test, spec.theta_star, spec.alpha,
                              spec.replications, spec.base_seed, spec.threads);
      table.rows.push_back({theta0, test.label(), freq, se});
    }
  }
  return table;
}

PowerTable local_power_curve(const ExperimentSpec& spec) {
  check_spec(spec);
  if (spec.e_grid.empty())
    throw config_error("local_power_curve needs an e sweep");
  const int n_tests = static_cast<int>(spec.tests.size());
  const int n_points = static_cast<int>(spec.e_grid.size());
  const int reps = spec.replications;
  const std::int64_t n_ind = spec.dgp.n_individuals;
  const int t_len = spec.dgp.n_periods;

  // Homoskedastic sigma for the oracle weighting and delta(N) diagnostics.
  const double sigma =
      spec.dgp.sigma_sq.empty() ? 1.0 : std::sqrt(spec.dgp.sigma_sq.front());

  bool needs_sys_quad = false, needs_as_quad = false;
  for (const TestSpec& test : spec.tests)
    if (test.kind == StatKind::OptimalAr || test.kind == StatKind::RobustAr)
      (test.set == MomentSet::AS ? needs_as_quad : needs_sys_quad) = true;

  // results[r] holds one RepResult per (test, e) cell.
  std::vector<std::vector<RepResult>> results(
      reps, std::vector<RepResult>(n_tests * n_points, RepResult::Failed));

  parallel_for(static_cast<std::size_t>(reps), spec.threads,
               [&](std::size_t r) {
    const PanelData panel =
        generate_panel(spec.dgp, replication_seed(spec.base_seed, r));
    std::optional<RobustQuad> quad_sys, quad_as;
    if (needs_sys_quad)
      quad_sys = robust_quad(MomentSet::Sys, t_len, panel);
    if (needs_as_quad) quad_as = robust_quad(MomentSet::AS, t_len, panel);

    for (int pi = 0; pi < n_points; ++pi) {
      const double e = spec.e_grid[pi];
      const AsymptoticDesign design{e, n_ind, sigma};
      const double theta_star = design.theta_e();
      for (int ti = 0; ti < n_tests; ++ti) {
        const TestSpec& test = spec.tests[ti];
        RepResult& cell = results[r][ti * n_points + pi];
        try {
          bool reject;
          if (test.kind == StatKind::OptimalAr) {
            const RobustQuad& quad =
                test.set == MomentSet::AS ? *quad_as : *quad_sys;
            reject = optimal_weighted_ar(quad, design, WeightMode::Plugin,
                                         spec.alpha)
                         .reject;
          } else if (test.kind == StatKind::RobustAr) {
            const RobustQuad& quad =
                test.set == MomentSet::AS ? *quad_as : *quad_sys;
            reject = robust_gmm_ar(quad, theta_star, spec.alpha).reject;
          } else {
            reject = run_single_test(test, panel, theta_star, spec.alpha);
          }
          cell = reject ? RepResult::Reject : RepResult::Accept;
        } catch (const degeneracy_error&) {
          cell = RepResult::Failed;
        }
      }
    }
  });

  PowerTable table;
  std::vector<RepResult> cell_results(reps);
  for (int pi = 0; pi < n_points; ++pi) {
    for (int ti = 0; ti < n_tests; ++ti) {
      for (int r = 0; r < reps; ++r)
        cell_results[r] = results[r][ti * n_points + pi];
      const auto [freq, se] = summarize(cell_results, "local_power_curve");
      table.rows.push_back(
          {spec.e_grid[pi], spec.tests[ti].label(), freq, se});
    }
  }
  return table;
}

}  // namespace panelid

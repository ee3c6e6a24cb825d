// Command line front end: panel simulation, identification robust tests,
// confidence sets, power curves and the canned reproduction experiments.
//
// Exit codes: 0 success, 2 usage or input validation, 3 I/O failure,
// 4 numerical degeneracy fatal to the whole run.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "panelid/dgp.hpp"
#include "panelid/inference.hpp"
#include "panelid/io.hpp"
#include "panelid/montecarlo.hpp"
#include "panelid/reproduce.hpp"
#include "panelid/robust.hpp"

namespace {

using namespace panelid;

constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

// lo:hi:step inclusive sweep.
std::vector<double> parse_range(const std::string& text) {
  double lo = 0, hi = 0, step = 0;
  char extra = 0;
  if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &lo, &hi, &step, &extra) != 3)
    throw config_error("range '" + text + "' is not lo:hi:step");
  if (!(step > 0) || !(hi >= lo))
    throw config_error("range '" + text + "' needs lo <= hi and step > 0");
  std::vector<double> values;
  const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  if (count > 100000) throw config_error("range '" + text + "' is too fine");
  values.reserve(count);
  for (int i = 0; i < count; ++i) values.push_back(lo + i * step);
  return values;
}

unsigned threads_from_env() {
  const char* env = std::getenv("PANELID_THREADS");
  if (!env || !*env) return 0;
  const long parsed = std::strtol(env, nullptr, 10);
  return parsed > 0 ? static_cast<unsigned>(parsed) : 0;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

double parse_double(const std::string& text) {
  char* end = nullptr;
  const double value = std::strtod(text.c_str(), &end);
  if (end == text.c_str() || *end != '\0')
    throw config_error("'" + text + "' is not a number");
  return value;
}

struct DgpFlags {
  int dgp = 1;
  double theta0 = 0.5;
  double drift_l = 0.0, drift_tau = 0.0;
  double sigma_c_sq = 0.0;
  double sigma_mu_sq = 0.0;
  double sigma1_sq = 1.0;
  std::string sigma_sq = "1";
  int g = 1;
  int n = 250;
  int t = 3;

  // The power sweep owns the --theta0 flag, so the DGP block can omit it.
  void attach(CLI::App* cmd, bool with_theta0 = true) {
    cmd->add_option("--dgp", dgp, "DGP variant 1-5")->check(CLI::Range(1, 5));
    if (with_theta0)
      cmd->add_option("--theta0", theta0, "true autoregressive parameter");
    cmd->add_option("--drift-l", drift_l, "drift constant l < 0");
    cmd->add_option("--drift-tau", drift_tau, "drift rate tau > 1/2");
    cmd->add_option("--sigma-c-sq", sigma_c_sq, "var(c_i)");
    cmd->add_option("--sigma-mu-sq", sigma_mu_sq, "var(mu_i), DGP3/DGP4");
    cmd->add_option("--sigma1-sq", sigma1_sq, "var(u_i1), DGP1 only");
    cmd->add_option("--sigma-sq", sigma_sq,
                    "sigma_t^2 profile for t=2..T: one value or a comma list");
    cmd->add_option("--g", g, "start-up periods, DGP4/DGP5");
    cmd->add_option("--n", n, "individuals");
    cmd->add_option("--t", t, "periods");
  }

  DgpConfig build() const {
    DgpConfig config;
    config.variant = static_cast<DgpVariant>(dgp - 1);
    config.theta0 = theta0;
    if (drift_l != 0.0 || drift_tau != 0.0)
      config.drift = Drift{drift_l, drift_tau};
    config.sigma_c_sq = sigma_c_sq;
    config.sigma_mu_sq = sigma_mu_sq;
    config.sigma1_sq_dgp1 = sigma1_sq;
    config.g = g;
    config.n_individuals = n;
    config.n_periods = t;
    const auto cells = split_list(sigma_sq);
    for (const auto& cell : cells)
      config.sigma_sq.push_back(parse_double(cell));
    if (config.sigma_sq.size() == 1)
      config.sigma_sq.assign(t - 1, config.sigma_sq.front());
    return config;
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Moment-based identification robust inference for the panel "
               "AR(1) model"};
  app.require_subcommand(1);

  unsigned threads_flag = 0;
  app.add_option("--threads", threads_flag,
                 "worker threads (default: PANELID_THREADS or all cores)");

  std::string output = "-";
  std::string input;
  std::uint64_t seed = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "simulate a panel and write CSV");
  DgpFlags gen_dgp;
  gen_dgp.attach(gen);
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--output,-o", output, "output path or - for stdout");

  // test
  auto* test = app.add_subcommand("test", "one statistic at one theta*");
  std::string moments = "sys", stat = "klm";
  double theta_star = 0.5, alpha = 0.05;
  test->add_option("--moments", moments, "dif|lev|nl|as|sys")->required();
  test->add_option("--stat", stat, "ar|klm|robar");
  test->add_option("--theta-star", theta_star, "hypothesized value")
      ->required();
  test->add_option("--alpha", alpha, "significance level");
  test->add_option("--input,-i", input, "panel CSV")->required();
  test->add_option("--output,-o", output, "output path or - for stdout");

  // confset
  auto* confset = app.add_subcommand("confset", "grid-inverted confidence set");
  std::string grid_text = "-0.5:1.5:0.001";
  confset->add_option("--moments", moments, "dif|lev|nl|as|sys")->required();
  confset->add_option("--stat", stat, "ar|klm|robar");
  confset->add_option("--alpha", alpha, "significance level");
  confset->add_option("--grid", grid_text, "theta* grid lo:hi:step");
  confset->add_option("--input,-i", input, "panel CSV")->required();
  confset->add_option("--output,-o", output, "output path or - for stdout");

  // power
  auto* power = app.add_subcommand("power", "rejection frequencies over theta0");
  DgpFlags power_dgp;
  power_dgp.attach(power, /*with_theta0=*/false);
  std::string moments_list = "sys", theta0_range = "0:0.99:0.03";
  int reps = 5000;
  power->add_option("--moments", moments_list, "comma list of moment sets");
  power->add_option("--stat", stat, "ar|klm|robar");
  power->add_option("--theta0", theta0_range, "sweep lo:hi:step")->required();
  power->add_option("--theta-star", theta_star, "hypothesized value");
  power->add_option("--alpha", alpha, "significance level");
  power->add_option("--reps", reps, "replications");
  power->add_option("--seed", seed, "base seed");
  power->add_option("--output,-o", output, "output path or - for stdout");

  // localpower
  auto* localpower =
      app.add_subcommand("localpower", "local-to-unity sweep over e");
  DgpFlags local_dgp;
  local_dgp.theta0 = 0.99;
  local_dgp.sigma_c_sq = 10.0;
  local_dgp.n = 2000;
  local_dgp.t = 4;
  local_dgp.attach(localpower);
  std::string e_range = "-6:2:0.5";
  localpower->add_option("--e-grid", e_range, "sweep of e, lo:hi:step");
  localpower->add_option("--alpha", alpha, "significance level");
  localpower->add_option("--reps", reps, "replications");
  localpower->add_option("--seed", seed, "base seed");
  localpower->add_option("--output,-o", output, "output path or - for stdout");

  // reproduce
  auto* reproduce_cmd =
      app.add_subcommand("reproduce", "panel1|panel2|panel3|fig4|panel5");
  std::string target = "panel1";
  int reproduce_reps = 0;
  reproduce_cmd->add_option("--target", target, "experiment name")->required();
  reproduce_cmd->add_option("--reps", reproduce_reps,
                            "replications (0 = target default)");
  reproduce_cmd->add_option("--seed", seed, "base seed");
  reproduce_cmd->add_option("--output,-o", output,
                            "output path or - for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const unsigned threads =
      threads_flag > 0 ? threads_flag : threads_from_env();

  if (gen->parsed()) {
    const PanelData panel = generate_panel(gen_dgp.build(), seed);
    write_text(output, panel_to_csv(panel));
    return 0;
  }

  if (test->parsed()) {
    const PanelData panel = read_panel_csv(input);
    const MomentSet set = moment_set_from_string(moments);
    const StatKind kind = stat_kind_from_string(stat);
    TestOutcome outcome;
    switch (kind) {
      case StatKind::GmmAr:
        outcome = gmm_ar(set, panel, theta_star, alpha);
        break;
      case StatKind::Klm:
        outcome = klm(set, panel, theta_star, alpha);
        break;
      case StatKind::RobustAr:
        outcome = robust_gmm_ar(set, static_cast<int>(panel.n_periods()),
                                panel, theta_star, alpha);
        break;
      case StatKind::OptimalAr:
        throw config_error("use 'localpower' for the optimal weighted AR");
    }
    write_text(output, to_json(outcome, set));
    return 0;
  }

  if (confset->parsed()) {
    const PanelData panel = read_panel_csv(input);
    const MomentSet set = moment_set_from_string(moments);
    const StatKind kind = stat_kind_from_string(stat);
    const auto sweep = parse_range(grid_text);
    const ThetaGrid grid{sweep.front(), sweep.back(),
                         sweep.size() > 1 ? sweep[1] - sweep[0] : 1.0};
    const ConfidenceSet cs =
        invert_test(make_evaluator(kind, set, panel), grid, alpha, threads);
    write_text(output, to_json(cs));
    return 0;
  }

  if (power->parsed()) {
    ExperimentSpec spec;
    spec.dgp = power_dgp.build();
    spec.theta0_grid = parse_range(theta0_range);
    for (const auto& name : split_list(moments_list))
      spec.tests.push_back(
          {stat_kind_from_string(stat), moment_set_from_string(name)});
    spec.theta_star = theta_star;
    spec.alpha = alpha;
    spec.replications = reps;
    spec.base_seed = seed;
    spec.threads = threads;
    write_text(output, to_csv(power_curve(spec)));
    return 0;
  }

  if (localpower->parsed()) {
    ExperimentSpec spec;
    spec.dgp = local_dgp.build();
    spec.e_grid = parse_range(e_range);
    spec.tests = {{StatKind::Klm, MomentSet::AS},
                  {StatKind::Klm, MomentSet::Sys},
                  {StatKind::OptimalAr, MomentSet::Sys}};
    spec.alpha = alpha;
    spec.replications = reps;
    spec.base_seed = seed;
    spec.threads = threads;
    write_text(output, to_csv(local_power_curve(spec)));
    return 0;
  }

  if (reproduce_cmd->parsed()) {
    const std::string csv = panelid::reproduce(
        reproduce_target_from_string(target), reproduce_reps, seed, threads);
    write_text(output, csv);
    return 0;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const degeneracy_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const experiment_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const error& e) {
    // domain, config and dimension problems are user input errors
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

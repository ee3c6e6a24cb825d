#include "panelid/reproduce.hpp"

#include <algorithm>

#include "panelid/inference.hpp"
#include "panelid/io.hpp"
#include "panelid/montecarlo.hpp"
#include "panelid/rng.hpp"

namespace panelid {

ReproduceTarget reproduce_target_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "panel1") return ReproduceTarget::Panel1;
  if (s == "panel2") return ReproduceTarget::Panel2;
  if (s == "panel3") return ReproduceTarget::Panel3;
  if (s == "fig4") return ReproduceTarget::Fig4;
  if (s == "panel5") return ReproduceTarget::Panel5;
  throw config_error("unknown reproduce target '" + name + "'");
}

namespace {

DgpConfig base_dgp(int n, int t, double theta0, double sigma_c_sq) {
  DgpConfig dgp;
  dgp.variant = DgpVariant::Dgp1;
  dgp.theta0 = theta0;
  dgp.sigma_c_sq = sigma_c_sq;
  dgp.sigma1_sq_dgp1 = 1.0;
  dgp.sigma_sq.assign(t - 1, 1.0);
  dgp.n_individuals = n;
  dgp.n_periods = t;
  return dgp;
}

std::vector<double> theta0_sweep() {
  std::vector<double> grid;
  for (double v = 0.0; v < 0.901; v += 0.05) grid.push_back(v);
  grid.insert(grid.end(), {0.925, 0.95, 0.975, 0.99});
  return grid;
}

std::vector<double> e_sweep() {
  std::vector<double> grid;
  for (double v = -6.0; v <= 2.01; v += 0.5) grid.push_back(v);
  return grid;
}

std::string klm_power_panel(int t, int reps, std::uint64_t seed,
                            unsigned threads) {
  const double sigma_c_values[] = {0.0, 0.5, 1.0, 2.0};
  std::vector<MomentSet> sets = {MomentSet::Dif, MomentSet::Lev,
                                 MomentSet::Sys};
  if (t >= 4) sets.push_back(MomentSet::AS);

  PowerTable combined;
  int cell = 0;
  for (const double sc : sigma_c_values) {
    ExperimentSpec spec;
    spec.dgp = base_dgp(250, t, 0.5, sc);
    spec.theta0_grid = theta0_sweep();
    for (const MomentSet set : sets)
      spec.tests.push_back({StatKind::Klm, set});
    spec.theta_star = 0.5;
    spec.alpha = 0.05;
    spec.replications = reps;
    spec.base_seed = replication_seed(seed, cell++);
    spec.threads = threads;
    const PowerTable part = power_curve(spec);
    const std::string suffix = "-sc" + format_number(sc);
    for (PowerRow row : part.rows) {
      row.test_label += suffix;
      combined.rows.push_back(std::move(row));
    }
  }
  return to_csv(combined);
}

std::string pvalue_panel(std::uint64_t seed, unsigned threads) {
  struct Cell {
    int t;
    double sigma_c_sq;
  };
  const Cell cells[] = {{3, 0.0}, {3, 0.5}, {4, 0.0}, {4, 0.5}};
  const ThetaGrid grid{-0.5, 1.5, 0.001};

  std::string out = "cell,theta,test_label,one_minus_p\n";
  int cell_index = 0;
  for (const Cell& cell : cells) {
    const DgpConfig dgp = base_dgp(250, cell.t, 0.95, cell.sigma_c_sq);
    const PanelData panel =
        generate_panel(dgp, replication_seed(seed, cell_index));
    const std::string cell_label =
        "T" + std::to_string(cell.t) + "-sc" + format_number(cell.sigma_c_sq);
    std::vector<MomentSet> sets = {MomentSet::Dif, MomentSet::Lev,
                                   MomentSet::Sys};
    if (cell.t >= 4) sets.push_back(MomentSet::AS);
    for (const MomentSet set : sets) {
      const auto curve =
          pvalue_curve(make_evaluator(StatKind::Klm, set, panel), grid,
                       threads);
      const std::string label = "klm-" + to_string(set);
      for (const auto& [theta, one_minus_p] : curve)
        out += cell_label + "," + format_number(theta) + "," + label + "," +
               format_number(one_minus_p) + "\n";
    }
    ++cell_index;
  }
  return out;
}

std::string local_panel(bool include_klm, int reps, std::uint64_t seed,
                        unsigned threads) {
  PowerTable combined;
  int cell = 0;
  for (const int t : {4, 5}) {
    ExperimentSpec spec;
    spec.dgp = base_dgp(2000, t, 0.99, 10.0);
    spec.e_grid = e_sweep();
    if (include_klm) {
      spec.tests.push_back({StatKind::Klm, MomentSet::AS});
      spec.tests.push_back({StatKind::Klm, MomentSet::Sys});
      spec.tests.push_back({StatKind::OptimalAr, MomentSet::Sys});
    } else {
      spec.tests.push_back({StatKind::OptimalAr, MomentSet::Sys});
      spec.tests.push_back({StatKind::OptimalAr, MomentSet::AS});
    }
    spec.alpha = 0.05;
    spec.replications = reps;
    spec.base_seed = replication_seed(seed, cell++);
    spec.threads = threads;
    const PowerTable part = local_power_curve(spec);
    const std::string suffix = "-T" + std::to_string(t);
    for (PowerRow row : part.rows) {
      row.test_label += suffix;
      combined.rows.push_back(std::move(row));
    }
  }
  return to_csv(combined);
}

}  // namespace

std::string reproduce(ReproduceTarget target, int reps, std::uint64_t seed,
                      unsigned threads) {
  switch (target) {
    case ReproduceTarget::Panel1:
      return klm_power_panel(3, reps > 0 ? reps : 5000, seed, threads);
    case ReproduceTarget::Panel2:
      return klm_power_panel(4, reps > 0 ? reps : 5000, seed, threads);
    case ReproduceTarget::Panel3:
      return pvalue_panel(seed, threads);
    case ReproduceTarget::Fig4:
      return local_panel(false, reps > 0 ? reps : 2000, seed, threads);
    case ReproduceTarget::Panel5:
      return local_panel(true, reps > 0 ? reps : 2000, seed, threads);
  }
  throw config_error("unknown reproduce target");
}

}  // namespace panelid

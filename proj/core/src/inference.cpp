#include "panelid/inference.hpp"

#include <cmath>
#include <map>
#include <memory>

#include "panelid/distributions.hpp"
#include "panelid/parallel.hpp"
#include "panelid/robust.hpp"

namespace panelid {

int ThetaGrid::size() const {
  if (!(lo < hi)) throw domain_error("theta grid needs lo < hi");
  if (!(step > 0)) throw domain_error("theta grid needs step > 0");
  const double count = (hi - lo) / step;
  if (count > 1e7) throw domain_error("theta grid exceeds 1e7 points");
  return static_cast<int>(std::floor(count + 1e-9)) + 1;
}

std::string to_string(SetShape shape) {
  switch (shape) {
    case SetShape::BoundedConvex:    return "bounded-convex";
    case SetShape::UnboundedConvex:  return "unbounded-convex";
    case SetShape::UnboundedDisjoint: return "unbounded-disjoint";
    case SetShape::BoundedDisjoint:  return "bounded-disjoint";
    case SetShape::Empty:            return "empty";
  }
  return "?";
}

namespace {

std::vector<GridStat> evaluate_grid(const TestEvaluator& evaluator,
                                    const ThetaGrid& grid, unsigned threads) {
  const int n = grid.size();
  std::vector<GridStat> stats(n);
  parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t i) {
    try {
      stats[i] = evaluator(grid.point(static_cast<int>(i)));
    } catch (const error&) {
      stats[i].failed = true;
    }
  });
  return stats;
}

}  // namespace

ConfidenceSet invert_test(const TestEvaluator& evaluator,
                          const ThetaGrid& grid, double alpha,
                          unsigned threads) {
  const auto stats = evaluate_grid(evaluator, grid, threads);
  const int n = static_cast<int>(stats.size());

  std::map<int, double> critical;  // per dof
  std::vector<bool> accepted(n, false);
  int n_failed = 0;
  bool any_ok = false;
  for (int i = 0; i < n; ++i) {
    if (stats[i].failed) {
      ++n_failed;
      continue;
    }
    any_ok = true;
    auto it = critical.find(stats[i].dof);
    if (it == critical.end())
      it = critical.emplace(stats[i].dof,
                            chi2_quantile(1.0 - alpha, stats[i].dof)).first;
    accepted[i] = stats[i].statistic <= it->second;
  }
  if (!any_ok)
    throw experiment_error("invert_test: evaluator failed at every grid point");

  ConfidenceSet cs;
  cs.alpha = alpha;
  cs.grid = grid;
  cs.n_failed_points = n_failed;
  bool touches_edge = false;
  for (int i = 0; i < n;) {
    if (!accepted[i]) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && accepted[j + 1]) ++j;
    cs.intervals.emplace_back(grid.point(i), grid.point(j));
    if (i == 0 || j == n - 1) touches_edge = true;
    i = j + 1;
  }

  if (cs.intervals.empty())
    cs.shape = SetShape::Empty;
  else if (touches_edge)
    cs.shape = cs.intervals.size() > 1 ? SetShape::UnboundedDisjoint
                                       : SetShape::UnboundedConvex;
  else
    cs.shape = cs.intervals.size() > 1 ? SetShape::BoundedDisjoint
                                       : SetShape::BoundedConvex;
  return cs;
}

std::vector<std::pair<double, double>> pvalue_curve(
    const TestEvaluator& evaluator, const ThetaGrid& grid, unsigned threads) {
  const auto stats = evaluate_grid(evaluator, grid, threads);
  bool any_ok = false;
  std::vector<std::pair<double, double>> curve(stats.size());
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const double theta = grid.point(static_cast<int>(i));
    if (stats[i].failed) {
      curve[i] = {theta, 1.0};
      continue;
    }
    any_ok = true;
    curve[i] = {theta, chi2_cdf(stats[i].statistic, stats[i].dof)};
  }
  if (!any_ok)
    throw experiment_error("pvalue_curve: evaluator failed at every point");
  return curve;
}

TestEvaluator make_evaluator(StatKind kind, MomentSet set,
                             const PanelData& panel, double alpha) {
  const int t = static_cast<int>(panel.n_periods());
  switch (kind) {
    case StatKind::GmmAr:
      return [set, &panel, alpha](double theta) {
        const TestOutcome out = gmm_ar(set, panel, theta, alpha);
        return GridStat{out.statistic, out.dof, false};
      };
    case StatKind::Klm:
      return [set, &panel, alpha](double theta) {
        const TestOutcome out = klm(set, panel, theta, alpha);
        return GridStat{out.statistic, out.dof, false};
      };
    case StatKind::RobustAr: {
      auto quad = std::make_shared<RobustQuad>(robust_quad(set, t, panel));
      return [quad, alpha](double theta) {
        const TestOutcome out = robust_gmm_ar(*quad, theta, alpha);
        return GridStat{out.statistic, out.dof, false};
      };
    }
    case StatKind::OptimalAr:
      throw config_error(
          "the optimal weighted AR statistic needs a local-to-unity design; "
          "it has no plain theta* evaluator");
  }
  throw config_error("unknown statistic kind");
}

CueResult cue_minimize(MomentSet set, const PanelData& panel,
                       const ThetaGrid& grid, int refine_levels,
                       unsigned threads) {
  auto objective = make_evaluator(StatKind::GmmAr, set, panel);

  auto argmin_on = [&](const ThetaGrid& g, bool* found) {
    const auto stats = evaluate_grid(objective, g, threads);
    int best = -1;
    for (int i = 0; i < static_cast<int>(stats.size()); ++i) {
      if (stats[i].failed) continue;
      if (best < 0 || stats[i].statistic < stats[best].statistic) best = i;
    }
    *found = best >= 0;
    return best;
  };

  bool found = false;
  int best = argmin_on(grid, &found);
  if (!found)
    throw experiment_error("cue_minimize: objective failed on the whole grid");

  CueResult result;
  result.at_boundary = best == 0 || best == grid.size() - 1;
  double center = grid.point(best);
  double step = grid.step;
  for (int level = 0; level < refine_levels; ++level) {
    ThetaGrid local;
    local.lo = center - step;
    local.hi = center + step;
    local.step = step / 10.0;
    bool ok = false;
    const int idx = argmin_on(local, &ok);
    if (!ok) break;
    center = local.point(idx);
    step = local.step;
  }
  result.theta = center;
  return result;
}

}  // namespace panelid

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "panelid/panel.hpp"
#include "panelid/statistics.hpp"

namespace panelid {

// Uniform grid of hypothesized values; point(i) = lo + i * step.
struct ThetaGrid {
  double lo = -0.5;
  double hi = 1.5;
  double step = 0.001;

  int size() const;
  double point(int i) const { return lo + i * step; }
};

// Shape taxonomy of a grid-inverted confidence set. "unbounded" means an
// interval touches the grid window edge; "disjoint" means more than one
// interval. A bounded set of several intervals, possible with quadratic
// moment conditions, keeps its own label.
enum class SetShape {
  BoundedConvex,
  UnboundedConvex,
  UnboundedDisjoint,
  BoundedDisjoint,
  Empty
};

std::string to_string(SetShape shape);

struct ConfidenceSet {
  double alpha = 0.05;
  std::vector<std::pair<double, double>> intervals;
  SetShape shape = SetShape::Empty;
  ThetaGrid grid;
  int n_failed_points = 0;  // evaluator errors, counted as rejections
};

// Statistic value at one grid point; failed evaluations are flagged and
// treated as rejections rather than aborting the inversion.
struct GridStat {
  double statistic = 0.0;
  int dof = 1;
  bool failed = false;
};

using TestEvaluator = std::function<GridStat(double theta_star)>;

// Collects the grid points where the statistic stays at or below the
// (1-alpha) chi-squared quantile and merges runs into intervals.
ConfidenceSet invert_test(const TestEvaluator& evaluator,
                          const ThetaGrid& grid, double alpha,
                          unsigned threads = 0);

// (theta, 1 - p) along the grid; crossings of the 1 - alpha line delimit
// the confidence set. Failed points get 1 - p = 1.
std::vector<std::pair<double, double>> pvalue_curve(
    const TestEvaluator& evaluator, const ThetaGrid& grid,
    unsigned threads = 0);

// Evaluators for the built-in statistics.
TestEvaluator make_evaluator(StatKind kind, MomentSet set,
                             const PanelData& panel, double alpha = 0.05);

struct CueResult {
  double theta = 0.0;
  bool at_boundary = false;
};

// Continuous updating estimate: coarse grid argmin of GMM-AR followed by
// `refine_levels` rounds of 10x local refinement.
CueResult cue_minimize(MomentSet set, const PanelData& panel,
                       const ThetaGrid& grid, int refine_levels,
                       unsigned threads = 0);

}  // namespace panelid

#pragma once

#include <cstdint>
#include <string>

namespace panelid {

// Canned experiments behind `panelid reproduce`:
//   panel1     KLM power curves over theta0, T=3, N=250, Dif/Lev/Sys,
//              sigma_c^2 in {0, 0.5, 1, 2}, H0: theta = 0.5
//   panel2     same with T=4 and AS added
//   panel3     one-minus-p-value curves for one simulated dataset per
//              (T, sigma_c^2) cell, theta0 = 0.95, N=250
//   fig4       optimal weighted robust AR over an e grid, AS and Sys,
//              T in {4,5}, theta0 = 0.99, sigma_c^2 = 10, N = 2000
//   panel5     KLM-AS, KLM-Sys and the optimal robust AR on the same design
enum class ReproduceTarget { Panel1, Panel2, Panel3, Fig4, Panel5 };

ReproduceTarget reproduce_target_from_string(const std::string& name);

// Plot-ready CSV for one target. reps = 0 picks the target's default
// (5000 for panel1/panel2, 2000 for fig4/panel5; panel3 uses one dataset
// per cell). Output is a pure function of (target, reps, seed).
std::string reproduce(ReproduceTarget target, int reps, std::uint64_t seed,
                      unsigned threads);

}  // namespace panelid

#pragma once

#include <iosfwd>
#include <string>

#include "panelid/inference.hpp"
#include "panelid/montecarlo.hpp"
#include "panelid/panel.hpp"

namespace panelid {

// Numbers in emitted files carry 10 significant digits.
std::string format_number(double value);

// One individual per row, T comma-separated values. An optional single
// header row is detected by a non-numeric first cell and skipped.
PanelData read_panel_csv(const std::string& path);
PanelData parse_panel_csv(std::istream& in, const std::string& origin);

std::string panel_to_csv(const PanelData& panel);

// {"kind","moments","theta_star","statistic","dof","p_value","alpha","reject"}
std::string to_json(const TestOutcome& outcome, MomentSet set);

// {"alpha","shape","intervals":[[lo,hi],...],"grid":{"lo","hi","step"}}
std::string to_json(const ConfidenceSet& set);

// Header: sweep_value,test_label,rejection_frequency,mc_se
std::string to_csv(const PowerTable& table);

// Writes text to a file, or to stdout when path is "-".
void write_text(const std::string& path, const std::string& text);

}  // namespace panelid

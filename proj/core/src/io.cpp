#include "panelid/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace panelid {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

namespace {

bool parse_cell(const std::string& cell, double* out) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  *out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
  return *end == '\0';
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

PanelData parse_panel_csv(std::istream& in, const std::string& origin) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  bool may_skip_header = true;  // at most one leading header row
  std::size_t width = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split_line(line);
    std::vector<double> row(cells.size());
    bool numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], &row[c])) {
        numeric = false;
        bad_col = c;
        break;
      }
    }
    if (!numeric) {
      if (may_skip_header) {
        may_skip_header = false;
        continue;
      }
      throw io_error(origin + ": non-numeric cell at row " +
                     std::to_string(line_no) + ", column " +
                     std::to_string(bad_col + 1));
    }
    may_skip_header = false;
    if (width == 0)
      width = row.size();
    else if (row.size() != width)
      throw io_error(origin + ": row " + std::to_string(line_no) + " has " +
                     std::to_string(row.size()) + " cells, expected " +
                     std::to_string(width));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw io_error(origin + ": no data rows");
  if (width < 3)
    throw dimension_error(origin + ": panels need T >= 3 periods, got T = " +
                          std::to_string(width));
  Eigen::MatrixXd values(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rows[i][j];
  return PanelData(std::move(values));
}

PanelData read_panel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  return parse_panel_csv(in, path);
}

std::string panel_to_csv(const PanelData& panel) {
  std::string out;
  for (Eigen::Index i = 0; i < panel.n_individuals(); ++i) {
    for (Eigen::Index j = 0; j < panel.n_periods(); ++j) {
      if (j > 0) out += ',';
      out += format_number(panel.values()(i, j));
    }
    out += '\n';
  }
  return out;
}

std::string to_json(const TestOutcome& outcome, MomentSet set) {
  std::string out = "{";
  out += "\"kind\":\"" + to_string(outcome.kind) + "\",";
  out += "\"moments\":\"" + to_string(set) + "\",";
  out += "\"theta_star\":" + format_number(outcome.theta_star) + ",";
  out += "\"statistic\":" + format_number(outcome.statistic) + ",";
  out += "\"dof\":" + std::to_string(outcome.dof) + ",";
  out += "\"p_value\":" + format_number(outcome.p_value) + ",";
  out += "\"alpha\":" + format_number(outcome.alpha) + ",";
  out += std::string("\"reject\":") + (outcome.reject ? "true" : "false");
  out += "}\n";
  return out;
}

std::string to_json(const ConfidenceSet& set) {
  std::string out = "{";
  out += "\"alpha\":" + format_number(set.alpha) + ",";
  out += "\"shape\":\"" + to_string(set.shape) + "\",";
  out += "\"intervals\":[";
  for (std::size_t i = 0; i < set.intervals.size(); ++i) {
    if (i > 0) out += ',';
    out += "[" + format_number(set.intervals[i].first) + "," +
           format_number(set.intervals[i].second) + "]";
  }
  out += "],";
  out += "\"grid\":{\"lo\":" + format_number(set.grid.lo) +
         ",\"hi\":" + format_number(set.grid.hi) +
         ",\"step\":" + format_number(set.grid.step) + "}";
  out += "}\n";
  return out;
}

std::string to_csv(const PowerTable& table) {
  std::string out = "sweep_value,test_label,rejection_frequency,mc_se\n";
  for (const PowerRow& row : table.rows) {
    out += format_number(row.sweep_value) + "," + row.test_label + "," +
           format_number(row.rejection_frequency) + "," +
           format_number(row.mc_se) + "\n";
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw io_error("failed writing to '" + path + "'");
}

}  // namespace panelid

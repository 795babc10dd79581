#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace zicount {

struct ResultRow {
  std::string condition;
  double beta1 = 0.0;
  double gamma1 = 0.0;
  std::size_t n = 0;
  double zero_rate = 0.0;
  std::string test_name;
  double rejection_rate = 0.0;
  std::size_t failures = 0;
  std::size_t replications = 0;
};

/// Parses results.csv text. Throws InputError naming any missing column, and
/// when no data rows are present.
std::vector<ResultRow> parse_results_csv(const std::string& text);

/// One SVG document per condition: a small-multiples grid of 720x480 panels
/// (columns by n, rows by beta1), x = zero rate, y = rejection rate, one
/// polyline per test. The C4 figure adds a dashed reference line at 0.05.
std::map<std::string, std::string> render_condition_figures(
    const std::vector<ResultRow>& rows);

/// Renders and writes condition_<C>.svg files under out_dir; returns the
/// paths written.
std::vector<std::string> write_figures(const std::vector<ResultRow>& rows,
                                       const std::string& out_dir);

}  // namespace zicount

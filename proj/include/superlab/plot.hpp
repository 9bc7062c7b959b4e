#pragma once

#include <ostream>
#include <string>
#include <vector>

// Deterministic text outputs: CSV tables and static SVG line plots.
namespace superlab::plot {

/// printf %.{digits}g with -0 printed as 0 and non-finite values as nan/inf/-inf.
std::string format_number(double v, int digits);

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;  // column-major, equal lengths

  void add_column(std::string name, std::vector<double> values);
  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Header row then one row per sample; every line ends with '\n'.
void write_csv(std::ostream& out, const Table& table, int digits);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-finite values break the polyline
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Fixed 720x450 viewport, axes box with end-point tick labels, one polyline per
/// series in a fixed palette, legend in series order.
void write_svg(std::ostream& out, const Figure& figure);

}  // namespace superlab::plot

#include "superlab/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace superlab::plot {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string coord(double v) { return format_number(std::round(v * 100.0) / 100.0, 8); }

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
};

}  // namespace

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

void Table::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != columns.front().size()) {
    throw std::invalid_argument("Table: column '" + name + "' has a different length");
  }
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

void write_csv(std::ostream& out, const Table& table, int digits) {
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_number(table.columns[c][r], digits);
    }
    out << '\n';
  }
}

void write_svg(std::ostream& out, const Figure& figure) {
  Range xr, yr;
  for (const auto& s : figure.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (std::isfinite(s.x[i]) && std::isfinite(s.y[i])) {
        xr.add(s.x[i]);
        yr.add(s.y[i]);
      }
    }
  }
  xr.finish();
  yr.finish();
  const double pad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= pad;
  yr.hi += pad;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << escape(figure.title) << "</text>\n";
  out << "<rect x=\"" << coord(kLeft) << "\" y=\"" << coord(kTop) << "\" width=\"" << coord(plot_w) << "\" height=\""
      << coord(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // End-point tick labels.
  const double base = kTop + plot_h;
  out << "<text x=\"" << coord(kLeft) << "\" y=\"" << coord(base + 16) << "\" text-anchor=\"middle\">"
      << format_number(xr.lo, 4) << "</text>\n";
  out << "<text x=\"" << coord(kLeft + plot_w) << "\" y=\"" << coord(base + 16) << "\" text-anchor=\"middle\">"
      << format_number(xr.hi, 4) << "</text>\n";
  out << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(base) << "\" text-anchor=\"end\">"
      << format_number(yr.lo, 4) << "</text>\n";
  out << "<text x=\"" << coord(kLeft - 6) << "\" y=\"" << coord(kTop + 4) << "\" text-anchor=\"end\">"
      << format_number(yr.hi, 4) << "</text>\n";
  if (yr.lo < 0.0 && yr.hi > 0.0) {
    out << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(py(0.0)) << "\" x2=\"" << coord(kLeft + plot_w)
        << "\" y2=\"" << coord(py(0.0)) << "\" stroke=\"#cccccc\"/>\n";
  }
  out << "<text x=\"" << coord(kLeft + plot_w / 2) << "\" y=\"" << coord(kHeight - 16)
      << "\" text-anchor=\"middle\">" << escape(figure.x_label) << "</text>\n";
  out << "<text x=\"20\" y=\"" << coord(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
      << coord(kTop + plot_h / 2) << ")\">" << escape(figure.y_label) << "</text>\n";

  for (std::size_t k = 0; k < figure.series.size(); ++k) {
    const auto& s = figure.series[k];
    const char* color = kPalette[k % kPalette.size()];
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"" << points
            << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += coord(px(s.x[i])) + ',' + coord(py(s.y[i]));
    }
    flush();

    const double ly = kTop + 16.0 * k + 8.0;
    const double lx = kLeft + plot_w + 12.0;
    out << "<line x1=\"" << coord(lx) << "\" y1=\"" << coord(ly) << "\" x2=\"" << coord(lx + 20) << "\" y2=\""
        << coord(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << coord(lx + 26) << "\" y=\"" << coord(ly + 4) << "\">" << escape(s.label) << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace superlab::plot

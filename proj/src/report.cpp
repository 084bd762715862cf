#include "redplan/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "redplan/errors.hpp"

namespace redplan {

std::string format_real(double value) { return fmt::format("{}", value); }

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header_.size()) {
    throw InvalidArgument(
        fmt::format("CSV row has {} fields, header has {}", row.size(), header_.size()));
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::header_line() const { return fmt::format("{}\n", fmt::join(header_, ",")); }

std::string CsvTable::to_string() const {
  std::string out = header_line();
  for (const auto& row : rows_) {
    out += fmt::format("{}\n", fmt::join(row, ","));
  }
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InvalidArgument(fmt::format("cannot write {}", path.string()));
  }
  out << to_string();
}

void CsvTable::append(const std::filesystem::path& path) const {
  std::error_code ec;
  const bool fresh = !std::filesystem::exists(path, ec) || std::filesystem::file_size(path, ec) == 0;
  if (!fresh) {
    std::ifstream in(path, std::ios::binary);
    std::string first;
    std::getline(in, first);
    if (first + "\n" != header_line()) {
      throw InvalidArgument(fmt::format("{} has a different CSV header; refusing to append",
                                        path.string()));
    }
  }
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) {
    throw InvalidArgument(fmt::format("cannot write {}", path.string()));
  }
  if (fresh) {
    out << header_line();
  }
  for (const auto& row : rows_) {
    out << fmt::format("{}\n", fmt::join(row, ","));
  }
}

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 55;

constexpr std::string_view kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                         "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape_xml(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      return m * mag;
    }
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels) {
  double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!(x_lo <= x_hi)) {
    x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  }
  if (x_hi == x_lo) {
    x_lo -= 1, x_hi += 1;
  }
  y_lo = std::min(0.0, y_lo);
  if (y_hi == y_lo) {
    y_hi = y_lo + 1;
  }
  const double y_step = nice_step(y_hi - y_lo, 5);
  y_hi = std::ceil(y_hi / y_step) * y_step;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y_lo) / (y_hi - y_lo)) * plot_h; };

  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"12\">\n",
      kWidth, kHeight);
  svg << fmt::format("<rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n", kWidth, kHeight);
  svg << fmt::format("<text x=\"{}\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                     kLeft + plot_w / 2, escape_xml(labels.title));
  svg << fmt::format(
      "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
      kLeft, kTop, plot_w, plot_h);

  // x ticks at the distinct x values of the data (batch counts are sparse).
  std::vector<double> xs;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      xs.push_back(x);
    }
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (double x : xs) {
    svg << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"black\"/>"
        "<text x=\"{0:.2f}\" y=\"{3:.2f}\" text-anchor=\"middle\">{4}</text>\n",
        px(x), kTop + plot_h, kTop + plot_h + 5, kTop + plot_h + 18, format_real(x));
  }
  for (double y = y_lo; y <= y_hi + y_step * 1e-9; y += y_step) {
    svg << fmt::format(
        "<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#ddd\"/>"
        "<text x=\"{3:.2f}\" y=\"{4:.2f}\" text-anchor=\"end\">{5:.4g}</text>\n",
        kLeft, py(y), kLeft + plot_w, kLeft - 6, py(y) + 4, y);
  }
  svg << fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 15, escape_xml(labels.x_axis));
  svg << fmt::format(
      "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
      kTop + plot_h / 2, escape_xml(labels.y_axis));

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto colour = kPalette[i % std::size(kPalette)];
    std::string points;
    for (auto [x, y] : series[i].points) {
      points += fmt::format("{:.2f},{:.2f} ", px(x), py(y));
    }
    svg << fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>\n",
                       colour, points);
    for (auto [x, y] : series[i].points) {
      svg << fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"3\" fill=\"{}\"/>\n", px(x),
                         py(y), colour);
    }
    const double ly = kTop + 10 + 18 * static_cast<double>(i);
    svg << fmt::format(
        "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/>"
        "<text x=\"{4}\" y=\"{5}\">{6}</text>\n",
        kLeft + plot_w + 12, ly, kLeft + plot_w + 32, colour, kLeft + plot_w + 38, ly + 4,
        escape_xml(series[i].label));
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace redplan

#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace redplan {

// Shortest decimal form that round-trips; always '.' as the separator.
std::string format_real(double value);

// Fixed-column CSV table. Rows must match the header width.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(std::vector<std::string> row);

  const std::vector<std::string>& header() const noexcept { return header_; }
  std::size_t num_rows() const noexcept { return rows_.size(); }

  std::string header_line() const;
  std::string to_string() const;  // header plus rows, '\n' terminated

  void write(const std::filesystem::path& path) const;
  // Appends rows, writing the header first only when the file is new or empty.
  // Refuses to append under a different header.
  void append(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

struct ChartSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct ChartLabels {
  std::string title;
  std::string x_axis;
  std::string y_axis;
};

// Minimal static SVG line chart with linear axes.
std::string render_line_chart(const std::vector<ChartSeries>& series, const ChartLabels& labels);

}  // namespace redplan

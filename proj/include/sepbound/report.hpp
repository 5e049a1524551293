#pragma once

// CSV and SVG emission for sweep tables.

#include <filesystem>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sepbound/experiment.hpp"

namespace sepbound {

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// '#'-prefixed metadata lines, a header row, then one record per row.
/// Numbers use 12 significant digits and '.' as decimal separator.
void write_csv(const SweepTable& table, std::ostream& out);
std::string to_csv(const SweepTable& table);

/// One static SVG 1.1 line chart for `column` against the first column,
/// one polyline per series.
std::string render_svg_chart(const SweepTable& table, const std::string& column);

/// Columns that get a chart: everything except the x column and the series
/// column.
std::vector<std::string> chart_columns(const SweepTable& table);

/// Writes the CSV to `csv_path` and, if requested, `<stem>_<column>.svg`
/// next to it. Returns the paths written. Throws IoError naming the path.
std::vector<std::filesystem::path> emit(const SweepTable& table,
                                        const std::filesystem::path& csv_path, bool with_svg);

}  // namespace sepbound

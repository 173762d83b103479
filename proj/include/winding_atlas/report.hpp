#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace watlas {
namespace report {

/// Locale-independent shortest-roundtrip-ish formatting ("%.12g", '.' decimal).
std::string format_double(double v);

/// Current UTC time as an ISO-8601 string.
std::string timestamp_utc();

/// One CSV row; fields are written verbatim, RFC-4180 quoting applied when
/// a field contains a comma, quote, or newline.  LF line endings.
using CsvRow = std::vector<std::string>;
std::string to_csv(const std::vector<CsvRow>& rows);

/// One curve of a line plot.
struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
    bool markers_only = false;
};

struct PlotSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    int width = 720;
    int height = 480;
};

/// Self-contained SVG 1.1 line plot, deterministic for identical input.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace report
}  // namespace watlas

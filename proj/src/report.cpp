#include "winding_atlas/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <limits>
#include <sstream>

namespace watlas {
namespace report {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string timestamp_utc() {
    std::time_t now = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        out.push_back(c);
        if (c == '"') out.push_back('"');
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string to_csv(const std::vector<CsvRow>& rows) {
    std::string out;
    for (const CsvRow& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out.push_back(',');
            out += csv_escape(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out.push_back(c);
        }
    }
    return out;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series) {
    const double margin_l = 64, margin_r = 16, margin_t = 36, margin_b = 48;
    const double pw = spec.width - margin_l - margin_r;
    const double ph = spec.height - margin_t - margin_b;

    double x_min = std::numeric_limits<double>::infinity(), x_max = -x_min;
    double y_min = x_min, y_max = -x_min;
    for (const Series& s : series) {
        for (const auto& [x, y] : s.points) {
            const double xv = spec.log_x ? std::log10(x) : x;
            x_min = std::min(x_min, xv);
            x_max = std::max(x_max, xv);
            y_min = std::min(y_min, y);
            y_max = std::max(y_max, y);
        }
    }
    if (!(x_max > x_min)) { x_min -= 0.5; x_max += 0.5; }
    if (!(y_max > y_min)) { y_min -= 0.5; y_max += 0.5; }
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    const auto px = [&](double x) {
        const double xv = spec.log_x ? std::log10(x) : x;
        return margin_l + pw * (xv - x_min) / (x_max - x_min);
    };
    const auto py = [&](double y) {
        return margin_t + ph * (1.0 - (y - y_min) / (y_max - y_min));
    };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width
        << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << " "
        << spec.height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Axes box and ticks.
    svg << "<rect x=\"" << fmt_coord(margin_l) << "\" y=\"" << fmt_coord(margin_t)
        << "\" width=\"" << fmt_coord(pw) << "\" height=\"" << fmt_coord(ph)
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = x_min + (x_max - x_min) * i / 5.0;
        const double fy = y_min + (y_max - y_min) * i / 5.0;
        const double tx = margin_l + pw * i / 5.0;
        const double ty = margin_t + ph * (1.0 - i / 5.0);
        const double x_value = spec.log_x ? std::pow(10.0, fx) : fx;
        svg << "<line x1=\"" << fmt_coord(tx) << "\" y1=\"" << fmt_coord(margin_t + ph)
            << "\" x2=\"" << fmt_coord(tx) << "\" y2=\"" << fmt_coord(margin_t + ph + 5)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt_coord(tx) << "\" y=\"" << fmt_coord(margin_t + ph + 18)
            << "\" font-size=\"11\" text-anchor=\"middle\">" << format_double(x_value)
            << "</text>\n"
            << "<line x1=\"" << fmt_coord(margin_l - 5) << "\" y1=\"" << fmt_coord(ty)
            << "\" x2=\"" << fmt_coord(margin_l) << "\" y2=\"" << fmt_coord(ty)
            << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << fmt_coord(margin_l - 8) << "\" y=\"" << fmt_coord(ty + 4)
            << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(fy)
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt_coord(margin_l + pw / 2) << "\" y=\"18\" font-size=\"14\" "
        << "text-anchor=\"middle\">" << xml_escape(spec.title) << "</text>\n"
        << "<text x=\"" << fmt_coord(margin_l + pw / 2) << "\" y=\""
        << fmt_coord(spec.height - 10.0) << "\" font-size=\"12\" text-anchor=\"middle\">"
        << xml_escape(spec.x_label) << "</text>\n"
        << "<text x=\"14\" y=\"" << fmt_coord(margin_t + ph / 2)
        << "\" font-size=\"12\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
        << fmt_coord(margin_t + ph / 2) << ")\">" << xml_escape(spec.y_label)
        << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        const char* color = kColors[si % (sizeof(kColors) / sizeof(kColors[0]))];
        if (s.markers_only) {
            for (const auto& [x, y] : s.points)
                svg << "<circle cx=\"" << fmt_coord(px(x)) << "\" cy=\"" << fmt_coord(py(y))
                    << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        } else if (!s.points.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : s.points)
                svg << fmt_coord(px(x)) << "," << fmt_coord(py(y)) << " ";
            svg << "\"/>\n";
        }
        // Legend entry.
        const double ly = margin_t + 16.0 + 16.0 * static_cast<double>(si);
        svg << "<line x1=\"" << fmt_coord(margin_l + 8) << "\" y1=\"" << fmt_coord(ly)
            << "\" x2=\"" << fmt_coord(margin_l + 28) << "\" y2=\"" << fmt_coord(ly)
            << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << fmt_coord(margin_l + 32) << "\" y=\"" << fmt_coord(ly + 4)
            << "\" font-size=\"11\">" << xml_escape(s.label) << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace report
}  // namespace watlas

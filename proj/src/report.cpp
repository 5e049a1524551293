#include "sepbound/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sepbound {
namespace {

std::string fmt(double v, const char* spec = "%.12g") {
    if (v == 0.0) v = 0.0;  // no "-0"
    char buf[40];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
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

// Metadata values are single-line comments.
std::string one_line(std::string s) {
    std::replace(s.begin(), s.end(), '\n', ' ');
    std::replace(s.begin(), s.end(), '\r', ' ');
    return s;
}

struct Axis {
    double lo;
    double hi;
    std::vector<double> ticks;
};

Axis nice_axis(double lo, double hi) {
    if (lo == hi) {
        const double pad = lo == 0.0 ? 1.0 : std::abs(lo) * 0.1;
        lo -= pad;
        hi += pad;
    }
    const double raw = (hi - lo) / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    Axis axis{std::floor(lo / step) * step, std::ceil(hi / step) * step, {}};
    const auto n = static_cast<int>(std::lround((axis.hi - axis.lo) / step));
    for (int i = 0; i <= n; ++i) axis.ticks.push_back(axis.lo + i * step);
    return axis;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace

void write_csv(const SweepTable& table, std::ostream& out) {
    table.check();
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << ": " << one_line(value) << '\n';
    }
    for (std::size_t i = 0; i < table.header.size(); ++i) {
        out << (i ? "," : "") << table.header[i];
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << fmt(row[i]);
        }
        out << '\n';
    }
}

std::string to_csv(const SweepTable& table) {
    std::ostringstream out;
    write_csv(table, out);
    return out.str();
}

std::vector<std::string> chart_columns(const SweepTable& table) {
    std::vector<std::string> out;
    for (std::size_t i = 1; i < table.header.size(); ++i) {
        if (table.header[i] != table.series_column) out.push_back(table.header[i]);
    }
    return out;
}

std::string render_svg_chart(const SweepTable& table, const std::string& column) {
    table.check();
    const std::size_t ycol = table.column(column);
    const bool split = !table.series_column.empty();
    const std::size_t scol = split ? table.column(table.series_column) : 0;

    // series keyed by first appearance
    std::vector<double> keys;
    std::map<double, std::vector<std::pair<double, double>>> series;
    double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
    for (const auto& row : table.rows) {
        const double key = split ? row[scol] : 0.0;
        if (!series.contains(key)) keys.push_back(key);
        series[key].emplace_back(row[0], row[ycol]);
        xmin = std::min(xmin, row[0]);
        xmax = std::max(xmax, row[0]);
        ymin = std::min(ymin, row[ycol]);
        ymax = std::max(ymax, row[ycol]);
    }
    if (table.rows.empty()) xmin = ymin = 0.0, xmax = ymax = 1.0;

    const Axis xa = nice_axis(xmin, xmax);
    const Axis ya = nice_axis(ymin, ymax);
    constexpr double W = 720, H = 440, L = 70, R = 150, Tm = 40, B = 50;
    const double pw = W - L - R, ph = H - Tm - B;
    auto px = [&](double x) { return L + (x - xa.lo) / (xa.hi - xa.lo) * pw; };
    auto py = [&](double y) { return Tm + ph - (y - ya.lo) / (ya.hi - ya.lo) * ph; };

    std::ostringstream s;
    s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << L + pw / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"15\">"
      << escape_xml(column) << "</text>\n";

    s << "<g stroke=\"#cccccc\" stroke-width=\"0.5\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (double t : xa.ticks) {
        s << "<line x1=\"" << fmt(px(t), "%.2f") << "\" y1=\"" << Tm << "\" x2=\"" << fmt(px(t), "%.2f")
          << "\" y2=\"" << Tm + ph << "\"/>"
          << "<text x=\"" << fmt(px(t), "%.2f") << "\" y=\"" << Tm + ph + 16
          << "\" text-anchor=\"middle\" stroke=\"none\" fill=\"black\">" << fmt(t, "%.6g")
          << "</text>\n";
    }
    for (double t : ya.ticks) {
        s << "<line x1=\"" << L << "\" y1=\"" << fmt(py(t), "%.2f") << "\" x2=\"" << L + pw
          << "\" y2=\"" << fmt(py(t), "%.2f") << "\"/>"
          << "<text x=\"" << L - 6 << "\" y=\"" << fmt(py(t) + 4, "%.2f")
          << "\" text-anchor=\"end\" stroke=\"none\" fill=\"black\">" << fmt(t, "%.6g")
          << "</text>\n";
    }
    s << "</g>\n"
      << "<rect x=\"" << L << "\" y=\"" << Tm << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape_xml(table.header[0]) << "</text>\n";

    for (std::size_t k = 0; k < keys.size(); ++k) {
        const char* color = kPalette[k % std::size(kPalette)];
        s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& [x, y] : series[keys[k]]) {
            s << (first ? "" : " ") << fmt(px(x), "%.2f") << ',' << fmt(py(y), "%.2f");
            first = false;
        }
        s << "\"/>\n";
        const double ly = Tm + 14 + 18 * static_cast<double>(k);
        s << "<line x1=\"" << L + pw + 12 << "\" y1=\"" << ly << "\" x2=\"" << L + pw + 32
          << "\" y2=\"" << ly << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>"
          << "<text x=\"" << L + pw + 38 << "\" y=\"" << ly + 4
          << "\" font-family=\"sans-serif\" font-size=\"11\">"
          << escape_xml(split ? table.series_column + "=" + fmt(keys[k], "%.6g") : column)
          << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<std::filesystem::path> emit(const SweepTable& table,
                                        const std::filesystem::path& csv_path, bool with_svg) {
    std::vector<std::filesystem::path> written;
    auto write_file = [&](const std::filesystem::path& path, const std::string& body) {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
        f << body;
        f.close();
        if (!f) throw IoError("failed writing '" + path.string() + "'");
        written.push_back(path);
    };

    write_file(csv_path, to_csv(table));
    if (with_svg) {
        const std::filesystem::path dir = csv_path.parent_path();
        const std::string stem = csv_path.stem().string();
        for (const auto& col : chart_columns(table)) {
            write_file(dir / (stem + "_" + col + ".svg"), render_svg_chart(table, col));
        }
    }
    return written;
}

}  // namespace sepbound

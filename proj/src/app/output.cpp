#include "nlqs/app/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <fstream>
#include <sstream>

#include "nlqs/error.hpp"

namespace nlqs::app {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 500.0;
constexpr double kMarginLeft = 80.0;
constexpr double kMarginRight = 20.0;
constexpr double kMarginTop = 40.0;
constexpr double kMarginBottom = 50.0;
constexpr std::size_t kMaxPolylinePoints = 4000;

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string escape_xml(const std::string& s) {
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

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, sep)) fields.push_back(field);
    if (!line.empty() && line.back() == sep) fields.emplace_back();
    return fields;
}

double parse_field(const std::string& field, int line_no) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || end != field.c_str() + field.size()) {
        throw DomainError("parse_series_csv: line " + std::to_string(line_no) + ": bad number '" + field + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string series_csv(const TimeSeries& series) {
    std::string out = "tau";
    for (const auto& [name, values] : series.columns) {
        if (values.size() != series.tau.size()) throw DomainError("series_csv: column length mismatch");
        out += ',';
        out += observable_name(name);
    }
    out += '\n';
    for (std::size_t k = 0; k < series.tau.size(); ++k) {
        out += format_double(series.tau[k]);
        for (const auto& column : series.columns) {
            out += ',';
            out += format_double(column.second[k]);
        }
        out += '\n';
    }
    return out;
}

TimeSeries parse_series_csv(std::istream& in) {
    TimeSeries ts;
    std::string line;
    if (!std::getline(in, line)) throw DomainError("parse_series_csv: empty input");
    const auto header = split(line, ',');
    if (header.empty() || header[0] != "tau") throw DomainError("parse_series_csv: first column must be tau");
    for (std::size_t c = 1; c < header.size(); ++c) ts.columns.emplace_back(parse_observable(header[c]), std::vector<double>{});

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw DomainError("parse_series_csv: line " + std::to_string(line_no) + " has " +
                              std::to_string(fields.size()) + " fields, expected " + std::to_string(header.size()));
        }
        ts.tau.push_back(parse_field(fields[0], line_no));
        for (std::size_t c = 1; c < fields.size(); ++c) ts.columns[c - 1].second.push_back(parse_field(fields[c], line_no));
    }
    return ts;
}

std::string render_svg(std::span<const double> tau, std::span<const double> values, const std::string& title,
                       const std::string& y_label) {
    if (tau.size() != values.size() || tau.empty()) throw DomainError("render_svg: bad series");

    const double x_min = tau.front();
    const double x_max = tau.back() > x_min ? tau.back() : x_min + 1.0;
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    double y_min = *lo;
    double y_max = *hi;
    if (!(y_max - y_min > 1e-12 * std::max(1.0, std::abs(y_max)))) {
        const double pad = std::max(1e-3, 1e-3 * std::abs(y_max));
        y_min -= pad;
        y_max += pad;
    } else {
        const double pad = 0.05 * (y_max - y_min);
        y_min -= pad;
        y_max += pad;
    }
    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto px = [&](double x) { return kMarginLeft + (x - x_min) / (x_max - x_min) * plot_w; };
    auto py = [&](double y) { return kMarginTop + (y_max - y) / (y_max - y_min) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">"
        << escape_xml(title) << "</text>\n";
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << kMarginLeft + plot_w
        << "\" y2=\"" << kMarginTop + plot_h << "\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft << "\" y2=\""
        << kMarginTop + plot_h << "\"/>\n";
    svg << "</g>\n";

    svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double xv = x_min + (x_max - x_min) * i / 5.0;
        const double yv = y_min + (y_max - y_min) * i / 5.0;
        svg << "<text x=\"" << fixed(px(xv), 1) << "\" y=\"" << kMarginTop + plot_h + 16
            << "\" text-anchor=\"middle\">" << fixed(xv, 2) << "</text>\n";
        svg << "<text x=\"" << kMarginLeft - 6 << "\" y=\"" << fixed(py(yv) + 4, 1) << "\" text-anchor=\"end\">"
            << fixed(yv, 4) << "</text>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-size=\"13\">tau</text>\n";
    svg << "<text x=\"16\" y=\"" << kMarginTop + plot_h / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
        << "transform=\"rotate(-90 16 " << kMarginTop + plot_h / 2 << ")\">" << escape_xml(y_label) << "</text>\n";
    svg << "</g>\n";

    // Decimate long series by keeping the min and max of each pixel bucket.
    svg << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1\" points=\"";
    const std::size_t n = tau.size();
    const std::size_t buckets = std::min(n, kMaxPolylinePoints / 2);
    for (std::size_t b = 0; b < buckets; ++b) {
        const std::size_t begin = b * n / buckets;
        const std::size_t end = std::max(begin + 1, (b + 1) * n / buckets);
        std::size_t i_lo = begin;
        std::size_t i_hi = begin;
        for (std::size_t i = begin; i < end; ++i) {
            if (values[i] < values[i_lo]) i_lo = i;
            if (values[i] > values[i_hi]) i_hi = i;
        }
        const std::size_t first = std::min(i_lo, i_hi);
        const std::size_t second = std::max(i_lo, i_hi);
        svg << fixed(px(tau[first]), 2) << ',' << fixed(py(values[first]), 2) << ' ';
        if (second != first) svg << fixed(px(tau[second]), 2) << ',' << fixed(py(values[second]), 2) << ' ';
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed for " + path.string());
}

}  // namespace nlqs::app

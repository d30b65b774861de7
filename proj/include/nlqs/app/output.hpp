#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>

#include "nlqs/dynamics.hpp"

namespace nlqs::app {

/// Shortest-round-trip-safe decimal: 17 significant digits, C locale.
std::string format_double(double v);

/// Header `tau,<columns...>`, LF line endings, one row per tau sample.
std::string series_csv(const TimeSeries& series);
TimeSeries parse_series_csv(std::istream& in);

/// Static line chart of one observable against tau.
std::string render_svg(std::span<const double> tau, std::span<const double> values, const std::string& title,
                       const std::string& y_label);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nlqs::app

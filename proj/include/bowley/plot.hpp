#pragma once

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bowley/error.hpp"
#include "bowley/format.hpp"

namespace bowley {

struct PlotSeries {
    std::string name;
    std::vector<double> t;
    std::vector<double> values;
};

struct PlotOptions {
    std::string title;
    std::string x_label = "t";
    std::string y_label = "value";
};

namespace detail {

inline std::string fixed2(double v) {
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 2);
    if (ec != std::errc{}) return "0.00";
    return std::string(buf.data(), end);
}

inline std::string xml_escape(std::string_view s) {
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

inline constexpr std::array<std::string_view, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                             "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

}  // namespace detail

/// Standalone SVG line chart: frame, five ticks per axis, a legend, and one
/// polyline per series. Output bytes depend only on the inputs.
inline void emit_plot(std::span<const PlotSeries> series, std::ostream& sink, const PlotOptions& options = {}) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "emit_plot: no series given");
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    for (const auto& s : series) {
        if (s.t.empty() || s.t.size() != s.values.size()) {
            throw Error(ErrorCode::EmptySeries, "emit_plot: series '" + s.name + "' is empty or misaligned");
        }
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            if (!std::isfinite(s.t[i]) || !std::isfinite(s.values[i])) {
                throw Error(ErrorCode::NonFiniteValue, "emit_plot: series '" + s.name + "' has a non-finite point");
            }
            x_lo = std::min(x_lo, s.t[i]);
            x_hi = std::max(x_hi, s.t[i]);
            y_lo = std::min(y_lo, s.values[i]);
            y_hi = std::max(y_hi, s.values[i]);
        }
    }
    if (x_hi == x_lo) {
        x_lo -= 0.5;
        x_hi += 0.5;
    }
    if (y_hi == y_lo) {
        const double pad = std::max(1.0, std::abs(y_lo) * 0.05);
        y_lo -= pad;
        y_hi += pad;
    } else {
        const double pad = 0.05 * (y_hi - y_lo);
        y_lo -= pad;
        y_hi += pad;
    }

    constexpr double kWidth = 800.0, kHeight = 500.0;
    constexpr double kLeft = 70.0, kRight = 170.0, kTop = 40.0, kBottom = 50.0;
    constexpr double kPlotW = kWidth - kLeft - kRight, kPlotH = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * kPlotW; };
    auto py = [&](double y) { return kTop + kPlotH - (y - y_lo) / (y_hi - y_lo) * kPlotH; };
    using detail::fixed2;

    sink << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
         << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"500\" viewBox=\"0 0 800 500\">\n"
         << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        sink << "<text x=\"" << fixed2(kLeft + kPlotW / 2) << "\" y=\"24.00\" text-anchor=\"middle\" font-size=\"16\">"
             << detail::xml_escape(options.title) << "</text>\n";
    }
    sink << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n"
         << "<rect x=\"" << fixed2(kLeft) << "\" y=\"" << fixed2(kTop) << "\" width=\"" << fixed2(kPlotW)
         << "\" height=\"" << fixed2(kPlotH) << "\"/>\n";
    constexpr int kTicks = 5;
    for (int i = 0; i < kTicks; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / (kTicks - 1);
        const double fy = y_lo + (y_hi - y_lo) * i / (kTicks - 1);
        sink << "<line x1=\"" << fixed2(px(fx)) << "\" y1=\"" << fixed2(kTop + kPlotH) << "\" x2=\"" << fixed2(px(fx))
             << "\" y2=\"" << fixed2(kTop + kPlotH + 5) << "\"/>\n";
        sink << "<line x1=\"" << fixed2(kLeft - 5) << "\" y1=\"" << fixed2(py(fy)) << "\" x2=\"" << fixed2(kLeft)
             << "\" y2=\"" << fixed2(py(fy)) << "\"/>\n";
    }
    sink << "</g>\n<g class=\"labels\" font-size=\"11\" fill=\"black\">\n";
    for (int i = 0; i < kTicks; ++i) {
        const double fx = x_lo + (x_hi - x_lo) * i / (kTicks - 1);
        const double fy = y_lo + (y_hi - y_lo) * i / (kTicks - 1);
        sink << "<text x=\"" << fixed2(px(fx)) << "\" y=\"" << fixed2(kTop + kPlotH + 18)
             << "\" text-anchor=\"middle\">" << format_double(fx, 6) << "</text>\n";
        sink << "<text x=\"" << fixed2(kLeft - 8) << "\" y=\"" << fixed2(py(fy) + 4) << "\" text-anchor=\"end\">"
             << format_double(fy, 6) << "</text>\n";
    }
    sink << "<text x=\"" << fixed2(kLeft + kPlotW / 2) << "\" y=\"" << fixed2(kHeight - 10)
         << "\" text-anchor=\"middle\">" << detail::xml_escape(options.x_label) << "</text>\n"
         << "<text x=\"16.00\" y=\"" << fixed2(kTop + kPlotH / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16.00 "
         << fixed2(kTop + kPlotH / 2) << ")\">" << detail::xml_escape(options.y_label) << "</text>\n</g>\n";

    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const auto color = detail::kPalette[k % detail::kPalette.size()];
        sink << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            if (i) sink << ' ';
            sink << fixed2(px(s.t[i])) << ',' << fixed2(py(s.values[i]));
        }
        sink << "\"/>\n";
    }

    sink << "<g class=\"legend\" font-size=\"12\">\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const double y = kTop + 10 + 20.0 * static_cast<double>(k);
        const auto color = detail::kPalette[k % detail::kPalette.size()];
        sink << "<line x1=\"" << fixed2(kWidth - kRight + 15) << "\" y1=\"" << fixed2(y) << "\" x2=\""
             << fixed2(kWidth - kRight + 40) << "\" y2=\"" << fixed2(y) << "\" stroke=\"" << color
             << "\" stroke-width=\"2\"/>\n";
        sink << "<text x=\"" << fixed2(kWidth - kRight + 46) << "\" y=\"" << fixed2(y + 4) << "\">"
             << detail::xml_escape(series[k].name) << "</text>\n";
    }
    sink << "</g>\n</svg>\n";
    if (!sink) throw Error(ErrorCode::IoError, "emit_plot: write failure");
}

inline void emit_plot(std::span<const PlotSeries> series, const std::string& path, const PlotOptions& options = {}) {
    if (series.empty()) throw Error(ErrorCode::EmptySeries, "emit_plot: no series given");
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::IoError, "cannot open plot file '" + path + "' for writing");
    emit_plot(series, file, options);
}

}  // namespace bowley

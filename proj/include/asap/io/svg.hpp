#pragma once

#include "asap/io/csv.hpp"
#include "asap/series.hpp"

#include <algorithm>
#include <cstdio>
#include <cstddef>
#include <ostream>
#include <string>

namespace asap::io {

struct ChartStyle {
    std::size_t width = 800;
    std::size_t height = 300;
    double margin = 10.0;
    std::string raw_color = "#b0b0b0";
    std::string smooth_color = "#1f5fbf";
};

/// Static line chart: `raw` and `smoothed` as two polylines sharing one time
/// axis and one value axis. Width equals the configured pixel resolution.
inline void write_svg(std::ostream& out, const Series& raw, const Series& smoothed, const ChartStyle& style) {
    double t0 = 0.0, t1 = 1.0, lo = -1.0, hi = 1.0;
    bool first = true;
    for (const Series* s : {&raw, &smoothed}) {
        for (std::size_t i = 0; i < s->size(); ++i) {
            const auto t = static_cast<double>(s->timestamps()[i]);
            const double v = s->values()[i];
            if (first) {
                t0 = t1 = t;
                lo = hi = v;
                first = false;
            }
            t0 = std::min(t0, t);
            t1 = std::max(t1, t);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    if (t1 == t0) t1 = t0 + 1.0;
    if (hi == lo) {
        hi += 1.0;
        lo -= 1.0;
    }
    const double w = static_cast<double>(style.width);
    const double h = static_cast<double>(style.height);
    const double m = style.margin;
    auto x_of = [&](double t) { return (t - t0) / (t1 - t0) * w; };
    auto y_of = [&](double v) { return m + (hi - v) / (hi - lo) * (h - 2.0 * m); };

    auto polyline = [&](const Series& s, const std::string& color, const char* id, double stroke) {
        out << "  <polyline id=\"" << id << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
            << format_double(stroke) << "\" points=\"";
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) out << ' ';
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.2f,%.2f", x_of(static_cast<double>(s.timestamps()[i])),
                          y_of(s.values()[i]));
            out << buf;
        }
        out << "\"/>\n";
    };

    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.width << "\" height=\"" << style.height
        << "\" viewBox=\"0 0 " << style.width << ' ' << style.height << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    polyline(raw, style.raw_color, "raw", 1.0);
    polyline(smoothed, style.smooth_color, "smoothed", 2.0);
    out << "</svg>\n";
}

} // namespace asap::io

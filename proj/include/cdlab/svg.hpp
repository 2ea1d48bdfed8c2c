#pragma once

#include <algorithm>
#include <cmath>
#include <fstream>
#include <string>
#include <vector>

#include "cdlab/csv.hpp"
#include "cdlab/errors.hpp"

namespace cdlab {

/// Minimal file-based SVG plotting: polyline charts and cell heatmaps.
/// No interactive display; plots are artifacts under runs/<id>/plots/.
class SvgPlot {
public:
    SvgPlot(std::string title, std::string xlabel, std::string ylabel)
        : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

    void add_series(std::string name, std::vector<double> x, std::vector<double> y) {
        series_.push_back({std::move(name), std::move(x), std::move(y)});
    }

    void write(const std::string& path) const {
        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const auto& s : series_) {
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                xmin = std::min(xmin, s.x[i]);
                xmax = std::max(xmax, s.x[i]);
                ymin = std::min(ymin, s.y[i]);
                ymax = std::max(ymax, s.y[i]);
            }
        }
        if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
        if (xmax - xmin < 1e-300) xmax = xmin + 1;
        if (ymax - ymin < 1e-300) ymax = ymin + 1;

        const double W = 760, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
        auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
        auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

        std::ofstream out(path);
        if (!out) throw Error("SvgPlot: cannot open " + path);
        out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
            << "' viewBox='0 0 " << W << " " << H << "'>\n"
            << "<rect width='100%' height='100%' fill='white'/>\n"
            << "<text x='" << W / 2 << "' y='22' text-anchor='middle' font-size='15'>"
            << title_ << "</text>\n";
        // axes and ticks
        out << "<line x1='" << ml << "' y1='" << H - mb << "' x2='" << W - mr << "' y2='"
            << H - mb << "' stroke='black'/>\n"
            << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << H - mb
            << "' stroke='black'/>\n";
        for (int k = 0; k <= 5; ++k) {
            const double xv = xmin + (xmax - xmin) * k / 5.0;
            const double yv = ymin + (ymax - ymin) * k / 5.0;
            out << "<text x='" << px(xv) << "' y='" << H - mb + 18
                << "' text-anchor='middle' font-size='11'>" << short_num(xv) << "</text>\n"
                << "<text x='" << ml - 6 << "' y='" << py(yv) + 4
                << "' text-anchor='end' font-size='11'>" << short_num(yv) << "</text>\n";
        }
        out << "<text x='" << (ml + W - mr) / 2 << "' y='" << H - 12
            << "' text-anchor='middle' font-size='12'>" << xlabel_ << "</text>\n"
            << "<text x='16' y='" << (mt + H - mb) / 2
            << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 "
            << (mt + H - mb) / 2 << ")'>" << ylabel_ << "</text>\n";

        static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                       "#ff7f0e", "#8c564b"};
        for (std::size_t si = 0; si < series_.size(); ++si) {
            const auto& s = series_[si];
            out << "<polyline fill='none' stroke='" << colors[si % 6]
                << "' stroke-width='1.5' points='";
            for (std::size_t i = 0; i < s.x.size(); ++i) {
                if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
                out << px(s.x[i]) << "," << py(s.y[i]) << " ";
            }
            out << "'/>\n";
            out << "<text x='" << W - mr - 6 << "' y='" << mt + 16 * (si + 1)
                << "' text-anchor='end' font-size='11' fill='" << colors[si % 6] << "'>"
                << s.name << "</text>\n";
        }
        out << "</svg>\n";
    }

private:
    static std::string short_num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4g", v);
        return buf;
    }

    struct Series {
        std::string name;
        std::vector<double> x, y;
    };
    std::string title_, xlabel_, ylabel_;
    std::vector<Series> series_;
};

/// Heatmap over a rectangular grid of cells (row-major values).
inline void write_heatmap_svg(const std::string& path, const std::string& title,
                              const std::vector<double>& xs, const std::vector<double>& ys,
                              const std::vector<double>& values, const std::string& xlabel,
                              const std::string& ylabel) {
    const std::size_t nx = xs.size(), ny = ys.size();
    if (values.size() != nx * ny) throw Error("write_heatmap_svg: size mismatch");
    double vmin = 1e300, vmax = -1e300;
    for (double v : values)
        if (std::isfinite(v)) { vmin = std::min(vmin, v); vmax = std::max(vmax, v); }
    if (vmin > vmax) { vmin = 0; vmax = 1; }
    if (vmax - vmin < 1e-300) vmax = vmin + 1;

    const double W = 720, H = 520, ml = 80, mr = 90, mt = 40, mb = 60;
    const double cw = (W - ml - mr) / double(nx), ch = (H - mt - mb) / double(ny);
    std::ofstream out(path);
    if (!out) throw Error("write_heatmap_svg: cannot open " + path);
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
        << "<text x='" << W / 2 << "' y='22' text-anchor='middle' font-size='15'>" << title
        << "</text>\n";
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double v = values[j * nx + i];
            std::string fill = "#dddddd";
            if (std::isfinite(v)) {
                const double s = (v - vmin) / (vmax - vmin);
                const int r = static_cast<int>(45 + 210 * s);
                const int b = static_cast<int>(255 - 210 * s);
                char buf[16];
                std::snprintf(buf, sizeof(buf), "#%02x50%02x", r, b);
                fill = buf;
            }
            out << "<rect x='" << ml + i * cw << "' y='" << mt + (ny - 1 - j) * ch
                << "' width='" << cw << "' height='" << ch << "' fill='" << fill
                << "' stroke='white'/>\n";
        }
    }
    for (std::size_t i = 0; i < nx; ++i)
        out << "<text x='" << ml + (i + 0.5) * cw << "' y='" << H - mb + 16
            << "' text-anchor='middle' font-size='11'>" << format_double(xs[i]).substr(0, 6)
            << "</text>\n";
    for (std::size_t j = 0; j < ny; ++j)
        out << "<text x='" << ml - 6 << "' y='" << mt + (ny - 0.5 - j) * ch + 4
            << "' text-anchor='end' font-size='11'>" << format_double(ys[j]).substr(0, 6)
            << "</text>\n";
    out << "<text x='" << W / 2 << "' y='" << H - 14
        << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n"
        << "<text x='20' y='" << H / 2
        << "' text-anchor='middle' font-size='12' transform='rotate(-90 20 " << H / 2
        << ")'>" << ylabel << "</text>\n";
    char lo[32], hi[32];
    std::snprintf(lo, sizeof(lo), "%.4g", vmin);
    std::snprintf(hi, sizeof(hi), "%.4g", vmax);
    out << "<text x='" << W - mr + 8 << "' y='" << H - mb
        << "' font-size='11'>min " << lo << "</text>\n"
        << "<text x='" << W - mr + 8 << "' y='" << mt + 12 << "' font-size='11'>max " << hi
        << "</text>\n</svg>\n";
}

} // namespace cdlab

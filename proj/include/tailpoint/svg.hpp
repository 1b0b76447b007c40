#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tailpoint {

struct SvgSeries {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

namespace detail {

inline std::string svg_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline const char* svg_color(std::size_t i) {
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
    return palette[i % 10];
}

}  // namespace detail

// Self-contained line/scatter chart; finite points only, no external assets.
inline std::string svg_chart(const std::vector<SvgSeries>& series, const std::string& title,
                             const std::string& x_label, const std::string& y_label,
                             bool scatter = false, int width = 820, int height = 520) {
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const SvgSeries& s : series)
        for (auto [x, y] : s.points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    if (!any) throw std::invalid_argument("svg_chart: no finite points to plot");
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    double pad_y = 0.06 * (ymax - ymin);
    ymin -= pad_y;
    ymax += pad_y;
    const double ml = 70, mr = 20, mt = 40, mb = 55;
    double pw = width - ml - mr, ph = height - mt - mb;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + (ymax - y) / (ymax - ymin) * ph; };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
       << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"15\">" << title << "</text>\n";
    // axes and ticks
    os << "<g stroke=\"#333\" stroke-width=\"1\">";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw << "\" y2=\""
       << mt + ph << "\"/>";
    os << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << mt + ph
       << "\"/></g>\n";
    os << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        double fx = xmin + (xmax - xmin) * i / nticks;
        double fy = ymin + (ymax - ymin) * i / nticks;
        os << "<line x1=\"" << detail::svg_num(px(fx)) << "\" y1=\"" << mt + ph << "\" x2=\""
           << detail::svg_num(px(fx)) << "\" y2=\"" << mt + ph + 5
           << "\" stroke=\"#333\" stroke-width=\"1\"/>";
        os << "<text x=\"" << detail::svg_num(px(fx)) << "\" y=\"" << mt + ph + 18
           << "\" text-anchor=\"middle\">" << detail::svg_num(fx) << "</text>\n";
        os << "<line x1=\"" << ml - 5 << "\" y1=\"" << detail::svg_num(py(fy)) << "\" x2=\"" << ml
           << "\" y2=\"" << detail::svg_num(py(fy)) << "\" stroke=\"#333\" stroke-width=\"1\"/>";
        os << "<text x=\"" << ml - 8 << "\" y=\"" << detail::svg_num(py(fy) + 4)
           << "\" text-anchor=\"end\">" << detail::svg_num(fy) << "</text>\n";
    }
    os << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " << mt + ph / 2
       << ")\">" << y_label << "</text>\n";
    os << "</g>\n";
    // series
    for (std::size_t si = 0; si < series.size(); ++si) {
        const char* color = detail::svg_color(si);
        if (!scatter) {
            os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.7\" points=\"";
            for (auto [x, y] : series[si].points) {
                if (!std::isfinite(x) || !std::isfinite(y)) continue;
                os << detail::svg_num(px(x)) << ',' << detail::svg_num(py(y)) << ' ';
            }
            os << "\"/>\n";
        }
        for (auto [x, y] : series[si].points) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            os << "<circle cx=\"" << detail::svg_num(px(x)) << "\" cy=\"" << detail::svg_num(py(y))
               << "\" r=\"" << (scatter ? 4.0 : 2.2) << "\" fill=\"" << color << "\"/>\n";
        }
    }
    // legend
    os << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
    double ly = mt + 8;
    for (std::size_t si = 0; si < series.size(); ++si) {
        if (series[si].label.empty()) continue;
        os << "<rect x=\"" << ml + pw - 150 << "\" y=\"" << ly - 8
           << "\" width=\"10\" height=\"10\" fill=\"" << detail::svg_color(si) << "\"/>";
        os << "<text x=\"" << ml + pw - 136 << "\" y=\"" << ly + 1 << "\">" << series[si].label
           << "</text>\n";
        ly += 15;
    }
    os << "</g>\n</svg>\n";
    return os.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace tailpoint

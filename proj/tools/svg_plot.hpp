#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beacon::plot {

struct Series {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;  // (x, y), y > 0
};

struct GuideLine {
    std::string label;
    double y = 0.0;
};

inline std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// Minimal two-axis line chart: `left` series plot against the left log
// scale, `right` series against an independent right log scale. Guide lines
// are horizontal rules on the left scale.
inline void write_svg_plot(const std::string& path, const std::string& title,
                           const std::string& x_label, const std::string& left_label,
                           const std::string& right_label, const std::vector<Series>& left,
                           const std::vector<Series>& right,
                           const std::vector<GuideLine>& guides) {
    const double width = 720, height = 460;
    const double ml = 80, mr = 90, mt = 50, mb = 55;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double x_min = 1e300, x_max = -1e300;
    const auto scan_x = [&](const std::vector<Series>& list) {
        for (const auto& s : list)
            for (const auto& [x, y] : s.points) {
                (void)y;
                x_min = std::min(x_min, x);
                x_max = std::max(x_max, x);
            }
    };
    scan_x(left);
    scan_x(right);
    if (x_min > x_max) throw std::invalid_argument("write_svg_plot: no points");
    if (x_min == x_max) x_max = x_min + 1;

    const auto log_range = [](const std::vector<Series>& list,
                              const std::vector<GuideLine>& extra) {
        double lo = 1e300, hi = -1e300;
        for (const auto& s : list)
            for (const auto& [x, y] : s.points) {
                (void)x;
                if (y > 0) {
                    lo = std::min(lo, y);
                    hi = std::max(hi, y);
                }
            }
        for (const auto& g : extra)
            if (g.y > 0) {
                lo = std::min(lo, g.y);
                hi = std::max(hi, g.y);
            }
        if (lo > hi) {
            lo = 0.1;
            hi = 1.0;
        }
        double llo = std::floor(std::log10(lo));
        double lhi = std::ceil(std::log10(hi));
        if (llo == lhi) lhi += 1;
        return std::pair<double, double>(llo, lhi);
    };
    const auto [l_lo, l_hi] = log_range(left, guides);
    const auto [r_lo, r_hi] = log_range(right, {});

    const auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * pw; };
    const auto sy_of = [&](double lo, double hi) {
        return [=](double y) { return mt + ph - (std::log10(y) - lo) / (hi - lo) * ph; };
    };
    const auto syl = sy_of(l_lo, l_hi);
    const auto syr = sy_of(r_lo, r_hi);

    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write plot file " + path);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
        << title << "</text>\n"
        << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
        << "\" fill=\"none\" stroke=\"#444\"/>\n";

    for (double e = l_lo; e <= l_hi; e += 1.0) {
        const double y = syl(std::pow(10.0, e));
        out << "<line x1=\"" << ml << "\" y1=\"" << num(y) << "\" x2=\"" << ml + pw << "\" y2=\""
            << num(y) << "\" stroke=\"#ddd\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\">1e" << int(e) << "</text>\n";
    }
    for (double e = r_lo; e <= r_hi; e += 1.0) {
        const double y = syr(std::pow(10.0, e));
        out << "<text x=\"" << ml + pw + 8 << "\" y=\"" << num(y + 4)
            << "\" text-anchor=\"start\" font-size=\"11\" fill=\"#865\">1e" << int(e)
            << "</text>\n";
    }
    const int x_ticks = std::min(10, int(std::lround(x_max - x_min)));
    for (int i = 0; i <= x_ticks; ++i) {
        const double x = x_min + (x_max - x_min) * i / std::max(x_ticks, 1);
        out << "<text x=\"" << num(sx(x)) << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\" font-size=\"11\">" << num(x) << "</text>\n";
    }

    for (const auto& g : guides) {
        const double y = syl(g.y);
        out << "<line x1=\"" << ml << "\" y1=\"" << num(y) << "\" x2=\"" << ml + pw << "\" y2=\""
            << num(y) << "\" stroke=\"#999\" stroke-dasharray=\"6 4\"/>\n"
            << "<text x=\"" << ml + 6 << "\" y=\"" << num(y - 4) << "\" font-size=\"11\" "
            << "fill=\"#666\">" << g.label << "</text>\n";
    }

    const auto draw = [&](const std::vector<Series>& list, const auto& sy) {
        for (const auto& s : list) {
            out << "<polyline fill=\"none\" stroke=\"" << s.color
                << "\" stroke-width=\"2\" points=\"";
            for (const auto& [x, y] : s.points)
                if (y > 0) out << num(sx(x)) << "," << num(sy(y)) << " ";
            out << "\"/>\n";
            for (const auto& [x, y] : s.points)
                if (y > 0)
                    out << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y))
                        << "\" r=\"3\" fill=\"" << s.color << "\"/>\n";
        }
    };
    draw(left, syl);
    draw(right, syr);

    double legend_y = mt + 16;
    const auto legend = [&](const std::vector<Series>& list) {
        for (const auto& s : list) {
            out << "<rect x=\"" << ml + pw - 180 << "\" y=\"" << legend_y - 9
                << "\" width=\"12\" height=\"12\" fill=\"" << s.color << "\"/>\n"
                << "<text x=\"" << ml + pw - 162 << "\" y=\"" << legend_y + 2
                << "\" font-size=\"12\">" << s.label << "</text>\n";
            legend_y += 18;
        }
    };
    legend(left);
    legend(right);

    out << "<text x=\"" << width / 2 << "\" y=\"" << height - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n"
        << "<text transform=\"translate(20," << mt + ph / 2
        << ") rotate(-90)\" text-anchor=\"middle\" font-size=\"13\">" << left_label
        << "</text>\n"
        << "<text transform=\"translate(" << width - 16 << "," << mt + ph / 2
        << ") rotate(90)\" text-anchor=\"middle\" font-size=\"13\" fill=\"#865\">" << right_label
        << "</text>\n</svg>\n";
}

}  // namespace beacon::plot

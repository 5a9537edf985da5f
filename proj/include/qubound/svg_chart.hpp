#pragma once

// Self-contained grouped-bar-chart SVG writer (SVG 1.1, fixed 800x500
// viewport, no external assets).  Bars are labeled with one-decimal values,
// groups with their state labels, and series with a legend.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace qubound::svg {

struct BarGroup {
    std::string label;
    std::vector<std::pair<std::string, double>> bars;  // (series name, value)
};

namespace detail {

inline std::string num(double v, int decimals = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
    return buf;
}

inline const char* series_color(std::size_t index) {
    static const char* palette[] = {"#7f7f7f", "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                    "#9467bd"};
    return palette[index % (sizeof palette / sizeof palette[0])];
}

}  // namespace detail

inline std::string render_bar_chart(const std::vector<BarGroup>& groups,
                                    const std::string& title, const std::string& y_label) {
    constexpr double width = 800.0, height = 500.0;
    constexpr double left = 70.0, right = 780.0, top = 50.0, bottom = 430.0;

    double vmax = 0.0;
    std::size_t series_count = 0;
    for (const auto& g : groups) {
        series_count = std::max(series_count, g.bars.size());
        for (const auto& b : g.bars) vmax = std::max(vmax, b.second);
    }
    const double ymax = std::max(1.0, std::ceil(vmax * 1.1 / 0.5) * 0.5);
    const auto ypix = [&](double v) { return bottom - (v / ymax) * (bottom - top); };

    std::string s;
    s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
         "height=\"500\" viewBox=\"0 0 800 500\">\n";
    s += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"white\"/>\n";
    s += "<text x=\"400\" y=\"28\" font-family=\"sans-serif\" font-size=\"18\" "
         "text-anchor=\"middle\">" + title + "</text>\n";

    // axes and horizontal grid
    for (double tick = 0.0; tick <= ymax + 1e-9; tick += 0.5) {
        const double y = ypix(tick);
        s += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(y) + "\" x2=\"" +
             detail::num(right) + "\" y2=\"" + detail::num(y) +
             "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + detail::num(left - 8.0) + "\" y=\"" + detail::num(y + 4.0) +
             "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"end\">" +
             detail::num(tick, 1) + "</text>\n";
    }
    s += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(top) + "\" x2=\"" +
         detail::num(left) + "\" y2=\"" + detail::num(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<line x1=\"" + detail::num(left) + "\" y1=\"" + detail::num(bottom) + "\" x2=\"" +
         detail::num(right) + "\" y2=\"" + detail::num(bottom) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    s += "<text x=\"20\" y=\"" + detail::num((top + bottom) / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 20 " + detail::num((top + bottom) / 2.0) + ")\">" + y_label +
         "</text>\n";

    // grouped bars
    const double group_width = (right - left) / static_cast<double>(groups.size());
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const auto& g = groups[gi];
        const double gx = left + group_width * static_cast<double>(gi);
        const double slot = group_width / static_cast<double>(g.bars.size() + 1);
        for (std::size_t bi = 0; bi < g.bars.size(); ++bi) {
            const double barw = slot * 0.8;
            const double x = gx + slot * (static_cast<double>(bi) + 0.6);
            const double y = ypix(g.bars[bi].second);
            s += "<rect x=\"" + detail::num(x) + "\" y=\"" + detail::num(y) + "\" width=\"" +
                 detail::num(barw) + "\" height=\"" + detail::num(bottom - y) + "\" fill=\"" +
                 detail::series_color(bi) + "\"/>\n";
            s += "<text x=\"" + detail::num(x + barw / 2.0) + "\" y=\"" + detail::num(y - 4.0) +
                 "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
                 detail::num(g.bars[bi].second, 1) + "</text>\n";
        }
        s += "<text x=\"" + detail::num(gx + group_width / 2.0) + "\" y=\"" +
             detail::num(bottom + 24.0) +
             "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + g.label +
             "</text>\n";
    }

    // legend (series names from the widest group)
    const BarGroup* legend_src = nullptr;
    for (const auto& g : groups)
        if (!legend_src || g.bars.size() > legend_src->bars.size()) legend_src = &g;
    if (legend_src) {
        double lx = right - 90.0;
        double ly = top + 8.0;
        for (std::size_t bi = 0; bi < legend_src->bars.size(); ++bi) {
            s += "<rect x=\"" + detail::num(lx) + "\" y=\"" + detail::num(ly - 10.0) +
                 "\" width=\"12\" height=\"12\" fill=\"" + detail::series_color(bi) + "\"/>\n";
            s += "<text x=\"" + detail::num(lx + 18.0) + "\" y=\"" + detail::num(ly) +
                 "\" font-family=\"sans-serif\" font-size=\"12\">" + legend_src->bars[bi].first +
                 "</text>\n";
            ly += 18.0;
        }
    }

    s += "</svg>\n";
    return s;
}

}  // namespace qubound::svg

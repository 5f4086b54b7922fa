#pragma once

#include "exseq/toric_geometry.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

namespace exseq {

// Display-only rendering; the only place floating point is used.
inline std::string fan_svg(const ToricFan& fan) {
    constexpr double size = 512, centre = 256, radius = 200, label_radius = 120;
    auto fmt = [](double x) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.2f", x);
        return std::string(buf);
    };
    auto unit = [](const V2& l) {
        const double x = l.x.get_d(), y = l.y.get_d(), n = std::hypot(x, y);
        return std::pair{x / n, y / n};
    };
    auto px = [&](double x) { return fmt(centre + radius * x); };
    auto py = [&](double y) { return fmt(centre - radius * y); };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
        << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<circle cx=\"" << centre << "\" cy=\"" << centre << "\" r=\"" << radius
        << "\" fill=\"none\" stroke=\"#ccc\"/>\n";

    const auto types = classify_cones(fan);
    const std::size_t m = fan.size();
    for (std::size_t i = 0; i < m; ++i) {
        const auto [x1, y1] = unit(fan.ray(i));
        const auto [x2, y2] = unit(fan.ray(i + 1));
        const bool smooth = types[i].smooth();
        const std::string colour = smooth ? "#cde" : (types[i].t_form ? "#fdb" : "#f99");
        out << "<path d=\"M " << centre << ' ' << centre << " L " << px(x1) << ' ' << py(y1) << " A " << radius
            << ' ' << radius << " 0 0 0 " << px(x2) << ' ' << py(y2) << " Z\" fill=\"" << colour
            << "\" fill-opacity=\"0.6\" stroke=\"none\"/>\n";
        double mx = x1 + x2, my = y1 + y2;
        const double n = std::hypot(mx, my);
        if (n > 1e-9) {
            mx /= n;
            my /= n;
        }
        const std::string label = types[i].v.get_str() + (smooth ? "" : types[i].t_form ? " T" : " *");
        out << "<text x=\"" << fmt(centre + label_radius * mx) << "\" y=\"" << fmt(centre - label_radius * my)
            << "\" font-size=\"14\" text-anchor=\"middle\">" << label << "</text>\n";
    }
    for (std::size_t i = 0; i < m; ++i) {
        const auto [x, y] = unit(fan.ray(i));
        out << "<line x1=\"" << centre << "\" y1=\"" << centre << "\" x2=\"" << px(x) << "\" y2=\"" << py(y)
            << "\" stroke=\"black\" stroke-width=\"" << (fan.rays[i].multiplicity > 1 ? 3 : 1.5) << "\"/>\n";
        out << "<text x=\"" << px(1.12 * x) << "\" y=\"" << py(1.12 * y)
            << "\" font-size=\"12\" text-anchor=\"middle\">(" << fan.rays[i].l.x.get_str() << ","
            << fan.rays[i].l.y.get_str() << ")</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace exseq

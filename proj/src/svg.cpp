#include "dendro/svg.hpp"

#include <cstdio>
#include <stdexcept>

namespace dendro {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    std::string s(buf);
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    if (s == "-0") s = "0";
    return s;
}

double to_x(double x) { return svg_size / 2 + svg_scale * x; }
double to_y(double y) { return svg_size / 2 - svg_scale * y; }

}  // namespace

std::string render_svg(const Configuration<double>& x) {
    if (x.dim() != 2) throw std::invalid_argument("rendering needs dimension 2, got " + std::to_string(x.dim()));
    std::string out;
    out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"512\" height=\"512\" viewBox=\"0 0 512 512\">\n";
    out += "  <rect width=\"512\" height=\"512\" fill=\"white\"/>\n";
    out += "  <circle cx=\"256\" cy=\"256\" r=\"" + num(svg_scale) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::string label = std::to_string(i + 1);
        double cx, cy;
        if (x.is_disk(i)) {
            const auto& d = x.disk(i);
            cx = to_x(d.center[0]);
            cy = to_y(d.center[1]);
            out += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"" + num(svg_scale * d.radius) +
                   "\" fill=\"#9ecae1\" fill-opacity=\"0.5\" stroke=\"#08519c\" stroke-width=\"1.5\"/>\n";
        } else {
            const auto& p = x.point(i);
            cx = to_x(p.position[0]);
            cy = to_y(p.position[1]);
            out += "  <circle cx=\"" + num(cx) + "\" cy=\"" + num(cy) + "\" r=\"3\" fill=\"#d62728\"/>\n";
        }
        out += "  <text x=\"" + num(cx + 5) + "\" y=\"" + num(cy - 5) +
               "\" font-family=\"sans-serif\" font-size=\"12\">" + label + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dendro

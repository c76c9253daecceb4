#pragma once

// Deterministic SVG 1.1 emission for amoeba rasters, tropical spines,
// and component order labels.  Element ordering and number formatting
// are fixed so identical scenes produce byte-identical documents.

#include <cstdio>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/spine.hpp"

namespace syz {

struct SvgScene {
    const AmoebaRaster* raster = nullptr;
    const TropicalSpine* spine = nullptr;
    const std::vector<ComplementComponent>* components = nullptr;
    std::optional<Window> window;  // required when no raster is given
};

namespace detail {

inline std::string svg_num(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

struct SvgFrame {
    Window window;
    // World coordinates to SVG user units (y grows downward).
    double sx(double x) const {
        return (x - window.xmin) / window.pixel_width();
    }
    double sy(double y) const {
        return (window.ymax - y) / window.pixel_height();
    }
};

/// Clip the parametric interval of p + t*d against the window; returns
/// false when the intersection is empty.
inline bool clip_parameter(const SvgFrame& frame, double px, double py, double dx,
                           double dy, double& t_lo, double& t_hi) {
    const double mins[2] = {frame.window.xmin, frame.window.ymin};
    const double maxs[2] = {frame.window.xmax, frame.window.ymax};
    const double p[2] = {px, py};
    const double d[2] = {dx, dy};
    for (int axis = 0; axis < 2; ++axis) {
        if (d[axis] == 0.0) {
            if (p[axis] < mins[axis] || p[axis] > maxs[axis]) return false;
            continue;
        }
        double a = (mins[axis] - p[axis]) / d[axis];
        double b = (maxs[axis] - p[axis]) / d[axis];
        if (a > b) std::swap(a, b);
        t_lo = std::max(t_lo, a);
        t_hi = std::min(t_hi, b);
    }
    return t_lo < t_hi;
}

}  // namespace detail

inline std::string render_svg(const SvgScene& scene) {
    const bool has_raster = scene.raster != nullptr;
    const bool has_spine = scene.spine != nullptr && !scene.spine->edges.empty();
    if (!has_raster && !has_spine)
        throw std::invalid_argument("empty scene: need a raster or a spine");
    detail::SvgFrame frame{has_raster
                               ? scene.raster->window
                               : scene.window.value_or(Window(-1, 1, -1, 1, 16))};
    if (!has_raster && !scene.window)
        throw std::invalid_argument("a spine-only scene needs an explicit window");

    const int res = frame.window.resolution;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "viewBox=\"0 0 " << res << ' ' << res << "\" width=\"640\" "
        << "height=\"640\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"" << res << "\" height=\"" << res
        << "\" fill=\"white\"/>\n";

    if (has_raster) {
        const AmoebaRaster& raster = *scene.raster;
        for (int j = 0; j < res; ++j) {
            std::string d;
            int i = 0;
            while (i < res) {
                if (!raster.member(i, j)) {
                    ++i;
                    continue;
                }
                int run = 0;
                while (i + run < res && raster.member(i + run, j)) ++run;
                // Row j covers world y in [ymin + j*h, ymin + (j+1)*h],
                // which is the SVG unit row at height res - 1 - j.
                d += "M" + std::to_string(i) + " " + std::to_string(res - 1 - j) +
                     "h" + std::to_string(run) + "v1h-" + std::to_string(run) +
                     "z";
                i += run;
            }
            if (!d.empty())
                out << "<path d=\"" << d << "\" fill=\"#cccccc\"/>\n";
        }
    }

    if (has_spine) {
        const TropicalSpine& spine = *scene.spine;
        auto point = [&](int idx) {
            const RationalPoint& p = spine.vertices[static_cast<std::size_t>(idx)];
            return std::pair<double, double>(p.x.to_double(), p.y.to_double());
        };
        for (const SpineEdge& e : spine.edges) {
            double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
            if (e.kind == SpineEdge::Kind::Segment) {
                std::tie(x0, y0) = point(e.from);
                std::tie(x1, y1) = point(e.to);
            } else {
                double px, py;
                if (e.kind == SpineEdge::Kind::Ray) {
                    std::tie(px, py) = point(e.from);
                } else {
                    px = e.anchor.x.to_double();
                    py = e.anchor.y.to_double();
                }
                const double dx = static_cast<double>(e.direction[0]);
                const double dy = static_cast<double>(e.direction[1]);
                double t_lo = e.kind == SpineEdge::Kind::Ray ? 0.0 : -1e18;
                double t_hi = 1e18;
                if (!detail::clip_parameter(frame, px, py, dx, dy, t_lo, t_hi))
                    continue;
                x0 = px + t_lo * dx;
                y0 = py + t_lo * dy;
                x1 = px + t_hi * dx;
                y1 = py + t_hi * dy;
            }
            out << "<line x1=\"" << detail::svg_num(frame.sx(x0)) << "\" y1=\""
                << detail::svg_num(frame.sy(y0)) << "\" x2=\""
                << detail::svg_num(frame.sx(x1)) << "\" y2=\""
                << detail::svg_num(frame.sy(y1)) << "\" stroke=\"black\" "
                << "stroke-width=\"" << e.weight << "\"/>\n";
        }
    }

    if (scene.components != nullptr) {
        for (const ComplementComponent& c : *scene.components) {
            if (!c.order) continue;
            const double cx = c.deep_pixel.first + 0.5;
            const double cy = res - 1 - c.deep_pixel.second + 0.5;
            out << "<text x=\"" << detail::svg_num(cx) << "\" y=\""
                << detail::svg_num(cy) << "\" font-family=\"monospace\" "
                << "font-size=\"" << std::max(4, res / 32) << "\">("
                << (*c.order)[0] << "," << (*c.order)[1] << ")</text>\n";
        }
    }

    out << "</svg>\n";
    return out.str();
}

}  // namespace syz

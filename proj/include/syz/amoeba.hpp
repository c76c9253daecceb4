#pragma once

// Amoeba rasterization for bivariate Laurent polynomials.  The amoeba is
// the image of the zero set under coordinatewise log|.|; we sample it by
// slicing: fix the first coordinate on a column center and a phase, solve
// for the roots in the other variable, and mark the pixel containing each
// witness.  A symmetric pass along rows catches features that are nearly
// vertical or exponentially pinched, which the column pass cannot reach
// at any realistic angular density.

#include <cmath>
#include <complex>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "syz/common.hpp"
#include "syz/laurent.hpp"
#include "syz/polytope.hpp"
#include "syz/ronkin.hpp"
#include "syz/roots.hpp"

namespace syz {

/// Coordinatewise log of moduli; the map whose image of a zero set is the
/// amoeba.  Any zero coordinate is outside the domain.
inline std::vector<double> log_map(const std::vector<Complex>& z) {
    std::vector<double> out(z.size());
    for (std::size_t j = 0; j < z.size(); ++j) {
        if (z[j] == Complex(0.0, 0.0))
            throw std::domain_error("log_map: zero coordinate");
        out[j] = std::log(std::abs(z[j]));
    }
    return out;
}

struct Window {
    double xmin = -1.0;
    double xmax = 1.0;
    double ymin = -1.0;
    double ymax = 1.0;
    int resolution = 16;

    Window(double x0, double x1, double y0, double y1, int res)
        : xmin(x0), xmax(x1), ymin(y0), ymax(y1), resolution(res) {
        if (!(xmin < xmax) || !(ymin < ymax))
            throw std::invalid_argument("window must have positive extent");
        if (resolution < 16)
            throw std::invalid_argument("window resolution must be at least 16");
    }

    double pixel_width() const { return (xmax - xmin) / resolution; }
    double pixel_height() const { return (ymax - ymin) / resolution; }
    double center_x(int i) const { return xmin + (i + 0.5) * pixel_width(); }
    double center_y(int j) const { return ymin + (j + 0.5) * pixel_height(); }

    /// Pixel containing (x, y) under the half-open box convention
    /// [xmin + i*w, xmin + (i+1)*w); returns nothing outside the window.
    std::optional<std::pair<int, int>> locate(double x, double y) const {
        int i = static_cast<int>(std::floor((x - xmin) / pixel_width()));
        int j = static_cast<int>(std::floor((y - ymin) / pixel_height()));
        if (i < 0 || i >= resolution || j < 0 || j >= resolution) return std::nullopt;
        return std::make_pair(i, j);
    }
};

struct AmoebaRaster {
    Window window;
    std::vector<std::uint32_t> hits;  // row-major: hits[j*resolution + i]

    explicit AmoebaRaster(const Window& w)
        : window(w), hits(static_cast<std::size_t>(w.resolution) *
                          static_cast<std::size_t>(w.resolution)) {}

    std::uint32_t hit_count(int i, int j) const {
        return hits[static_cast<std::size_t>(j) *
                        static_cast<std::size_t>(window.resolution) +
                    static_cast<std::size_t>(i)];
    }
    bool member(int i, int j) const { return hit_count(i, j) > 0; }

    std::size_t marked_count() const {
        std::size_t n = 0;
        for (std::uint32_t h : hits) n += h > 0 ? 1 : 0;
        return n;
    }
};

namespace detail {

/// Roots in (complex*) of a univariate slice: strips the Laurent monomial
/// prefactor, drops exact leading zeros (degree drops at special phases),
/// and discards exact zero roots.  An identically-zero slice means the
/// whole fiber lies in the zero set; reported via the flag.
struct SliceRoots {
    std::vector<Complex> roots;
    bool whole_fiber = false;
};

inline SliceRoots slice_roots(const LaurentPolynomial& f, int free_var,
                              const std::vector<Complex>& fixed) {
    UnivariateSlice slice = univariate_slice(f, free_var, fixed);
    std::vector<Complex> c = slice.coefficients;
    while (!c.empty() && c.back() == Complex(0.0, 0.0)) c.pop_back();
    SliceRoots out;
    if (c.empty()) {
        out.whole_fiber = true;
        return out;
    }
    if (c.size() < 2) return out;  // nonzero monomial: no roots in complex*
    UnivariateRoots r = univariate_roots(c);
    for (const Complex& z : r.roots)
        if (z != Complex(0.0, 0.0)) out.roots.push_back(z);
    return out;
}

}  // namespace detail

/// Rasterize the amoeba of a bivariate Laurent polynomial.  The default
/// angular sample count is twice the resolution.  Column and row passes
/// are independent work units merged by index, so the raster is bitwise
/// identical for any worker count.
inline AmoebaRaster rasterize_amoeba(const LaurentPolynomial& f, const Window& window,
                                     int angular_samples = 0) {
    if (f.num_vars() != 2)
        throw std::invalid_argument("rasterize_amoeba requires a bivariate polynomial");
    if (angular_samples < 0)
        throw std::invalid_argument("angular sample count must be positive");
    const int res = window.resolution;
    const int samples = angular_samples > 0 ? angular_samples : 2 * res;
    AmoebaRaster raster(window);
    if (f.terms().size() == 1) return raster;  // a monomial never vanishes

    const double two_pi = 8.0 * std::atan(1.0);

    // slots[c] collects the cross indices hit in column c (pass 0) or row
    // c (pass 1); witnesses of the column pass land in that very column.
    for (int pass = 0; pass < 2; ++pass) {
        std::vector<std::vector<int>> slots(static_cast<std::size_t>(res));
        const int fixed_var = pass == 0 ? 0 : 1;
        const int free_var = 1 - fixed_var;
        parallel_for(static_cast<std::size_t>(res), [&](std::size_t c) {
            const int ci = static_cast<int>(c);
            const double fixed_coord =
                pass == 0 ? window.center_x(ci) : window.center_y(ci);
            const double radius = std::exp(fixed_coord);
            std::vector<int>& hits_here = slots[c];
            for (int s = 0; s < samples; ++s) {
                const double angle = two_pi * s / samples;
                std::vector<Complex> fixed(2);
                fixed[static_cast<std::size_t>(fixed_var)] = std::polar(radius, angle);
                detail::SliceRoots found = detail::slice_roots(f, free_var, fixed);
                if (found.whole_fiber) {
                    for (int k = 0; k < res; ++k) hits_here.push_back(k);
                    continue;
                }
                for (const Complex& root : found.roots) {
                    const double coord = std::log(std::abs(root));
                    const double lo = free_var == 0 ? window.xmin : window.ymin;
                    const double width = free_var == 0 ? window.pixel_width()
                                                       : window.pixel_height();
                    const int k = static_cast<int>(std::floor((coord - lo) / width));
                    if (k >= 0 && k < res) hits_here.push_back(k);
                }
            }
        });
        for (int c = 0; c < res; ++c)
            for (int k : slots[static_cast<std::size_t>(c)]) {
                const int i = pass == 0 ? c : k;
                const int j = pass == 0 ? k : c;
                ++raster.hits[static_cast<std::size_t>(j) * static_cast<std::size_t>(res) +
                              static_cast<std::size_t>(i)];
            }
    }
    return raster;
}

/// Patchworking coefficients on the d-fold dilated standard triangle:
/// alternating signs with a concave Gaussian magnitude centered at the
/// barycenter.  This choice opens the maximal number of holes in the
/// amoeba (one per interior lattice point) for moderate falloff rates.
inline LaurentPolynomial viro_polynomial(int d, double lambda = 4.0) {
    if (d < 1) throw std::invalid_argument("degree must be positive");
    if (!(lambda > 0.0)) throw std::invalid_argument("falloff rate must be positive");
    const double b = d / 3.0;
    std::vector<Term> terms;
    for (int m1 = 0; m1 <= d; ++m1)
        for (int m2 = 0; m1 + m2 <= d; ++m2) {
            const double d2 = (m1 - b) * (m1 - b) + (m2 - b) * (m2 - b);
            const double sign = (m1 + m2) % 2 == 0 ? 1.0 : -1.0;
            terms.push_back({{m1, m2}, Complex(sign * std::exp(-lambda * d2), 0.0)});
        }
    return LaurentPolynomial(2, terms);
}

struct ComplementComponent {
    std::vector<std::pair<int, int>> pixels;  // (i, j), discovery order
    bool bounded = false;
    std::optional<Exponent> order;            // lattice order, when determined
    double ronkin_constant = 0.0;             // c_E with N(x) ~ <order, x> + c_E
    std::pair<int, int> deep_pixel{0, 0};     // farthest pixel from the amoeba
    int deep_distance = 0;                    // in pixels; -1 if raster is empty
};

/// Flood-fill the unmarked pixels into 4-connected components, locate
/// each component's deepest pixel by a multi-source BFS distance
/// transform from the marked set, and read off the lattice order and
/// affine constant of the Ronkin function there.  Orders of distinct
/// components must be distinct; a collision means the raster resolution
/// is too low to separate the components.
inline std::vector<ComplementComponent> complement_components(
    const AmoebaRaster& raster, const LaurentPolynomial& f, int grid = 256) {
    const int res = raster.window.resolution;
    const auto index = [res](int i, int j) {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(res) +
               static_cast<std::size_t>(i);
    };

    // Distance (in BFS steps) from each pixel to the marked set.
    std::vector<int> dist(static_cast<std::size_t>(res) * static_cast<std::size_t>(res),
                          -1);
    std::deque<std::pair<int, int>> queue;
    for (int j = 0; j < res; ++j)
        for (int i = 0; i < res; ++i)
            if (raster.member(i, j)) {
                dist[index(i, j)] = 0;
                queue.emplace_back(i, j);
            }
    const int di[4] = {1, -1, 0, 0};
    const int dj[4] = {0, 0, 1, -1};
    while (!queue.empty()) {
        auto [i, j] = queue.front();
        queue.pop_front();
        for (int k = 0; k < 4; ++k) {
            int ni = i + di[k], nj = j + dj[k];
            if (ni < 0 || ni >= res || nj < 0 || nj >= res) continue;
            if (dist[index(ni, nj)] >= 0) continue;
            dist[index(ni, nj)] = dist[index(i, j)] + 1;
            queue.emplace_back(ni, nj);
        }
    }

    std::vector<ComplementComponent> components;
    std::vector<bool> seen(static_cast<std::size_t>(res) * static_cast<std::size_t>(res),
                           false);
    for (int j0 = 0; j0 < res; ++j0)
        for (int i0 = 0; i0 < res; ++i0) {
            if (raster.member(i0, j0) || seen[index(i0, j0)]) continue;
            ComplementComponent comp;
            std::vector<std::pair<int, int>> stack = {{i0, j0}};
            seen[index(i0, j0)] = true;
            bool touches_frame = false;
            std::pair<int, int> deep{i0, j0};
            int deep_d = dist[index(i0, j0)];
            while (!stack.empty()) {
                auto [i, j] = stack.back();
                stack.pop_back();
                comp.pixels.emplace_back(i, j);
                if (i == 0 || i == res - 1 || j == 0 || j == res - 1)
                    touches_frame = true;
                int d = dist[index(i, j)];
                // Prefer larger distance; break ties toward smaller (j, i)
                // so the deep pixel is independent of traversal order.
                if (d == -1) d = res * res;
                int best = deep_d == -1 ? res * res : deep_d;
                if (d > best || (d == best && std::make_pair(j, i) <
                                                  std::make_pair(deep.second, deep.first))) {
                    deep = {i, j};
                    deep_d = dist[index(i, j)];
                }
                for (int k = 0; k < 4; ++k) {
                    int ni = i + di[k], nj = j + dj[k];
                    if (ni < 0 || ni >= res || nj < 0 || nj >= res) continue;
                    if (raster.member(ni, nj) || seen[index(ni, nj)]) continue;
                    seen[index(ni, nj)] = true;
                    stack.emplace_back(ni, nj);
                }
            }
            comp.bounded = !touches_frame;
            comp.deep_pixel = deep;
            comp.deep_distance = deep_d;
            components.push_back(std::move(comp));
        }

    // Lattice order and affine constant at the deep pixel.  A component
    // thinner than two pixels everywhere stays undetermined.
    for (ComplementComponent& comp : components) {
        bool deep_enough = comp.deep_distance >= 2 || comp.deep_distance == -1;
        if (!deep_enough) continue;
        const double x = raster.window.center_x(comp.deep_pixel.first);
        const double y = raster.window.center_y(comp.deep_pixel.second);
        try {
            Exponent order = ronkin_order(f, {x, y}, grid);
            double value = ronkin_value(f, {x, y}, grid).value;
            comp.ronkin_constant = value - static_cast<double>(order[0]) * x -
                                   static_cast<double>(order[1]) * y;
            comp.order = std::move(order);
        } catch (const std::runtime_error&) {
            comp.order = std::nullopt;  // gradient not integral: undetermined
        }
    }

    std::map<Exponent, int> order_owner;
    for (std::size_t k = 0; k < components.size(); ++k) {
        if (!components[k].order) continue;
        auto [it, fresh] = order_owner.try_emplace(*components[k].order,
                                                   static_cast<int>(k));
        if (!fresh)
            throw std::runtime_error(
                "complement_components: two components share a lattice order; "
                "raster resolution is too low");
    }
    return components;
}

}  // namespace syz

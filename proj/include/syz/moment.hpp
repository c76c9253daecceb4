#pragma once

// Algebraic moment map and the compactified amoeba: the zero set is
// pushed into the Newton polytope by the weight map
//   mu(z) = sum_m |z^m| m / sum_m |z^m|
// over the lattice points m of the polytope.  Weights are evaluated in
// log space so that points far out on the torus (which map near the
// polytope boundary) do not overflow.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/laurent.hpp"
#include "syz/polytope.hpp"

namespace syz {

/// Moment map value for a point of the algebraic torus.  The result lies
/// in the relative interior of the convex hull of the support.
inline std::vector<double> moment_map(const std::vector<Exponent>& support,
                                      const std::vector<Complex>& z) {
    if (support.empty())
        throw std::invalid_argument("moment_map requires a nonempty support");
    const std::size_t n = z.size();
    for (const Exponent& m : support)
        if (m.size() != n)
            throw std::invalid_argument("support dimension does not match the point");
    std::vector<double> x = log_map(z);  // rejects zero coordinates

    std::vector<double> logw(support.size());
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < support.size(); ++t) {
        double dot = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            dot += static_cast<double>(support[t][j]) * x[j];
        logw[t] = dot;
        top = std::max(top, dot);
    }
    std::vector<double> out(n, 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < support.size(); ++t) {
        double w = std::exp(logw[t] - top);
        total += w;
        for (std::size_t j = 0; j < n; ++j)
            out[j] += w * static_cast<double>(support[t][j]);
    }
    for (double& c : out) c /= total;
    return out;
}

struct CompactifiedAmoeba {
    NewtonPolytope polytope;
    AmoebaRaster raster;  // window: padded bounding box of the polytope
};

/// Raster of the closure of mu(V_f) inside the Newton polytope.  Points
/// of the zero set are produced by the same slicing scheme as the plain
/// amoeba, with slice positions spanning [-log_range, log_range] in the
/// fixed coordinate; each solved point is pushed through the moment map.
inline CompactifiedAmoeba compactified_amoeba(const LaurentPolynomial& f,
                                              int resolution,
                                              double log_range = 12.0,
                                              int angular_samples = 0) {
    if (f.num_vars() != 2)
        throw std::invalid_argument("compactified_amoeba requires two variables");
    if (!(log_range > 0.0))
        throw std::invalid_argument("log range must be positive");
    NewtonPolytope polytope = newton_polytope(f);
    const std::vector<Exponent> support = polytope.lattice_points();

    double x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    bool first = true;
    for (const Exponent& v : polytope.vertices()) {
        double vx = static_cast<double>(v[0]), vy = static_cast<double>(v[1]);
        x0 = first ? vx : std::min(x0, vx);
        x1 = first ? vx : std::max(x1, vx);
        y0 = first ? vy : std::min(y0, vy);
        y1 = first ? vy : std::max(y1, vy);
        first = false;
    }
    const double pad_x = std::max(0.05 * (x1 - x0), 0.05);
    const double pad_y = std::max(0.05 * (y1 - y0), 0.05);
    Window window(x0 - pad_x, x1 + pad_x, y0 - pad_y, y1 + pad_y, resolution);
    CompactifiedAmoeba out{std::move(polytope), AmoebaRaster(window)};
    if (f.terms().size() == 1) return out;  // a monomial never vanishes

    const int samples = angular_samples > 0 ? angular_samples : 2 * resolution;
    const int slices = resolution;
    const double two_pi = 8.0 * std::atan(1.0);

    for (int pass = 0; pass < 2; ++pass) {
        const int fixed_var = pass == 0 ? 0 : 1;
        const int free_var = 1 - fixed_var;
        std::vector<std::vector<std::pair<int, int>>> slots(
            static_cast<std::size_t>(slices));
        parallel_for(static_cast<std::size_t>(slices), [&](std::size_t c) {
            const double coord = -log_range +
                                 (static_cast<double>(c) + 0.5) * 2.0 * log_range /
                                     static_cast<double>(slices);
            const double radius = std::exp(coord);
            for (int s = 0; s < samples; ++s) {
                const double angle = two_pi * s / samples;
                std::vector<Complex> point(2);
                point[static_cast<std::size_t>(fixed_var)] = std::polar(radius, angle);
                detail::SliceRoots found = detail::slice_roots(f, free_var, point);
                if (found.whole_fiber) continue;  // measure-zero pathology
                for (const Complex& root : found.roots) {
                    point[static_cast<std::size_t>(free_var)] = root;
                    std::vector<double> mu = moment_map(support, point);
                    auto px = window.locate(mu[0], mu[1]);
                    if (px) slots[c].push_back(*px);
                }
            }
        });
        for (const auto& slot : slots)
            for (const auto& [i, j] : slot)
                ++out.raster.hits[static_cast<std::size_t>(j) *
                                      static_cast<std::size_t>(resolution) +
                                  static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace syz

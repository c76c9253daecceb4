#pragma once

// Tropical spine: the corner locus of F(x) = max_E (<nu_E, x> + c_E) built
// from the complement-component data of an amoeba.  The arrangement is
// computed exactly over the rationals (gradients are lattice vectors and
// offsets are rounded to a fixed denominator), so the combinatorial
// structure — vertices, edge incidences, balancing — is free of floating
// point ambiguity.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/laurent.hpp"
#include "syz/rational.hpp"

namespace syz {

struct SpineFunction {
    Exponent gradient;  // lattice vector, length 2
    Rational offset;
};

struct SpineEdge {
    enum class Kind { Segment, Ray, Line };
    Kind kind = Kind::Segment;
    int side_a = 0;  // the two extreme functions attaining along the edge,
    int side_b = 0;  // sorted by index
    std::int64_t weight = 1;  // lattice length of the gradient difference
    int from = -1;            // vertex index (segments and rays)
    int to = -1;              // vertex index (segments only)
    std::array<std::int64_t, 2> direction{};  // primitive; rays point outward
    RationalPoint anchor;                     // a point on the edge (lines)
};

struct TropicalSpine {
    std::vector<SpineFunction> functions;
    std::vector<RationalPoint> vertices;  // lexicographically sorted
    std::vector<SpineEdge> edges;
};

namespace detail {

inline std::array<std::int64_t, 2> primitive_direction(std::int64_t dx,
                                                       std::int64_t dy) {
    std::int64_t g = gcd64(dx < 0 ? -dx : dx, dy < 0 ? -dy : dy);
    if (g == 0) throw std::logic_error("zero vector has no direction");
    return {dx / g, dy / g};
}

inline Rational dot(std::int64_t hx, std::int64_t hy, const RationalPoint& p) {
    return Rational(hx) * p.x + Rational(hy) * p.y;
}

}  // namespace detail

/// Exact corner locus of max(<gradient, x> + offset) over the given
/// functions.  Fewer than two distinct functions give an empty spine.
inline TropicalSpine build_spine(const std::vector<SpineFunction>& input) {
    TropicalSpine spine;
    for (const SpineFunction& f : input) {
        if (f.gradient.size() != 2)
            throw std::invalid_argument("spine functions must have planar gradients");
        bool duplicate = false;
        for (const SpineFunction& g : spine.functions)
            if (g.gradient == f.gradient && g.offset == f.offset) duplicate = true;
        if (!duplicate) spine.functions.push_back(f);
    }
    const std::vector<SpineFunction>& fns = spine.functions;
    const int n = static_cast<int>(fns.size());
    if (n < 2) return spine;

    struct RawEdge {
        SpineEdge::Kind kind;
        std::optional<RationalPoint> from_pt, to_pt;
        std::array<std::int64_t, 2> direction;
        RationalPoint anchor;
        int side_a, side_b;
        std::int64_t weight;
    };
    std::vector<RawEdge> raws;

    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            const std::int64_t gx = fns[static_cast<std::size_t>(a)].gradient[0] -
                                    fns[static_cast<std::size_t>(b)].gradient[0];
            const std::int64_t gy = fns[static_cast<std::size_t>(a)].gradient[1] -
                                    fns[static_cast<std::size_t>(b)].gradient[1];
            if (gx == 0 && gy == 0) continue;  // parallel graphs never tie at the max
            const std::array<std::int64_t, 2> u = detail::primitive_direction(-gy, gx);
            // Base point of the tie line <g, p> = off_b - off_a.
            const Rational rhs = fns[static_cast<std::size_t>(b)].offset -
                                 fns[static_cast<std::size_t>(a)].offset;
            const RationalPoint p0 = gx != 0
                                         ? RationalPoint{rhs / Rational(gx), Rational(0)}
                                         : RationalPoint{Rational(0), rhs / Rational(gy)};

            bool dominated = false;
            std::optional<Rational> lo, hi;
            std::vector<int> tie = {a, b};
            for (int k = 0; k < n && !dominated; ++k) {
                if (k == a || k == b) continue;
                const std::int64_t hx = fns[static_cast<std::size_t>(a)].gradient[0] -
                                        fns[static_cast<std::size_t>(k)].gradient[0];
                const std::int64_t hy = fns[static_cast<std::size_t>(a)].gradient[1] -
                                        fns[static_cast<std::size_t>(k)].gradient[1];
                const std::int64_t coeff = hx * u[0] + hy * u[1];
                const Rational bound = (fns[static_cast<std::size_t>(k)].offset -
                                        fns[static_cast<std::size_t>(a)].offset) -
                                       detail::dot(hx, hy, p0);
                if (coeff == 0) {
                    if (bound > Rational(0))
                        dominated = true;  // k beats the pair on the whole line
                    else if (bound == Rational(0))
                        tie.push_back(k);  // k ties identically: collinear family
                    continue;
                }
                const Rational t = bound / Rational(coeff);
                if (coeff > 0) {
                    if (!lo || t > *lo) lo = t;
                } else {
                    if (!hi || t < *hi) hi = t;
                }
            }
            if (dominated) continue;
            if (lo && hi && !(*lo < *hi)) continue;  // empty or a single point
            if (tie.size() > 2) {
                // A collinear tie family generates this edge once, from its
                // two smallest member indices.
                std::sort(tie.begin(), tie.end());
                if (tie[0] != a || tie[1] != b) continue;
            }
            // The two sides of the edge are the extreme gradients of the tie
            // family along the normal direction g.
            int smin = tie[0], smax = tie[0];
            auto score = [&](int k) {
                return gx * fns[static_cast<std::size_t>(k)].gradient[0] +
                       gy * fns[static_cast<std::size_t>(k)].gradient[1];
            };
            for (int k : tie) {
                if (score(k) < score(smin)) smin = k;
                if (score(k) > score(smax)) smax = k;
            }
            const std::int64_t wx = fns[static_cast<std::size_t>(smax)].gradient[0] -
                                    fns[static_cast<std::size_t>(smin)].gradient[0];
            const std::int64_t wy = fns[static_cast<std::size_t>(smax)].gradient[1] -
                                    fns[static_cast<std::size_t>(smin)].gradient[1];

            RawEdge raw;
            raw.side_a = std::min(smin, smax);
            raw.side_b = std::max(smin, smax);
            raw.weight = gcd64(wx < 0 ? -wx : wx, wy < 0 ? -wy : wy);
            raw.anchor = p0;
            auto at = [&](const Rational& t) {
                return RationalPoint{p0.x + t * Rational(u[0]),
                                     p0.y + t * Rational(u[1])};
            };
            if (lo && hi) {
                raw.kind = SpineEdge::Kind::Segment;
                raw.from_pt = at(*lo);
                raw.to_pt = at(*hi);
                raw.direction = u;
            } else if (lo) {
                raw.kind = SpineEdge::Kind::Ray;
                raw.from_pt = at(*lo);
                raw.direction = u;
            } else if (hi) {
                raw.kind = SpineEdge::Kind::Ray;
                raw.from_pt = at(*hi);
                raw.direction = {-u[0], -u[1]};
            } else {
                raw.kind = SpineEdge::Kind::Line;
                raw.direction = u;
            }
            raws.push_back(std::move(raw));
        }
    }

    std::set<RationalPoint> points;
    for (const RawEdge& raw : raws) {
        if (raw.from_pt) points.insert(*raw.from_pt);
        if (raw.to_pt) points.insert(*raw.to_pt);
    }
    spine.vertices.assign(points.begin(), points.end());
    std::map<RationalPoint, int> vertex_index;
    for (std::size_t i = 0; i < spine.vertices.size(); ++i)
        vertex_index[spine.vertices[i]] = static_cast<int>(i);

    for (const RawEdge& raw : raws) {
        SpineEdge e;
        e.kind = raw.kind;
        e.side_a = raw.side_a;
        e.side_b = raw.side_b;
        e.weight = raw.weight;
        e.direction = raw.direction;
        e.anchor = raw.anchor;
        if (raw.from_pt) e.from = vertex_index.at(*raw.from_pt);
        if (raw.to_pt) e.to = vertex_index.at(*raw.to_pt);
        spine.edges.push_back(std::move(e));
    }
    return spine;
}

/// Build the spine from the amoeba's complement data: every component
/// with a determined order contributes its affine support function.
inline TropicalSpine build_spine(const std::vector<ComplementComponent>& components) {
    std::vector<SpineFunction> fns;
    for (const ComplementComponent& c : components)
        if (c.order) fns.push_back({*c.order, rational_round(c.ronkin_constant)});
    return build_spine(fns);
}

struct BalanceReport {
    bool balanced = true;
    std::vector<int> unbalanced_vertices;
};

/// Exact integer balancing check: at every vertex the incident primitive
/// directions, weighted by the lattice lengths of the gradient jumps,
/// must sum to zero.
inline BalanceReport check_balancing(const TropicalSpine& spine) {
    std::vector<std::array<int128, 2>> sums(spine.vertices.size(), {int128(0), int128(0)});
    auto accumulate = [&](int v, std::int64_t w, std::int64_t dx, std::int64_t dy) {
        sums[static_cast<std::size_t>(v)][0] += int128(w) * dx;
        sums[static_cast<std::size_t>(v)][1] += int128(w) * dy;
    };
    for (const SpineEdge& e : spine.edges) {
        switch (e.kind) {
            case SpineEdge::Kind::Segment:
                accumulate(e.from, e.weight, e.direction[0], e.direction[1]);
                accumulate(e.to, e.weight, -e.direction[0], -e.direction[1]);
                break;
            case SpineEdge::Kind::Ray:
                accumulate(e.from, e.weight, e.direction[0], e.direction[1]);
                break;
            case SpineEdge::Kind::Line:
                break;
        }
    }
    BalanceReport report;
    for (std::size_t v = 0; v < sums.size(); ++v)
        if (sums[v][0] != 0 || sums[v][1] != 0) {
            report.balanced = false;
            report.unbalanced_vertices.push_back(static_cast<int>(v));
        }
    return report;
}

/// Number of bounded 2-cells of the subdivision induced by the max: the
/// cell of a function is bounded exactly when its recession cone is
/// trivial, and only functions appearing as an edge side have a cell of
/// full dimension.
inline std::size_t bounded_faces(const TropicalSpine& spine) {
    std::set<int> sides;
    for (const SpineEdge& e : spine.edges) {
        sides.insert(e.side_a);
        sides.insert(e.side_b);
    }
    std::size_t count = 0;
    for (int k : sides) {
        // Recession cone: directions d with <grad_j - grad_k, d> <= 0 for
        // all j.  In the plane a nontrivial cone must contain one of the
        // rotated constraint normals, so testing those is exact.
        std::vector<std::array<std::int64_t, 2>> normals;
        for (std::size_t j = 0; j < spine.functions.size(); ++j) {
            std::int64_t nx = spine.functions[j].gradient[0] -
                              spine.functions[static_cast<std::size_t>(k)].gradient[0];
            std::int64_t ny = spine.functions[j].gradient[1] -
                              spine.functions[static_cast<std::size_t>(k)].gradient[1];
            if (nx != 0 || ny != 0) normals.push_back({nx, ny});
        }
        bool nontrivial = normals.empty();
        for (std::size_t c = 0; c < normals.size() && !nontrivial; ++c) {
            for (int sign : {1, -1}) {
                std::int64_t dx = -sign * normals[c][1];
                std::int64_t dy = sign * normals[c][0];
                bool inside = true;
                for (const auto& m : normals)
                    if (m[0] * dx + m[1] * dy > 0) {
                        inside = false;
                        break;
                    }
                if (inside) {
                    nontrivial = true;
                    break;
                }
            }
        }
        if (!nontrivial) ++count;
    }
    return count;
}

struct RetractReport {
    bool proximity_pass = true;
    std::size_t samples_checked = 0;
    std::vector<std::pair<double, double>> violations;  // capped at 32 entries
    std::size_t bounded_components = 0;
    std::size_t bounded_face_count = 0;
    bool face_count_match = true;
    bool pass() const { return proximity_pass && face_count_match; }
};

/// Raster-level shadow of the retract property: every spine point inside
/// the window must lie within two pixels of a marked pixel, and the
/// bounded complement components must match the bounded faces one-to-one
/// in count.
inline RetractReport spine_retract_check(const AmoebaRaster& raster,
                                         const TropicalSpine& spine) {
    RetractReport report;
    const Window& w = raster.window;
    const int res = w.resolution;

    // Count bounded complement components directly on the raster.
    {
        std::vector<bool> seen(static_cast<std::size_t>(res) *
                                   static_cast<std::size_t>(res),
                               false);
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int j0 = 0; j0 < res; ++j0)
            for (int i0 = 0; i0 < res; ++i0) {
                std::size_t start = static_cast<std::size_t>(j0) *
                                        static_cast<std::size_t>(res) +
                                    static_cast<std::size_t>(i0);
                if (raster.member(i0, j0) || seen[start]) continue;
                seen[start] = true;
                std::vector<std::pair<int, int>> stack = {{i0, j0}};
                bool touches_frame = false;
                while (!stack.empty()) {
                    auto [i, j] = stack.back();
                    stack.pop_back();
                    if (i == 0 || i == res - 1 || j == 0 || j == res - 1)
                        touches_frame = true;
                    for (int k = 0; k < 4; ++k) {
                        int ni = i + di[k], nj = j + dj[k];
                        if (ni < 0 || ni >= res || nj < 0 || nj >= res) continue;
                        std::size_t idx = static_cast<std::size_t>(nj) *
                                              static_cast<std::size_t>(res) +
                                          static_cast<std::size_t>(ni);
                        if (raster.member(ni, nj) || seen[idx]) continue;
                        seen[idx] = true;
                        stack.emplace_back(ni, nj);
                    }
                }
                if (!touches_frame) ++report.bounded_components;
            }
    }
    report.bounded_face_count = bounded_faces(spine);
    report.face_count_match = report.bounded_components == report.bounded_face_count;

    // Proximity: sample every edge at half-pixel steps inside the window.
    const double step = 0.5 * std::min(w.pixel_width(), w.pixel_height());
    const double huge_t = 4.0 * (std::abs(w.xmin) + std::abs(w.xmax) +
                                 std::abs(w.ymin) + std::abs(w.ymax) + 1.0);
    auto near_marked = [&](double x, double y) {
        auto px = w.locate(x, y);
        if (!px) return true;  // outside the window: nothing to check
        for (int jj = px->second - 2; jj <= px->second + 2; ++jj)
            for (int ii = px->first - 2; ii <= px->first + 2; ++ii)
                if (ii >= 0 && ii < res && jj >= 0 && jj < res &&
                    raster.member(ii, jj))
                    return true;
        return false;
    };
    for (const SpineEdge& e : spine.edges) {
        double px, py, t0, t1;
        const double dx = static_cast<double>(e.direction[0]);
        const double dy = static_cast<double>(e.direction[1]);
        if (e.kind == SpineEdge::Kind::Line) {
            px = e.anchor.x.to_double();
            py = e.anchor.y.to_double();
            t0 = -huge_t;
            t1 = huge_t;
        } else {
            px = spine.vertices[static_cast<std::size_t>(e.from)].x.to_double();
            py = spine.vertices[static_cast<std::size_t>(e.from)].y.to_double();
            t0 = 0.0;
            if (e.kind == SpineEdge::Kind::Ray) {
                t1 = huge_t;
            } else {
                const RationalPoint& q = spine.vertices[static_cast<std::size_t>(e.to)];
                const double qx = q.x.to_double(), qy = q.y.to_double();
                t1 = std::abs(dx) >= std::abs(dy) ? (qx - px) / dx : (qy - py) / dy;
            }
        }
        // Clip the parameter interval to the window slabs.
        bool empty = false;
        auto clip = [&](double p, double d, double lo, double hi) {
            if (std::abs(d) < 1e-15) {
                if (p < lo || p > hi) empty = true;
                return;
            }
            double ta = (lo - p) / d, tb = (hi - p) / d;
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
        };
        clip(px, dx, w.xmin, w.xmax);
        clip(py, dy, w.ymin, w.ymax);
        if (empty || t0 > t1) continue;
        const double speed = std::hypot(dx, dy);
        const int steps =
            std::min(100000, 1 + static_cast<int>((t1 - t0) * speed / step));
        for (int s = 0; s <= steps; ++s) {
            const double t = t0 + (t1 - t0) * s / steps;
            const double x = px + t * dx, y = py + t * dy;
            ++report.samples_checked;
            if (!near_marked(x, y)) {
                report.proximity_pass = false;
                if (report.violations.size() < 32) report.violations.emplace_back(x, y);
            }
        }
    }
    return report;
}

}  // namespace syz

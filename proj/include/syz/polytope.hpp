#pragma once

// Newton polytopes over the integer lattice, dimension at most four.  All
// geometry here is exact: hull facets are found by brute-force enumeration
// with integer orientation predicates, which is entirely adequate for the
// small supports that arise and removes every epsilon from the pipeline.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "syz/laurent.hpp"
#include "syz/rational.hpp"

namespace syz {

/// Convex hull of a finite set of integer points, ambient dimension 1..4.
class NewtonPolytope {
  public:
    /// Facet inequality <normal, x> <= offset in projected coordinates
    /// (projected == ambient when the polytope is full-dimensional).
    struct Facet {
        std::vector<std::int64_t> normal;
        std::int64_t offset = 0;
    };

    explicit NewtonPolytope(std::vector<Exponent> points) {
        if (points.empty()) throw std::invalid_argument("empty point set has no hull");
        ambient_dim_ = static_cast<int>(points[0].size());
        if (ambient_dim_ < 1 || ambient_dim_ > 4)
            throw std::invalid_argument("ambient dimension must be 1 to 4");
        for (const Exponent& p : points)
            if (static_cast<int>(p.size()) != ambient_dim_)
                throw std::invalid_argument("inconsistent point arity");
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());
        points_ = std::move(points);
        build();
    }

    int ambient_dim() const { return ambient_dim_; }
    int dim() const { return dim_; }
    const std::vector<Exponent>& input_points() const { return points_; }
    const std::vector<Exponent>& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }
    const std::vector<int>& projection_columns() const { return proj_; }

    /// Exact membership test for an integer point (boundary included).
    bool contains(const Exponent& q) const {
        if (static_cast<int>(q.size()) != ambient_dim_)
            throw std::invalid_argument("point arity mismatch");
        if (!in_affine_span(q)) return false;
        if (dim_ == 0) return q == points_[0];
        std::vector<std::int64_t> qp = project(q);
        for (const Facet& f : facets_)
            if (dot(f.normal, qp) > f.offset) return false;
        return true;
    }

    /// Strict membership: inside every facet, full-dimensional polytopes
    /// only.  A lower-dimensional polytope has no interior points.
    bool strictly_contains(const Exponent& q) const {
        if (static_cast<int>(q.size()) != ambient_dim_)
            throw std::invalid_argument("point arity mismatch");
        if (dim_ < ambient_dim_) return false;
        std::vector<std::int64_t> qp = project(q);
        for (const Facet& f : facets_)
            if (dot(f.normal, qp) >= f.offset) return false;
        return true;
    }

    /// All lattice points of the hull, lexicographically sorted.
    std::vector<Exponent> lattice_points() const {
        return enumerate([&](const Exponent& q) { return contains(q); });
    }

    /// Interior lattice points (empty when dim < ambient dimension).
    std::vector<Exponent> interior_lattice_points() const {
        if (dim_ < ambient_dim_) return {};
        return enumerate([&](const Exponent& q) { return strictly_contains(q); });
    }

    /// Vertex centroid as exact rationals.
    std::vector<Rational> barycenter() const {
        std::vector<Rational> c(static_cast<std::size_t>(ambient_dim_), Rational(0));
        for (const Exponent& v : vertices_)
            for (int j = 0; j < ambient_dim_; ++j)
                c[static_cast<std::size_t>(j)] =
                    c[static_cast<std::size_t>(j)] + Rational(v[static_cast<std::size_t>(j)]);
        for (int j = 0; j < ambient_dim_; ++j)
            c[static_cast<std::size_t>(j)] =
                c[static_cast<std::size_t>(j)] / Rational(static_cast<std::int64_t>(vertices_.size()));
        return c;
    }

  private:
    static std::int64_t dot(const std::vector<std::int64_t>& a,
                            const std::vector<std::int64_t>& b) {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s;
    }

    std::vector<std::int64_t> project(const Exponent& q) const {
        std::vector<std::int64_t> r;
        r.reserve(proj_.size());
        for (int c : proj_) r.push_back(q[static_cast<std::size_t>(c)]);
        return r;
    }

    bool in_affine_span(const Exponent& q) const {
        if (dim_ == ambient_dim_) return true;
        // q - base must be a rational combination of the difference basis;
        // check by eliminating q - base against the stored echelon rows.
        std::vector<Rational> v(static_cast<std::size_t>(ambient_dim_));
        for (int j = 0; j < ambient_dim_; ++j)
            v[static_cast<std::size_t>(j)] =
                Rational(q[static_cast<std::size_t>(j)] - points_[0][static_cast<std::size_t>(j)]);
        for (const auto& row : echelon_) {
            int lead = row.second;
            Rational factor = v[static_cast<std::size_t>(lead)] / row.first[static_cast<std::size_t>(lead)];
            for (int j = 0; j < ambient_dim_; ++j)
                v[static_cast<std::size_t>(j)] =
                    v[static_cast<std::size_t>(j)] - factor * row.first[static_cast<std::size_t>(j)];
        }
        for (const Rational& c : v)
            if (!c.is_zero()) return false;
        return true;
    }

    template <typename Pred>
    std::vector<Exponent> enumerate(const Pred& pred) const {
        std::vector<std::int64_t> lo(static_cast<std::size_t>(ambient_dim_)),
            hi(static_cast<std::size_t>(ambient_dim_));
        for (int j = 0; j < ambient_dim_; ++j) {
            lo[static_cast<std::size_t>(j)] = hi[static_cast<std::size_t>(j)] =
                points_[0][static_cast<std::size_t>(j)];
            for (const Exponent& p : points_) {
                lo[static_cast<std::size_t>(j)] =
                    std::min(lo[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j)]);
                hi[static_cast<std::size_t>(j)] =
                    std::max(hi[static_cast<std::size_t>(j)], p[static_cast<std::size_t>(j)]);
            }
        }
        std::vector<Exponent> out;
        Exponent q(lo.begin(), lo.end());
        for (;;) {
            if (pred(q)) out.push_back(q);
            int j = ambient_dim_ - 1;
            while (j >= 0) {
                if (++q[static_cast<std::size_t>(j)] <= hi[static_cast<std::size_t>(j)]) break;
                q[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)];
                --j;
            }
            if (j < 0) break;
        }
        return out;  // enumeration order is already lexicographic
    }

    void build() {
        dim_ = affine_dim();
        choose_projection();
        build_echelon();
        if (dim_ == 0) {
            vertices_ = {points_[0]};
            return;
        }
        build_facets();
        build_vertices();
    }

    int affine_dim() const {
        std::vector<std::vector<int128>> diffs;
        for (std::size_t i = 1; i < points_.size(); ++i) {
            std::vector<int128> d(static_cast<std::size_t>(ambient_dim_));
            for (int j = 0; j < ambient_dim_; ++j)
                d[static_cast<std::size_t>(j)] =
                    points_[i][static_cast<std::size_t>(j)] - points_[0][static_cast<std::size_t>(j)];
            diffs.push_back(std::move(d));
        }
        return detail::integer_rank(std::move(diffs));
    }

    /// Pick dim() coordinates on which the affine span projects injectively.
    void choose_projection() {
        proj_.clear();
        if (dim_ == ambient_dim_) {
            for (int j = 0; j < ambient_dim_; ++j) proj_.push_back(j);
            return;
        }
        std::vector<int> cols;
        for (int j = 0; j < ambient_dim_; ++j) cols.push_back(j);
        std::vector<int> subset;
        if (!find_projection(cols, 0, subset))
            throw std::logic_error("no full-rank coordinate projection found");
    }

    bool find_projection(const std::vector<int>& cols, std::size_t start,
                         std::vector<int>& subset) {
        if (static_cast<int>(subset.size()) == dim_) {
            std::vector<std::vector<int128>> diffs;
            for (std::size_t i = 1; i < points_.size(); ++i) {
                std::vector<int128> d;
                for (int c : subset)
                    d.push_back(points_[i][static_cast<std::size_t>(c)] -
                                points_[0][static_cast<std::size_t>(c)]);
                diffs.push_back(std::move(d));
            }
            if (detail::integer_rank(std::move(diffs)) == dim_) {
                proj_ = subset;
                return true;
            }
            return false;
        }
        for (std::size_t i = start; i < cols.size(); ++i) {
            subset.push_back(cols[i]);
            if (find_projection(cols, i + 1, subset)) return true;
            subset.pop_back();
        }
        return false;
    }

    /// Row echelon form of the difference space, used for affine-span tests.
    void build_echelon() {
        echelon_.clear();
        if (dim_ == ambient_dim_) return;
        std::vector<std::vector<Rational>> rows;
        for (std::size_t i = 1; i < points_.size(); ++i) {
            std::vector<Rational> d(static_cast<std::size_t>(ambient_dim_));
            for (int j = 0; j < ambient_dim_; ++j)
                d[static_cast<std::size_t>(j)] =
                    Rational(points_[i][static_cast<std::size_t>(j)] -
                             points_[0][static_cast<std::size_t>(j)]);
            reduce_against_echelon(d);
            int lead = -1;
            for (int j = 0; j < ambient_dim_; ++j)
                if (!d[static_cast<std::size_t>(j)].is_zero()) {
                    lead = j;
                    break;
                }
            if (lead >= 0) echelon_.emplace_back(std::move(d), lead);
        }
    }

    void reduce_against_echelon(std::vector<Rational>& v) const {
        for (const auto& row : echelon_) {
            int lead = row.second;
            Rational factor = v[static_cast<std::size_t>(lead)] / row.first[static_cast<std::size_t>(lead)];
            for (int j = 0; j < ambient_dim_; ++j)
                v[static_cast<std::size_t>(j)] =
                    v[static_cast<std::size_t>(j)] - factor * row.first[static_cast<std::size_t>(j)];
        }
    }

    void build_facets() {
        facets_.clear();
        const int r = dim_;
        std::vector<std::vector<std::int64_t>> pp;
        pp.reserve(points_.size());
        for (const Exponent& p : points_) pp.push_back(project(p));
        if (r == 1) {
            std::int64_t lo = pp[0][0], hi = pp[0][0];
            for (const auto& q : pp) {
                lo = std::min(lo, q[0]);
                hi = std::max(hi, q[0]);
            }
            facets_.push_back({{1}, hi});
            facets_.push_back({{-1}, -lo});
            return;
        }
        std::vector<std::size_t> idx;
        enumerate_subsets(pp, idx, 0, static_cast<std::size_t>(r));
        std::sort(facets_.begin(), facets_.end(), [](const Facet& a, const Facet& b) {
            if (a.normal != b.normal) return a.normal < b.normal;
            return a.offset < b.offset;
        });
        facets_.erase(std::unique(facets_.begin(), facets_.end(),
                                  [](const Facet& a, const Facet& b) {
                                      return a.normal == b.normal && a.offset == b.offset;
                                  }),
                      facets_.end());
    }

    void enumerate_subsets(const std::vector<std::vector<std::int64_t>>& pp,
                           std::vector<std::size_t>& idx, std::size_t start,
                           std::size_t want) {
        if (idx.size() == want) {
            try_facet(pp, idx);
            return;
        }
        for (std::size_t i = start; i < pp.size(); ++i) {
            idx.push_back(i);
            enumerate_subsets(pp, idx, i + 1, want);
            idx.pop_back();
        }
    }

    void try_facet(const std::vector<std::vector<std::int64_t>>& pp,
                   const std::vector<std::size_t>& idx) {
        const int r = dim_;
        // Normal via generalized cross product of the r-1 difference vectors.
        std::vector<std::vector<std::int64_t>> d;
        for (std::size_t i = 1; i < idx.size(); ++i) {
            std::vector<std::int64_t> v(static_cast<std::size_t>(r));
            for (int j = 0; j < r; ++j)
                v[static_cast<std::size_t>(j)] = pp[idx[i]][static_cast<std::size_t>(j)] -
                                                 pp[idx[0]][static_cast<std::size_t>(j)];
            d.push_back(std::move(v));
        }
        std::vector<std::int64_t> a(static_cast<std::size_t>(r), 0);
        if (r == 2) {
            a[0] = -d[0][1];
            a[1] = d[0][0];
        } else if (r == 3) {
            a[0] = d[0][1] * d[1][2] - d[0][2] * d[1][1];
            a[1] = d[0][2] * d[1][0] - d[0][0] * d[1][2];
            a[2] = d[0][0] * d[1][1] - d[0][1] * d[1][0];
        } else {  // r == 4: cofactor expansion along the missing column
            for (int skip = 0; skip < 4; ++skip) {
                std::array<std::array<std::int64_t, 3>, 3> m{};
                for (int row = 0; row < 3; ++row) {
                    int cc = 0;
                    for (int col = 0; col < 4; ++col) {
                        if (col == skip) continue;
                        m[static_cast<std::size_t>(row)][static_cast<std::size_t>(cc++)] =
                            d[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
                    }
                }
                std::int64_t det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                                   m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                                   m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
                a[static_cast<std::size_t>(skip)] = (skip % 2 == 0) ? det : -det;
            }
        }
        bool zero = true;
        for (std::int64_t c : a) zero = zero && c == 0;
        if (zero) return;  // chosen points are affinely dependent
        std::int64_t b = dot(a, pp[idx[0]]);
        bool below = true, above = true;
        for (const auto& q : pp) {
            std::int64_t s = dot(a, q);
            below = below && s <= b;
            above = above && s >= b;
        }
        if (!below && !above) return;
        if (!below) {  // flip so the hull is on the <= side
            for (std::int64_t& c : a) c = -c;
            b = -b;
        }
        std::int64_t g = 0;
        for (std::int64_t c : a) g = gcd64(g, c);
        g = gcd64(g, b);
        if (g > 1) {
            for (std::int64_t& c : a) c /= g;
            b /= g;
        }
        facets_.push_back({std::move(a), b});
    }

    void build_vertices() {
        vertices_.clear();
        for (const Exponent& p : points_) {
            std::vector<std::int64_t> q = project(p);
            std::vector<std::vector<int128>> active;
            for (const Facet& f : facets_)
                if (dot(f.normal, q) == f.offset)
                    active.emplace_back(f.normal.begin(), f.normal.end());
            if (static_cast<int>(active.size()) >= dim_ &&
                detail::integer_rank(std::move(active)) == dim_)
                vertices_.push_back(p);
        }
    }

    int ambient_dim_ = 0;
    int dim_ = 0;
    std::vector<Exponent> points_;
    std::vector<Exponent> vertices_;
    std::vector<int> proj_;
    std::vector<Facet> facets_;
    std::vector<std::pair<std::vector<Rational>, int>> echelon_;
};

/// Newton polytope of a Laurent polynomial.
inline NewtonPolytope newton_polytope(const LaurentPolynomial& f) {
    if (f.is_zero()) throw std::invalid_argument("zero polynomial has no Newton polytope");
    return NewtonPolytope(f.support());
}

/// Interior lattice point count of the Newton polygon; for a curve in the
/// torus this bounds (and generically equals) the geometric genus.
inline std::size_t baker_genus(const LaurentPolynomial& f) {
    if (f.num_vars() != 2)
        throw std::invalid_argument("genus bound requires a two-variable polynomial");
    return newton_polytope(f).interior_lattice_points().size();
}

}  // namespace syz

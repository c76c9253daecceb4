#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <vector>

#include "syz/common.hpp"
#include "syz/laurent.hpp"
#include "syz/polytope.hpp"

using syz::Exponent;
using syz::NewtonPolytope;

namespace {

/// Independent 2D hull oracle (monotone chain), strict vertices only.
std::vector<Exponent> hull2d_oracle(std::vector<Exponent> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto cross = [](const Exponent& o, const Exponent& a, const Exponent& b) {
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    };
    std::vector<Exponent> h(2 * pts.size());
    std::size_t k = 0;
    for (const Exponent& p : pts) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
        const Exponent& p = pts[i];
        while (k >= lower && cross(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    h.resize(k - 1);
    std::sort(h.begin(), h.end());
    return h;
}

std::vector<Exponent> dilated_triangle_support(std::int64_t d) {
    std::vector<Exponent> pts;
    for (std::int64_t i = 0; i <= d; ++i)
        for (std::int64_t j = 0; i + j <= d; ++j) pts.push_back({i, j});
    return pts;
}

}  // namespace

TEST_CASE("dilated standard triangle has the expected lattice data", "[polytope]") {
    for (std::int64_t d = 1; d <= 6; ++d) {
        NewtonPolytope p(dilated_triangle_support(d));
        CAPTURE(d);
        CHECK(p.dim() == 2);
        CHECK(p.vertices() == std::vector<Exponent>{{0, 0}, {0, d}, {d, 0}});
        CHECK(p.lattice_points().size() ==
              static_cast<std::size_t>((d + 1) * (d + 2) / 2));
        CHECK(p.interior_lattice_points().size() ==
              static_cast<std::size_t>((d - 1) * (d - 2) / 2));
    }
}

TEST_CASE("quintic triangle: 21 lattice points, 6 interior", "[polytope]") {
    NewtonPolytope p(dilated_triangle_support(5));
    CHECK(p.lattice_points().size() == 21);
    std::vector<Exponent> interior = p.interior_lattice_points();
    std::vector<Exponent> expect = {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {3, 1}};
    CHECK(interior == expect);
}

TEST_CASE("hull of full support equals hull of its vertices alone", "[polytope]") {
    NewtonPolytope full(dilated_triangle_support(5));
    NewtonPolytope corners({{0, 0}, {5, 0}, {0, 5}});
    CHECK(full.vertices() == corners.vertices());
    CHECK(full.lattice_points() == corners.lattice_points());
}

TEST_CASE("vertices agree with independent 2D oracle on random sets", "[polytope]") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        syz::SplitMix64 rng(seed);
        std::vector<Exponent> pts;
        std::size_t count = 4 + rng.next_below(17);
        for (std::size_t i = 0; i < count; ++i)
            pts.push_back({static_cast<std::int64_t>(rng.next_below(21)) - 10,
                           static_cast<std::int64_t>(rng.next_below(21)) - 10});
        NewtonPolytope p(pts);
        CAPTURE(seed);
        if (p.dim() < 2) continue;  // oracle only covers full-dimensional sets
        CHECK(p.vertices() == hull2d_oracle(pts));
    }
}

TEST_CASE("hull is invariant under input permutation", "[polytope]") {
    std::vector<Exponent> pts = dilated_triangle_support(4);
    syz::SplitMix64 rng(99);
    std::vector<Exponent> shuffled = pts;
    for (std::size_t i = shuffled.size(); i > 1; --i)
        std::swap(shuffled[i - 1], shuffled[rng.next_below(i)]);
    NewtonPolytope a(pts), b(shuffled);
    CHECK(a.vertices() == b.vertices());
    CHECK(a.lattice_points() == b.lattice_points());
}

TEST_CASE("degenerate segment: affine span filtering of lattice points", "[polytope]") {
    NewtonPolytope p({{0, 0}, {2, 4}});
    CHECK(p.dim() == 1);
    CHECK(p.vertices() == std::vector<Exponent>{{0, 0}, {2, 4}});
    CHECK(p.lattice_points() == std::vector<Exponent>{{0, 0}, {1, 2}, {2, 4}});
    CHECK(p.interior_lattice_points().empty());
    CHECK(p.contains({1, 2}));
    CHECK_FALSE(p.contains({1, 1}));
    CHECK_FALSE(p.strictly_contains({1, 2}));
}

TEST_CASE("single point polytope", "[polytope]") {
    NewtonPolytope p({{3, -2}});
    CHECK(p.dim() == 0);
    CHECK(p.vertices() == std::vector<Exponent>{{3, -2}});
    CHECK(p.lattice_points() == std::vector<Exponent>{{3, -2}});
    CHECK(p.interior_lattice_points().empty());
    CHECK(p.contains({3, -2}));
    CHECK_FALSE(p.contains({3, -1}));
}

TEST_CASE("three dimensional cubes", "[polytope]") {
    std::vector<Exponent> cube;
    for (int a = 0; a <= 1; ++a)
        for (int b = 0; b <= 1; ++b)
            for (int c = 0; c <= 1; ++c) cube.push_back({a, b, c});
    NewtonPolytope unit(cube);
    CHECK(unit.dim() == 3);
    CHECK(unit.vertices().size() == 8);
    CHECK(unit.lattice_points().size() == 8);
    CHECK(unit.interior_lattice_points().empty());

    std::vector<Exponent> doubled;
    for (const Exponent& v : cube) doubled.push_back({2 * v[0], 2 * v[1], 2 * v[2]});
    NewtonPolytope big(doubled);
    CHECK(big.lattice_points().size() == 27);
    CHECK(big.interior_lattice_points() == std::vector<Exponent>{{1, 1, 1}});
}

TEST_CASE("four dimensional simplex", "[polytope]") {
    std::vector<Exponent> pts = {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0},
                                 {0, 0, 1, 0}, {0, 0, 0, 1}};
    NewtonPolytope p(pts);
    CHECK(p.dim() == 4);
    CHECK(p.vertices().size() == 5);
    CHECK(p.facets().size() == 5);
    CHECK(p.lattice_points().size() == 5);
    CHECK(p.interior_lattice_points().empty());
}

TEST_CASE("dimension above four is rejected", "[polytope]") {
    CHECK_THROWS_AS(NewtonPolytope({{0, 0, 0, 0, 0}}), std::invalid_argument);
}

TEST_CASE("genus bound counts interior lattice points", "[polytope]") {
    std::vector<syz::Term> terms;
    for (const Exponent& e : dilated_triangle_support(5))
        terms.push_back({e, {1.0, 0.0}});
    syz::LaurentPolynomial quintic(2, terms);
    CHECK(syz::baker_genus(quintic) == 6);

    syz::LaurentPolynomial line(2, {{{1, 0}, {1.0, 0.0}},
                                    {{0, 1}, {1.0, 0.0}},
                                    {{0, 0}, {1.0, 0.0}}});
    CHECK(syz::baker_genus(line) == 0);

    syz::LaurentPolynomial univariate(1, {{{0}, {1.0, 0.0}}, {{1}, {1.0, 0.0}}});
    CHECK_THROWS_AS(syz::baker_genus(univariate), std::invalid_argument);
}

TEST_CASE("genus bound for dense cubic and quartic curves", "[polytope]") {
    for (std::int64_t d = 3; d <= 4; ++d) {
        std::vector<syz::Term> terms;
        for (const Exponent& e : dilated_triangle_support(d))
            terms.push_back({e, {1.0, 0.0}});
        syz::LaurentPolynomial f(2, terms);
        CHECK(syz::baker_genus(f) == static_cast<std::size_t>((d - 1) * (d - 2) / 2));
    }
}

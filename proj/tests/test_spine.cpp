#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "syz/amoeba.hpp"
#include "syz/spine.hpp"

using syz::Rational;
using syz::SpineEdge;
using syz::SpineFunction;
using syz::TropicalSpine;

namespace {

syz::LaurentPolynomial line() {
    return syz::LaurentPolynomial(2, {{{1, 0}, 1.0}, {{0, 1}, 1.0}, {{0, 0}, 1.0}});
}

bool has_ray(const TropicalSpine& s, std::int64_t dx, std::int64_t dy) {
    for (const SpineEdge& e : s.edges)
        if (e.kind == SpineEdge::Kind::Ray && e.direction[0] == dx &&
            e.direction[1] == dy)
            return true;
    return false;
}

}  // namespace

TEST_CASE("three unit orders give three rays from the origin", "[spine]") {
    std::vector<SpineFunction> fns = {
        {{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}, {{0, 1}, Rational(0)}};
    TropicalSpine s = syz::build_spine(fns);
    REQUIRE(s.vertices.size() == 1);
    CHECK(s.vertices[0].x == Rational(0));
    CHECK(s.vertices[0].y == Rational(0));
    REQUIRE(s.edges.size() == 3);
    CHECK(has_ray(s, 0, -1));   // x = 0, y <= 0
    CHECK(has_ray(s, -1, 0));   // y = 0, x <= 0
    CHECK(has_ray(s, 1, 1));    // x = y, x >= 0
    for (const SpineEdge& e : s.edges) CHECK(e.weight == 1);
    CHECK(syz::check_balancing(s).balanced);
    CHECK(syz::bounded_faces(s) == 0);
}

TEST_CASE("two functions give a single full line", "[spine]") {
    std::vector<SpineFunction> fns = {{{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}};
    TropicalSpine s = syz::build_spine(fns);
    CHECK(s.vertices.empty());
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].kind == SpineEdge::Kind::Line);
    CHECK(s.edges[0].weight == 1);
    // The line is x = 0: anchor on it, direction vertical.
    CHECK(s.edges[0].anchor.x == Rational(0));
    CHECK(std::abs(s.edges[0].direction[1]) == 1);
    CHECK(s.edges[0].direction[0] == 0);
    CHECK(syz::check_balancing(s).balanced);
}

TEST_CASE("collinear tie family is emitted once with extreme sides", "[spine]") {
    std::vector<SpineFunction> fns = {
        {{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}, {{2, 0}, Rational(0)}};
    TropicalSpine s = syz::build_spine(fns);
    REQUIRE(s.edges.size() == 1);
    CHECK(s.edges[0].kind == SpineEdge::Kind::Line);
    CHECK(s.edges[0].weight == 2);  // lattice length between the extremes
    CHECK(s.edges[0].side_a == 0);
    CHECK(s.edges[0].side_b == 2);
}

TEST_CASE("a dominated middle function produces no spurious edges", "[spine]") {
    // With the middle offset raised, three parallel-gradient cells appear
    // side by side: two parallel tie lines, no corner between 0 and 2.
    std::vector<SpineFunction> fns = {
        {{0, 0}, Rational(0)}, {{1, 0}, Rational(1)}, {{2, 0}, Rational(0)}};
    TropicalSpine s = syz::build_spine(fns);
    REQUIRE(s.edges.size() == 2);
    for (const SpineEdge& e : s.edges) {
        CHECK(e.kind == SpineEdge::Kind::Line);
        CHECK(e.weight == 1);
    }
}

TEST_CASE("square cell: segments, rays, balancing, one bounded face", "[spine]") {
    std::vector<SpineFunction> fns = {{{0, 0}, Rational(1)},
                                      {{1, 0}, Rational(0)},
                                      {{0, 1}, Rational(0)},
                                      {{-1, 0}, Rational(0)},
                                      {{0, -1}, Rational(0)}};
    TropicalSpine s = syz::build_spine(fns);
    REQUIRE(s.vertices.size() == 4);
    std::size_t segments = 0, rays = 0;
    for (const SpineEdge& e : s.edges) {
        if (e.kind == SpineEdge::Kind::Segment) ++segments;
        if (e.kind == SpineEdge::Kind::Ray) ++rays;
    }
    CHECK(segments == 4);
    CHECK(rays == 4);
    CHECK(has_ray(s, 1, 1));
    CHECK(has_ray(s, -1, 1));
    CHECK(has_ray(s, 1, -1));
    CHECK(has_ray(s, -1, -1));
    CHECK(syz::check_balancing(s).balanced);
    CHECK(syz::bounded_faces(s) == 1);
    // Corner vertices at (+-1, +-1).
    std::set<std::pair<double, double>> corners;
    for (const auto& v : s.vertices)
        corners.insert({v.x.to_double(), v.y.to_double()});
    CHECK(corners == std::set<std::pair<double, double>>{
                         {-1, -1}, {-1, 1}, {1, -1}, {1, 1}});
}

TEST_CASE("degenerate inputs give empty spines", "[spine]") {
    CHECK(syz::build_spine(std::vector<SpineFunction>{}).edges.empty());
    CHECK(syz::build_spine({SpineFunction{{1, 1}, Rational(3)}}).edges.empty());
    // Exact duplicates collapse to one function.
    TropicalSpine s = syz::build_spine(
        {SpineFunction{{1, 1}, Rational(3)}, SpineFunction{{1, 1}, Rational(3)}});
    CHECK(s.functions.size() == 1);
    CHECK(s.edges.empty());
}

TEST_CASE("pipeline: spine of the line amoeba from raster data", "[spine]") {
    syz::Window w(-3, 3, -3, 3, 96);
    syz::AmoebaRaster raster = syz::rasterize_amoeba(line(), w);
    std::vector<syz::ComplementComponent> comps =
        syz::complement_components(raster, line(), 128);
    TropicalSpine s = syz::build_spine(comps);
    REQUIRE(s.edges.size() == 3);
    for (const SpineEdge& e : s.edges) CHECK(e.kind == SpineEdge::Kind::Ray);
    REQUIRE(s.vertices.size() == 1);
    CHECK(std::abs(s.vertices[0].x.to_double()) < 1e-3);
    CHECK(std::abs(s.vertices[0].y.to_double()) < 1e-3);
    CHECK(syz::check_balancing(s).balanced);

    syz::RetractReport report = syz::spine_retract_check(raster, s);
    CHECK(report.proximity_pass);
    CHECK(report.bounded_components == 0);
    CHECK(report.bounded_face_count == 0);
    CHECK(report.pass());
    CHECK(report.samples_checked > 100);
}

TEST_CASE("retract check flags a spine from the wrong polynomial", "[spine]") {
    syz::Window w(-3, 3, -3, 3, 96);
    syz::AmoebaRaster raster = syz::rasterize_amoeba(line(), w);
    // The corner locus of max(0, x) is the vertical line x = 0, which
    // wanders far from the amoeba in the upper half plane.
    TropicalSpine wrong = syz::build_spine(
        std::vector<SpineFunction>{{{0, 0}, Rational(0)}, {{1, 0}, Rational(0)}});
    syz::RetractReport report = syz::spine_retract_check(raster, wrong);
    CHECK(!report.proximity_pass);
    CHECK(!report.violations.empty());
    CHECK(!report.pass());
}

TEST_CASE("cubic patchwork curve: one bounded face matching one hole", "[spine]") {
    syz::LaurentPolynomial f = syz::viro_polynomial(3);
    syz::Window w(-10, 10, -10, 10, 256);
    syz::AmoebaRaster raster = syz::rasterize_amoeba(f, w);
    std::vector<syz::ComplementComponent> comps =
        syz::complement_components(raster, f, 128);
    TropicalSpine s = syz::build_spine(comps);
    CHECK(syz::check_balancing(s).balanced);
    CHECK(syz::bounded_faces(s) == 1);
    syz::RetractReport report = syz::spine_retract_check(raster, s);
    CHECK(report.bounded_components == 1);
    CHECK(report.face_count_match);
    CHECK(report.proximity_pass);
}

#include "doctest.h"
#include "morsedyn/geometry.hpp"

#include <random>

using namespace mdyn;

TEST_CASE("rational parsing and double round trip") {
    CHECK(parse_rational("-1.25") == Rat(-5, 4));
    CHECK(parse_rational("3") == Rat(3));
    CHECK(parse_rational("1e-3") == Rat(1, 1000));
    CHECK(parse_rational("5/12") == Rat(5, 12));
    CHECK(rational_from_double(0.5) == Rat(1, 2));
    CHECK(rational_from_double(-0.1) == parse_rational("-0.1000000000000000055511151231257827021181583404541015625"));

    std::mt19937_64 g(7);
    for (int i = 0; i < 1000; ++i) {
        double v = std::ldexp(static_cast<double>(g()) - 9.2e18, static_cast<int>(g() % 64) - 32);
        CHECK(parse_rational(format_double(v)) == rational_from_double(v));
    }
}

TEST_CASE("orientation and segment predicates") {
    Pt a{0, 0}, b{2, 0}, c{1, 1};
    CHECK(orient(a, b, c) > 0);
    CHECK(orient(a, c, b) < 0);
    CHECK(orient(a, b, Pt{3, 0}) == 0);
    CHECK(collinear(a, b, Pt{Rat(1, 3), 0}));
    CHECK(strictly_between(a, b, Pt{1, 0}));
    CHECK(!strictly_between(a, b, a));
    CHECK(on_segment(a, b, a));
    CHECK(!on_segment(a, b, Pt{1, Rat(1, 1000000)}));
}

TEST_CASE("convex hull and area") {
    Polygon h = convex_hull({{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}, {1, 0}});
    CHECK(h.size() == 4);
    CHECK(polygon_area2(h) == Rat(8));
    CHECK(convex_hull({{1, 1}, {1, 1}}).size() == 1);
    Polygon seg = convex_hull({{0, 0}, {2, 2}, {1, 1}});
    CHECK(seg.size() == 2);
}

TEST_CASE("point in convex and clipping") {
    Polygon sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
    CHECK(point_in_convex(sq, Pt{1, 1}));
    CHECK(point_in_convex(sq, Pt{0, 1}));
    CHECK(!point_strictly_in_convex(sq, Pt{0, 1}));
    CHECK(point_strictly_in_convex(sq, Pt{1, 1}));
    CHECK(!point_in_convex(sq, Pt{3, 1}));

    Polygon tri{{1, -1}, {3, 1}, {1, 3}};
    Polygon inter = clip_convex(tri, sq);
    // Intersection of that triangle with the square is a quadrilateral.
    CHECK(polygon_area2(inter) > 0);
    for (const auto& p : inter) {
        CHECK(point_in_convex(sq, p));
        CHECK(point_in_convex(tri, p));
    }

    auto t = clip_segment(Pt{-1, 1}, Pt{3, 1}, sq);
    REQUIRE(t.has_value());
    CHECK(t->first == Rat(1, 4));
    CHECK(t->second == Rat(3, 4));
    CHECK(!clip_segment(Pt{-1, 3}, Pt{-1, 4}, sq).has_value());
}

TEST_CASE("triangle membership open vs closed") {
    Pt a{0, 0}, b{2, 0}, c{0, 2};
    CHECK(point_in_closed_triangle(a, b, c, Pt{1, 0}));
    CHECK(!point_in_open_triangle(a, b, c, Pt{1, 0}));
    CHECK(point_in_open_triangle(a, b, c, Pt{Rat(1, 2), Rat(1, 2)}));
    // Orientation-insensitive.
    CHECK(point_in_closed_triangle(c, b, a, Pt{1, 0}));
}

TEST_CASE("ray entry predicates") {
    Pt a{0, 0}, b{2, 0}, c{0, 2};
    // From the edge midpoint inward / outward.
    CHECK(ray_enters_open_triangle(a, b, c, Pt{1, 0}, Pt{0, 1}));
    CHECK(!ray_enters_open_triangle(a, b, c, Pt{1, 0}, Pt{0, -1}));
    CHECK(!ray_enters_open_triangle(a, b, c, Pt{1, 0}, Pt{1, 0}));
    // From a vertex along the median.
    CHECK(ray_enters_open_triangle(a, b, c, a, Pt{1, 1}));
    CHECK(ray_enters_open_segment(a, b, a, Pt{1, 0}));
    CHECK(!ray_enters_open_segment(a, b, a, Pt{-1, 0}));
    CHECK(!ray_enters_open_segment(a, b, Pt{1, 1}, Pt{1, 0}));
    CHECK(ray_enters_open_segment(a, b, Pt{1, 1}, Pt{0, -1}));
}

TEST_CASE("angle to line") {
    Pt a{0, 0}, b{1, 0};
    CHECK(angle_to_line_deg(a, b, 1.0, 0.0) == doctest::Approx(0.0));
    CHECK(angle_to_line_deg(a, b, 0.0, 2.0) == doctest::Approx(90.0));
    CHECK(angle_to_line_deg(a, b, 1.0, 1.0) == doctest::Approx(45.0));
    CHECK(angle_to_line_deg(a, b, -1.0, 1.0) == doctest::Approx(45.0));
    // Zero vector is treated as aligned.
    CHECK(angle_to_line_deg(a, b, 0.0, 0.0) == doctest::Approx(0.0));
}

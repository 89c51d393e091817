#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/geometry.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

const LinearizationParams fine{0.002};

Region square_with_hole()
{
    return make_region({{0, 0}, {1, 0}, {1, 1}, {0, 1}}, {{{0.25, 0.25}, {0.25, 0.75}, {0.75, 0.75}, {0.75, 0.25}}});
}

}  // namespace

TEST_CASE("area and perimeter")
{
    CHECK(area(fixtures::unit_square()) == Approx(1.0));
    CHECK(area(square_with_hole()) == Approx(0.75));
    CHECK(area(fixtures::triangle()) == Approx(0.5));
    CHECK(perimeter(fixtures::unit_square()) == Approx(4.0));
    CHECK(perimeter(square_with_hole()) == Approx(6.0));
    CHECK(perimeter(fixtures::hexagon()) == Approx(6.0));
}

TEST_CASE("make_region fixes orientation")
{
    Region r = make_region({{0, 1}, {1, 1}, {1, 0}, {0, 0}});
    CHECK(signed_area(r.polygons[0].outer) > 0.0);
    Region h = square_with_hole();
    CHECK(signed_area(h.polygons[0].holes[0]) < 0.0);
}

TEST_CASE("validate rejects degenerate rings")
{
    Region bad;
    bad.polygons.push_back({{{0, 0}, {1, 0}}, {}});
    CHECK_THROWS_AS(validate(bad), StructuralError);
    Region nan;
    nan.polygons.push_back({{{0, 0}, {1, 0}, {NAN, 1}}, {}});
    CHECK_THROWS_AS(validate(nan), StructuralError);
}

TEST_CASE("is_simple")
{
    CHECK(is_simple(fixtures::l_shape().polygons[0].outer));
    CHECK_FALSE(is_simple({{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
}

TEST_CASE("boolean operations")
{
    Region sq = fixtures::unit_square();
    Region shifted = translate(sq, {0.5, 0.0});
    CHECK(area(unite(sq, shifted)) == Approx(1.5));
    CHECK(area(intersect(sq, translate(sq, {2.0, 0.0}))) == Approx(0.0));
    CHECK(intersect(sq, translate(sq, {2.0, 0.0})).empty());
    Region left = make_region({{0, 0}, {0.5, 0}, {0.5, 1}, {0, 1}});
    Region right = subtract(sq, left);
    CHECK(area(right) == Approx(0.5));
    CHECK(bounding_box(right).min.x == Approx(0.5));

    Region a = fixtures::l_shape();
    Region b = translate(fixtures::square2(), {1.3, 0.7});
    CHECK(area(a) + area(b) == Approx(area(unite(a, b)) + area(intersect(a, b))).epsilon(1e-9));
}

TEST_CASE("unite_all matches pairwise unions")
{
    std::vector<Region> parts;
    for (int i = 0; i < 5; ++i) parts.push_back(translate(fixtures::unit_square(), {0.4 * i, 0.1 * i}));
    Region pairwise = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) pairwise = unite(pairwise, parts[i]);
    Region batch = unite_all(parts);
    CHECK(area(batch) == Approx(area(pairwise)));
    CHECK(symmetric_difference_area(batch, pairwise) < 1e-9);
}

TEST_CASE("dilate")
{
    Region sq = fixtures::unit_square();
    double expected = 1.0 + 4.0 * 0.5 + std::numbers::pi * 0.25;
    CHECK(area(dilate(sq, 0.5, fine)) == Approx(expected).epsilon(1e-4));
    CHECK(area(dilate(sq, 0.0, fine)) == Approx(1.0));
    Region disk = fixtures::polygon_disk(1.0, 2000);
    CHECK(area(dilate(disk, 1.0, fine)) == Approx(4.0 * std::numbers::pi).epsilon(1e-4));
    CHECK_THROWS_AS(dilate(sq, -0.1, fine), ParameterError);
}

TEST_CASE("erode")
{
    Region sq = fixtures::unit_square();
    Region e = erode(sq, 0.25, fine);
    CHECK(area(e) == Approx(0.25).epsilon(1e-9));
    CHECK(erode(sq, 0.6, fine).empty());
    CHECK(connected_components(erode(fixtures::dumbbell(), 0.3, fine)).size() == 2);
    CHECK(connected_components(erode(fixtures::dumbbell(), 0.1, fine)).size() == 1);
    CHECK_THROWS_AS(erode(sq, -1.0, fine), ParameterError);
}

TEST_CASE("open and close")
{
    Region sq = fixtures::unit_square();
    Region o = open(sq, 0.25, fine);
    CHECK(area(o) == Approx(oracle::rounded_rect_area(1, 1, 0.25)).epsilon(1e-4));
    CHECK(perimeter(o) == Approx(oracle::rounded_rect_perimeter(1, 1, 0.25)).epsilon(1e-4));

    Region disk = fixtures::polygon_disk(1.0, 500);
    CHECK(symmetric_difference_area(open(disk, 0.5, fine), disk) < 1e-3);

    Region l = fixtures::l_shape();
    Region c = close(l, 0.2, fine);
    double gain = area(c) - area(l);
    CHECK(gain == Approx((1.0 - std::numbers::pi / 4.0) * 0.04).epsilon(0.02));
    CHECK(area(subtract(l, c)) < 1e-6);
}

TEST_CASE("morphology properties")
{
    const LinearizationParams lin{0.01};
    for (const Region& r : {fixtures::l_shape(), fixtures::star(), fixtures::dumbbell()}) {
        Region o = open(r, 0.15, lin);
        CHECK(symmetric_difference_area(open(o, 0.15, lin), o) < 1e-3 * area(r));
        Region c = close(r, 0.15, lin);
        CHECK(symmetric_difference_area(close(c, 0.15, lin), c) < 1e-3 * area(r));
        CHECK(area(o) <= area(r) + 1e-9);
        CHECK(area(c) >= area(r) - 1e-9);
        Region e1 = erode(r, 0.05, lin);
        Region e2 = erode(r, 0.12, lin);
        CHECK(area(subtract(e2, e1)) < 1e-9);
    }
}

TEST_CASE("arc linearization converges quadratically")
{
    Region point_disk = fixtures::polygon_disk(1e-4, 16);
    double prev = 0.0;
    for (double dx : {0.2, 0.1, 0.05, 0.025}) {
        Region d = dilate(point_disk, 1.0 - 1e-4, {dx});
        double err = std::abs(perimeter(d) - 2.0 * std::numbers::pi);
        if (prev > 0.0) CHECK(prev / err >= 3.0);
        prev = err;
    }
    double prev_disk = 0.0;
    for (double dx : {0.2, 0.1, 0.05, 0.025}) {
        double err = std::abs(ring_length(make_disk({0, 0}, 1.0, {dx})) - 2.0 * std::numbers::pi);
        if (prev_disk > 0.0) CHECK(prev_disk / err >= 3.0);
        prev_disk = err;
    }
}

TEST_CASE("make_disk chords")
{
    Ring d = make_disk({1, 2}, 0.7, {0.05});
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(distance(d[i], d[(i + 1) % d.size()]) <= 0.05 + 1e-12);
    CHECK(d[0].x == Approx(1.7));
    CHECK(d[0].y == Approx(2.0));
    CHECK(d.size() >= 12);
}

TEST_CASE("components and holes")
{
    CHECK(connected_components(fixtures::unit_square()).size() == 1);
    Region two = unite(fixtures::unit_square(), translate(fixtures::unit_square(), {3, 0}));
    CHECK(connected_components(two).size() == 2);

    Region solid = remove_holes(square_with_hole());
    CHECK(area(solid) == Approx(1.0));
    CHECK(perimeter(solid) == Approx(4.0));
    CHECK(symmetric_difference_area(remove_holes(fixtures::l_shape()), fixtures::l_shape()) < 1e-12);

    Ring hole = make_disk({0, 0}, 0.5, {0.01});
    Region annulus = make_region(fixtures::polygon_disk(1.0, 1000).polygons[0].outer, {hole});
    CHECK(area(annulus) == Approx(0.75 * std::numbers::pi).epsilon(1e-3));
    CHECK(area(remove_holes(annulus)) == Approx(std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("contains and boundary distance")
{
    Region l = fixtures::l_shape();
    CHECK(contains(l, {0.5, 0.5}));
    CHECK_FALSE(contains(l, {1.5, 1.5}));
    CHECK_FALSE(contains(square_with_hole(), {0.5, 0.5}));
    for (Point p : {Point{0.3, 0.2}, Point{1.5, 0.5}, Point{0.7, 1.9}}) {
        CHECK(boundary_distance(l, p) == Approx(oracle::boundary_distance(l, p)));
    }
}

TEST_CASE("scale and translate")
{
    Region s = scale(fixtures::l_shape(), 2.0);
    CHECK(area(s) == Approx(12.0));
    Region t = translate(fixtures::l_shape(), {5, -1});
    CHECK(bounding_box(t).min.x == Approx(5.0));
    CHECK(area(t) == Approx(3.0));
}

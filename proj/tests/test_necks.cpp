#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/necks.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

const LinearizationParams lin{0.01};

}  // namespace

TEST_CASE("convex shapes have no necks")
{
    for (const Region& r : {fixtures::square2(), fixtures::rectangle4x2(), fixtures::disk64(), fixtures::triangle()}) {
        NeckSet ns = find_necks(compute_medial_axis(r));
        CHECK(ns.empty());
        CHECK(std::isinf(ns.r_n));
        CHECK(std::isinf(ns.r_m));
    }
}

TEST_CASE("dumbbell: one neck on the corridor midline")
{
    Region r = fixtures::dumbbell();
    MedialAxis ma = compute_medial_axis(r);
    NeckSet ns = find_necks(ma);
    REQUIRE(ns.necks.size() == 1);
    const Neck& n = ns.necks.front();
    CHECK(n.radius == Approx(0.2).epsilon(1e-5));
    CHECK(n.location.y == Approx(1.0).epsilon(1e-5));
    CHECK(n.location.x >= 2.0 - 1e-5);
    CHECK(n.location.x <= 3.0 + 1e-5);
    CHECK(ns.r_n == ns.r_m);
    CHECK(n.radius == Approx(oracle::boundary_distance(make_region(ma.boundary), n.location)).epsilon(1e-9));
}

TEST_CASE("hourglass neck")
{
    NeckSet ns = find_necks(compute_medial_axis(fixtures::hourglass()));
    REQUIRE(ns.necks.size() == 1);
    CHECK(ns.necks[0].radius == Approx(0.45).epsilon(1e-6));
    CHECK(ns.necks[0].location.y == Approx(1.0).epsilon(1e-6));
    CHECK(ns.necks[0].location.x >= 2.0 - 1e-6);
    CHECK(ns.necks[0].location.x <= 3.0 + 1e-6);
}

TEST_CASE("exact plateau gives one neck at its midpoint")
{
    auto edge = [](std::size_t a, std::size_t b, Point pa, Point pb, double ra, double rb) {
        MASegment s;
        s.kind = SegmentKind::EdgeEdge;
        s.node0 = a;
        s.node1 = b;
        s.origin = pa;
        s.q1 = distance(pa, pb);
        s.axis = (1.0 / s.q1) * (pb - pa);
        s.r0 = ra;
        s.r1 = rb;
        return s;
    };
    MedialAxis ma;
    ma.boundary = {{-1, -1}, {5, -1}, {5, 1}, {-1, 1}};
    ma.nodes = {{{0, 0}, 1.0}, {{1, 0}, 0.5}, {{2, 0}, 0.5}, {{3, 0}, 0.5}, {{4, 0}, 1.0}};
    ma.segments = {edge(0, 1, {0, 0}, {1, 0}, 1.0, 0.5), edge(1, 2, {1, 0}, {2, 0}, 0.5, 0.5),
                   edge(2, 3, {2, 0}, {3, 0}, 0.5, 0.5), edge(3, 4, {3, 0}, {4, 0}, 0.5, 1.0)};
    NeckSet ns = find_necks(ma);
    REQUIRE(ns.necks.size() == 1);
    CHECK(ns.necks[0].radius == Approx(0.5));
    CHECK(ns.necks[0].location.x == Approx(2.0));

    ma.segments[3] = edge(3, 4, {3, 0}, {4, 0}, 0.5, 0.2);
    CHECK(find_necks(ma).empty());
}

TEST_CASE("two-neck fixture")
{
    NeckSet ns = find_necks(compute_medial_axis(fixtures::two_neck()));
    REQUIRE(ns.necks.size() == 2);
    CHECK(ns.r_n == Approx(0.2).epsilon(1e-5));
    CHECK(ns.r_m == Approx(0.4).epsilon(1e-5));
    CHECK(ns.necks[0].radius <= ns.necks[1].radius);
}

TEST_CASE("star is neck-free")
{
    CHECK(find_necks(compute_medial_axis(fixtures::star())).empty());
    CHECK(std::isinf(min_classical_neck(fixtures::star(), lin)));
}

TEST_CASE("interior minimum on a curved segment")
{
    // Two notches cut from opposite sides leave a waist governed by two
    // reflex vertices: the radius minimum sits inside a vert-vert segment.
    Region r = make_region({{0, 0}, {2, 0}, {2.5, 0.6}, {3, 0}, {5, 0}, {5, 2}, {3, 2}, {2.5, 1.4}, {2, 2}, {0, 2}});
    MedialAxis ma = compute_medial_axis(r);
    NeckSet ns = find_necks(ma);
    REQUIRE(ns.necks.size() == 1);
    CHECK(ns.necks[0].kind == NeckKind::InteriorLocalMin);
    CHECK(ns.necks[0].radius == Approx(0.4).epsilon(1e-6));
    CHECK(ns.necks[0].location.x == Approx(2.5).epsilon(1e-6));
    double classical = min_classical_neck(r, lin);
    CHECK(std::abs(classical - ns.r_n) <= 1e-3 * max_inscribed(ma).radius);
}

TEST_CASE("neck radii are local minima along their segment")
{
    for (const Region& r : {fixtures::dumbbell(), fixtures::two_neck(), fixtures::hourglass()}) {
        MedialAxis ma = compute_medial_axis(r);
        Region boundary = make_region(ma.boundary);
        for (const Neck& n : find_necks(ma).necks) {
            for (const MASegment& s : ma.segments) {
                for (double tau : {0.0, 0.25, 0.5, 0.75, 1.0}) {
                    if (distance(s.at(tau), n.location) < 0.05) CHECK(s.radius(tau) >= n.radius - 1e-6);
                }
            }
            CHECK(n.radius == Approx(oracle::boundary_distance(boundary, n.location)).epsilon(1e-6));
        }
    }
}

TEST_CASE("classical neck oracle")
{
    Region d = fixtures::dumbbell();
    CHECK(classical_neck_exists(d, 0.3, lin));
    CHECK_FALSE(classical_neck_exists(d, 0.1, lin));
    CHECK_FALSE(classical_neck_exists(fixtures::square2(), 0.5, lin));
    CHECK(min_classical_neck(d, lin) == Approx(0.2).epsilon(1e-3));
    CHECK(std::isinf(min_classical_neck(fixtures::square2(), lin)));
    CHECK(min_classical_neck(fixtures::two_neck(), lin) == Approx(0.2).epsilon(1e-3));
}

TEST_CASE("generalized and classical minimal necks agree")
{
    for (const Region& r : {fixtures::dumbbell(), fixtures::two_neck(), fixtures::hourglass(), fixtures::dumbbell_unequal()}) {
        MedialAxis ma = compute_medial_axis(r);
        double inr = max_inscribed(ma).radius;
        CHECK(std::abs(find_necks(ma).r_n - min_classical_neck(r, lin)) <= 1e-3 * inr);
    }
}

TEST_CASE("second largest circle")
{
    Region big_small = fixtures::dumbbell_unequal();
    CircleSummary2 c = second_largest_circle(big_small, compute_medial_axis(big_small), lin);
    CHECK(c.inr2 == Approx(0.8).epsilon(1e-4));
    CHECK(c.inx2.x == Approx(3.8).epsilon(1e-4));

    CircleSummary2 disk = second_largest_circle(fixtures::disk64(), compute_medial_axis(fixtures::disk64()), lin);
    CHECK(disk.inr2 <= 0.02);

    // Rectangle minus the inscribed unit disk: brute-force distance transform.
    Region rect = fixtures::rectangle4x2();
    MedialAxis ma = compute_medial_axis(rect);
    CircleSummary2 r2 = second_largest_circle(rect, ma, lin);
    CHECK(r2.inr2 < 1.0);
    Point c0 = max_inscribed(ma).center;
    double expected = 0.0;
    for (double x = -2.0; x <= 2.0; x += 0.002) {
        for (double y = -1.0; y <= 1.0; y += 0.002) {
            double d = std::min({2.0 - std::abs(x), 1.0 - std::abs(y), std::hypot(x - c0.x, y - c0.y) - 1.0});
            expected = std::max(expected, d);
        }
    }
    CHECK(r2.inr2 == Approx(expected).epsilon(2e-3));
}

TEST_CASE("thick neck condition")
{
    NeckSet none;
    CHECK(thick_neck_condition(none, {0.8, {}}));
    NeckSet thin = make_neck_set({{{2.5, 1}, 0.2, NeckKind::InteriorLocalMin}});
    CHECK_FALSE(thick_neck_condition(thin, {0.8, {}}));
    NeckSet thick = make_neck_set({{{2.5, 1}, 0.45, NeckKind::InteriorLocalMin}});
    CHECK(thick_neck_condition(thick, {0.8, {}}));

    Region h = fixtures::hourglass();
    MedialAxis ma = compute_medial_axis(h);
    CHECK(thick_neck_condition(find_necks(ma), second_largest_circle(h, ma, lin)));
}

TEST_CASE("scale equivariance")
{
    for (double s : {0.1, 7.0}) {
        Region base = fixtures::two_neck();
        Region scaled = scale(base, s);
        NeckSet a = find_necks(compute_medial_axis(base));
        NeckSet b = find_necks(compute_medial_axis(scaled));
        CHECK(b.r_n == Approx(s * a.r_n).epsilon(1e-5));
        CHECK(b.r_m == Approx(s * a.r_m).epsilon(1e-5));
        Region u = fixtures::dumbbell_unequal();
        Region us = scale(u, s);
        double i1 = second_largest_circle(u, compute_medial_axis(u), {0.01}).inr2;
        double i2 = second_largest_circle(us, compute_medial_axis(us), {0.01 * s}).inr2;
        CHECK(i2 == Approx(s * i1).epsilon(1e-4));
    }
}

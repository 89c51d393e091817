#include <cmath>
#include <numbers>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoprofile/tv.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

Region fine_disk() { return fixtures::polygon_disk(1.0, 4096); }

Region rotate(const Region& r, double angle)
{
    Region out = r;
    double c = std::cos(angle);
    double s = std::sin(angle);
    for (Polygon& poly : out.polygons) {
        for (Point& p : poly.outer) p = {c * p.x - s * p.y, s * p.x + c * p.y};
    }
    return out;
}

}  // namespace

TEST_CASE("aligned unit square")
{
    IndicatorGrid g = rasterize(fixtures::unit_square(), 10);
    CHECK(g.ny == 14);
    CHECK(g.nx == 14);
    CHECK(g.mass() == Approx(1.0).epsilon(1e-9));
    for (std::size_t j = 0; j < g.ny; ++j) {
        for (std::size_t i = 0; i < g.nx; ++i) {
            bool inside = i >= 2 && i < 12 && j >= 2 && j < 12;
            CHECK(g.at(i, j) == Approx(inside ? 1.0 : 0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("half-cell shift gives half coverage on the boundary")
{
    Region sq = translate(fixtures::unit_square(), {0.05, 0.05});
    GridSpec spec{{-0.2, -0.2}, 0.1, 0.1, 16, 16};
    IndicatorGrid g = rasterize(sq, spec);
    CHECK(g.mass() == Approx(1.0).epsilon(1e-9));
    CHECK(g.at(2, 7) == Approx(0.5));
    CHECK(g.at(12, 7) == Approx(0.5));
    CHECK(g.at(7, 2) == Approx(0.5));
    CHECK(g.at(7, 12) == Approx(0.5));
    CHECK(g.at(2, 2) == Approx(0.25));
    CHECK(g.at(7, 7) == Approx(1.0));
}

TEST_CASE("coverage of a disk and a shape with a hole")
{
    IndicatorGrid g = rasterize(fine_disk(), 100);
    CHECK(g.mass() == Approx(std::numbers::pi).epsilon(1e-3));
    for (double v : g.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    Region annulus = subtract(fixtures::polygon_disk(1.0, 512), fixtures::polygon_disk(0.5, 512));
    CHECK(rasterize(annulus, 64).mass() == Approx(area(annulus)).epsilon(1e-9));
    Region star = fixtures::star();
    CHECK(rasterize(star, 37).mass() == Approx(area(star)).epsilon(1e-9));
}

TEST_CASE("constant grid has zero variation")
{
    IndicatorGrid g;
    g.nx = g.ny = 5;
    g.dx = g.dy = 0.1;
    g.values.assign(25, 0.0);
    for (Stencil s : {Stencil::TV1, Stencil::Smooth3, Stencil::Smooth5}) CHECK(tv_perimeter(g, s) == 0.0);
}

TEST_CASE("axis-aligned square perimeter")
{
    IndicatorGrid g = rasterize(fixtures::unit_square(), 50);
    // one corner cell sees both forward differences
    CHECK(tv_perimeter(g, Stencil::TV1) == Approx(4.0 - (2.0 - std::sqrt(2.0)) / 50.0).epsilon(1e-9));
    CHECK(tv_perimeter(g, Stencil::Smooth3) == Approx(4.0).epsilon(0.02));
    CHECK(tv_perimeter(g, Stencil::Smooth5) == Approx(4.0).epsilon(0.03));
}

TEST_CASE("disk: smooth3 beats tv1 at every resolution")
{
    Region d = fine_disk();
    double ref = 2.0 * std::numbers::pi;
    double last = INFINITY;
    for (std::size_t ny : {50u, 100u, 200u, 400u}) {
        IndicatorGrid g = rasterize(d, ny);
        double e1 = std::abs(tv_perimeter(g, Stencil::TV1) - ref);
        double e3 = std::abs(tv_perimeter(g, Stencil::Smooth3) - ref);
        CHECK(e3 < e1);
        last = e3;
    }
    CHECK(tv_perimeter(rasterize(d, 200), Stencil::Smooth3) == Approx(ref).epsilon(0.05));
    CHECK(last / ref < 0.05);
}

TEST_CASE("disk: smooth3 error non-increasing under refinement")
{
    Region d = fine_disk();
    double ref = 2.0 * std::numbers::pi;
    double prev = INFINITY;
    for (std::size_t ny : {50u, 100u, 200u, 400u}) {
        double e3 = std::abs(tv_perimeter(rasterize(d, ny), Stencil::Smooth3) - ref);
        CHECK(e3 <= prev);
        prev = e3;
    }
}

TEST_CASE("translation and rotation robustness")
{
    Region sq = fixtures::unit_square();
    double base = tv_perimeter(rasterize(sq, 100), Stencil::Smooth3);
    for (double shift : {0.001, 0.0037, 0.005, 0.0081}) {
        Region moved = translate(sq, {shift, 0.5 * shift});
        GridSpec spec{{-0.02, -0.02}, 0.01, 0.01, 106, 106};
        CHECK(tv_perimeter(rasterize(moved, spec), Stencil::Smooth3) == Approx(base).epsilon(0.02));
    }
    double turned = tv_perimeter(rasterize(rotate(sq, std::numbers::pi / 4), 141), Stencil::Smooth3);
    CHECK(turned == Approx(base).epsilon(0.10));
}

TEST_CASE("study rows")
{
    auto rows = tv_study(fine_disk(), {50, 100}, 2.0 * std::numbers::pi);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].ny == 50);
    CHECK(rows[0].stencil == Stencil::TV1);
    CHECK(rows[5].stencil == Stencil::Smooth5);
    for (const auto& r : rows) CHECK(r.rel_error == Approx(std::abs(r.estimate - 2.0 * std::numbers::pi) / (2.0 * std::numbers::pi)));
    CHECK(stencil_from_string("smooth3") == Stencil::Smooth3);
    CHECK_FALSE(stencil_from_string("sobel").has_value());
    CHECK_THROWS_AS(rasterize(fine_disk(), 4), ParameterError);
}

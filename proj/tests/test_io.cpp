#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoprofile/io.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

std::string message_of(const std::string& text, PolygonFormat f)
{
    try {
        parse_polygon(text, f);
    } catch (const StructuralError& e) {
        return e.what();
    }
    return "";
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

ProfileBound line(double slope, SampleSource src)
{
    ProfileBound b;
    for (int k = 0; k <= 4; ++k) b.samples.push_back({double(k), slope * k, src, NAN, std::nullopt});
    return b;
}

}  // namespace

TEST_CASE("csv unit square")
{
    Region r = parse_polygon("x,y\n0,0\n1,0\n1,1\n0,1\n", PolygonFormat::CsvVertices);
    CHECK(area(r) == 1.0);
    CHECK(r.polygons.size() == 1);
    CHECK(r.polygons[0].outer.size() == 4);

    Region closed_cw = parse_polygon("0 0\n0 1\n1 1\n1 0\n0 0\n", PolygonFormat::CsvVertices);
    CHECK(closed_cw.polygons[0].outer.size() == 4);
    CHECK(signed_area(closed_cw.polygons[0].outer) == 1.0);
    CHECK_THROWS_AS(parse_polygon("x,y\n0,0\n1,zero\n", PolygonFormat::CsvVertices), InputError);
}

TEST_CASE("diagnostics")
{
    CHECK(message_of("0,0\n1,1\n1,0\n0,1\n", PolygonFormat::CsvVertices).starts_with("not simple"));
    CHECK(message_of("0,0\n1,0\n2,0\n", PolygonFormat::CsvVertices).starts_with("not simple"));
    CHECK(message_of("POLYGON ((0 0, 1 0, 1 1, 0 1, 0 0), (0.2 0.2, 0.2 0.4, 0.4 0.4, 0.2 0.2))", PolygonFormat::Wkt)
              .starts_with("holes unsupported"));
    CHECK(message_of("MULTIPOLYGON (((0 0, 1 0, 1 1, 0 0)), ((2 0, 3 0, 3 1, 2 0)))", PolygonFormat::Wkt)
              .starts_with("multipolygon unsupported"));
    CHECK(message_of(R"({"type":"Polygon","coordinates":[[[0,0],[4,0],[4,4],[0,4],[0,0]],[[1,1],[1,2],[2,2],[1,1]]]})",
                     PolygonFormat::GeoJson)
              .starts_with("holes unsupported"));
    CHECK_THROWS_AS(parse_polygon("POLYGON ((0 0, 1 0", PolygonFormat::Wkt), InputError);
    CHECK_THROWS_AS(parse_polygon("LINESTRING (0 0, 1 1)", PolygonFormat::Wkt), InputError);
    CHECK_THROWS_AS(parse_polygon("{\"type\":\"Point\",\"coordinates\":[0,0]}", PolygonFormat::GeoJson), InputError);
    CHECK_THROWS_AS(parse_polygon("{", PolygonFormat::GeoJson), InputError);
}

TEST_CASE("wkt and geojson")
{
    Region w = parse_polygon("  polygon ((0 0, 2 0, 2 1, 0 1, 0 0))\n", PolygonFormat::Wkt);
    CHECK(area(w) == 2.0);
    Region single = parse_polygon("MULTIPOLYGON (((0 0, 1 0, 0 1, 0 0)))", PolygonFormat::Wkt);
    CHECK(area(single) == 0.5);
    Region g = parse_polygon(R"({"type":"FeatureCollection","features":[{"type":"Feature","properties":{},
        "geometry":{"type":"Polygon","coordinates":[[[0,0],[0,3],[1,3],[1,0],[0,0]]]}}]})",
                             PolygonFormat::GeoJson);
    CHECK(area(g) == 3.0);
    CHECK(signed_area(g.polygons[0].outer) > 0.0);

    std::ostringstream s;
    write_wkt(fixtures::star(), s);
    Region back = parse_polygon(s.str(), PolygonFormat::Wkt);
    CHECK(back.polygons[0].outer == fixtures::star().polygons[0].outer);
}

TEST_CASE("csv round trip is bit exact")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(0.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int trial = 0; trial < 50; ++trial) {
        double scale = std::ldexp(1.0, expo(rng));
        Ring ring;
        int n = 3 + trial;
        for (int k = 0; k < n; ++k) {
            double a = 2.0 * std::numbers::pi * (k + 0.8 * angle(rng)) / n;
            double rad = scale * (0.5 + angle(rng));
            ring.push_back({rad * std::cos(a) + scale / 3.0, rad * std::sin(a) - scale / 7.0});
        }
        Region r = make_region(ring);
        std::ostringstream s;
        write_csv_vertices(r, s);
        Region back = parse_polygon(s.str(), PolygonFormat::CsvVertices);
        REQUIRE(back.polygons[0].outer.size() == r.polygons[0].outer.size());
        for (std::size_t k = 0; k < ring.size(); ++k) {
            CHECK(back.polygons[0].outer[k].x == r.polygons[0].outer[k].x);
            CHECK(back.polygons[0].outer[k].y == r.polygons[0].outer[k].y);
        }
    }
    CHECK(format_double(0.1) == "0.1");
    CHECK(format_double(std::numeric_limits<double>::denorm_min()) == "5e-324");
}

TEST_CASE("formats and area normalization")
{
    CHECK(format_from_path("a/b.WKT") == PolygonFormat::Wkt);
    CHECK(format_from_path("x.geojson") == PolygonFormat::GeoJson);
    CHECK(format_from_path("x.csv") == PolygonFormat::CsvVertices);
    CHECK_FALSE(format_from_path("x.shp").has_value());
    CHECK(format_from_string("csv_vertices") == PolygonFormat::CsvVertices);
    CHECK(area(normalized_area(fixtures::dumbbell())) == Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(load_polygon("/nonexistent/file.wkt"), InputError);
    CHECK_THROWS_AS(load_polygon("/nonexistent/file.xyz"), InputError);
}

TEST_CASE("profile and study csv")
{
    ProfileBound b = line(2.0, SampleSource::MedialAxis);
    b.samples[0].source = SampleSource::AnalyticPrefix;
    std::ostringstream s;
    write_profile_csv(b, s);
    CHECK(s.str().starts_with("t,p,source\n0,0,analytic_prefix\n1,2,medial_axis\n"));
    std::ostringstream t;
    write_tv_study_csv({{50, Stencil::Smooth3, 6.25, 0.005}}, t);
    CHECK(t.str() == "ny,stencil,estimate,rel_error\n50,smooth3,6.25,0.005\n");
}

TEST_CASE("plot event lines and curve styles")
{
    TightnessReport free;
    free.inr = 1.0;
    free.area = 4.0;
    EventLines ev = event_lines(free);
    CHECK(ev.max_inscribed_t == Approx(std::numbers::pi));
    CHECK(ev.max_inscribed_t <= ev.max_area_t);
    std::ostringstream one;
    emit_plot({{"bound", line(1.0, SampleSource::MedialAxis)}}, {ev}, one);
    CHECK(count(one.str(), "class=\"event\"") == 2);
    CHECK(count(one.str(), "class=\"curve\"") == 1);

    TightnessReport necked = free;
    necked.r_n = 0.2;
    necked.t_low_tight = 3.5;
    necked.t_high_tight = 3.9;
    std::ostringstream two;
    emit_plot({{"bound", line(1.0, SampleSource::MedialAxis)}, {"opening", line(1.5, SampleSource::Opening)}},
              {event_lines(necked)}, two);
    std::string svg = two.str();
    CHECK(count(svg, "class=\"event\"") == 4);
    CHECK(count(svg, "class=\"curve\"") == 2);
    CHECK(count(svg, "stroke=\"#1f77b4\"") >= 1);
    CHECK(count(svg, "stroke=\"#d62728\"") >= 1);
    CHECK(count(svg, "stroke-dasharray=\"8 4\"") >= 1);
    CHECK(svg.find("minimal neck") != std::string::npos);
    CHECK(svg.find("conservatively tight") != std::string::npos);

    std::ostringstream esc;
    emit_plot({{"a<b", line(1.0, SampleSource::Opening)}}, {}, esc);
    CHECK(esc.str().find("a&lt;b") != std::string::npos);
    std::ostringstream none;
    CHECK_THROWS_AS(emit_plot({{"empty", {}}}, {}, none), ParameterError);
}

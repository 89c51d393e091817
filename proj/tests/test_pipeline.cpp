#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "isoprofile/pipeline.hpp"

using namespace isoprofile;
using doctest::Approx;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    fs::path p = fs::temp_directory_path() / ("isoprofile_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_input(const std::string& name, const Region& r)
{
    fs::path p = scratch(name + "_in") / (name + ".csv");
    std::ofstream out(p);
    write_csv_vertices(r, out);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (std::size_t pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

void check_monotone(const ProfileBound& b)
{
    for (std::size_t i = 1; i < b.samples.size(); ++i) {
        CHECK(b.samples[i].t > b.samples[i - 1].t);
        CHECK(b.samples[i].p >= b.samples[i - 1].p);
    }
}

}  // namespace

TEST_CASE("square: tight everywhere, monotone profile")
{
    RunConfig cfg;
    cfg.input = write_input("square", fixtures::square2());
    cfg.out_dir = scratch("square");
    cfg.emit_plot = true;
    Analysis a = run_pipeline(cfg);
    CHECK(a.report.tight_everywhere);
    check_monotone(a.combined);

    std::string json = slurp(cfg.out_dir / "report.json");
    for (const char* key : {"\"r_n\"", "\"r_m\"", "\"inr2\"", "\"r_t\"", "\"t_low_tight\"", "\"t_high_tight\"",
                            "\"thick_neck\"", "\"tight_everywhere\"", "\"params\"", "\"necks\""})
        CHECK(json.find(key) != std::string::npos);
    CHECK(json.find("\"r_n\": null") != std::string::npos);
    CHECK(json.find("\"tight_everywhere\": true") != std::string::npos);
    CHECK(json.find("seconds") == std::string::npos);
    CHECK(fs::exists(cfg.out_dir / "timings.json"));

    std::string csv = slurp(cfg.out_dir / "profile.csv");
    CHECK(csv.starts_with("t,p,source\n"));
    CHECK(count(csv, "\n") == a.combined.samples.size() + 1);
    CHECK(count(slurp(cfg.out_dir / "plot.svg"), "class=\"event\"") == 2);
}

TEST_CASE("dumbbell: four event lines and certified ranges")
{
    RunConfig cfg;
    cfg.input = write_input("dumbbell", fixtures::dumbbell());
    cfg.out_dir = scratch("dumbbell");
    cfg.emit_plot = true;
    cfg.emit_snapshots = true;
    Analysis a = run_pipeline(cfg);
    CHECK(count(slurp(cfg.out_dir / "plot.svg"), "class=\"event\"") == 4);
    CHECK(a.report.t_low_tight > 0.0);
    CHECK(a.report.t_low_tight < a.report.t_high_tight);
    CHECK(a.report.t_high_tight < a.report.area);
    check_monotone(a.combined);

    REQUIRE_FALSE(a.snapshots.empty());
    std::size_t wkt = 0;
    for (const auto& e : fs::directory_iterator(cfg.out_dir / "snapshots")) wkt += e.path().extension() == ".wkt";
    CHECK(wkt == a.snapshots.size());
    for (const Snapshot& s : a.snapshots) CHECK(area(subtract(s.region, a.omega)) <= 1e-9 * a.report.area);
}

TEST_CASE("disk: analytic prefix plus terminal point")
{
    RunConfig cfg;
    Region d = fixtures::disk64();
    Analysis a = analyze(d, cfg);
    double t_inr = std::numbers::pi * a.report.inr * a.report.inr;
    std::size_t prefix = 0;
    for (const ProfileSample& s : a.combined.samples) {
        if (s.source == SampleSource::AnalyticPrefix && !std::isnan(s.radius)) {
            CHECK(s.p == Approx(2.0 * std::sqrt(std::numbers::pi * s.t)).epsilon(1e-12));
            ++prefix;
        } else if (s.t < t_inr) {
            // crossing of the two interpolants, on the prefix chord
            CHECK(std::isnan(s.radius));
            CHECK(s.p == Approx(*a.prefix.value_at(s.t)).epsilon(1e-12));
        }
    }
    CHECK(prefix == a.prefix.samples.size());
    CHECK(a.combined.samples.back().t == Approx(area(d)).epsilon(1e-12));
    CHECK(a.combined.samples.back().p == Approx(perimeter(d)).epsilon(1e-9));
    // the tail spans the 64-gon's gap between inscribed disk and polygon
    CHECK(area(d) - t_inr < 1e-3 * area(d));
}

TEST_CASE("byte-identical reruns")
{
    RunConfig cfg;
    cfg.input = write_input("two_neck", fixtures::two_neck());
    cfg.emit_plot = true;
    cfg.out_dir = scratch("det_a");
    run_pipeline(cfg);
    RunConfig again = cfg;
    again.out_dir = scratch("det_b");
    run_pipeline(again);
    for (const char* f : {"profile.csv", "report.json", "plot.svg"})
        CHECK(slurp(cfg.out_dir / f) == slurp(again.out_dir / f));
}

TEST_CASE("overrides, tv study and errors")
{
    RunConfig cfg;
    cfg.params.d_x = 0.02;
    cfg.params.n_open = 20;
    cfg.run_opening = false;
    cfg.tv_nys = {20, 40};
    Analysis a = analyze(fixtures::l_shape(), cfg);
    CHECK(a.params.d_x == 0.02);
    CHECK(a.params.r_c == 0.01);
    CHECK(a.params.n_open == 20);
    CHECK(a.opening.empty());
    CHECK(a.tv.size() == 6);

    ParamOverrides bad;
    bad.r_l = 10.0;
    RunConfig c2;
    c2.params = bad;
    CHECK_THROWS_AS(analyze(fixtures::dumbbell(), c2), ParameterError);

    fs::path dir = scratch("bowtie_in");
    std::ofstream(dir / "bowtie.csv") << "0,0\n1,1\n1,0\n0,1\n";
    RunConfig c3;
    c3.input = dir / "bowtie.csv";
    c3.out_dir = scratch("bowtie");
    CHECK_THROWS_AS(run_pipeline(c3), StructuralError);

    RunConfig c4;
    c4.input = write_input("norm", scale(fixtures::dumbbell(), 3.0));
    c4.normalize_area = true;
    c4.run_opening = false;
    c4.out_dir = scratch("norm");
    CHECK(run_pipeline(c4).report.area == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("overlay of two normalized domains")
{
    RunConfig cfg;
    cfg.run_opening = false;
    Analysis a = analyze(normalized_area(fixtures::dumbbell()), cfg);
    Analysis b = analyze(normalized_area(fixtures::star()), cfg);
    std::ostringstream svg;
    emit_plot({{"dumbbell", a.combined}, {"star", b.combined}}, {event_lines(a.report), event_lines(b.report)}, svg);
    CHECK(count(svg.str(), "class=\"curve\"") == 2);
    CHECK(count(svg.str(), "class=\"event\"") == 6);
    CHECK(a.report.area == Approx(1.0).epsilon(1e-12));
    CHECK(b.report.area == Approx(1.0).epsilon(1e-12));
    CHECK(a.combined.samples.back().t <= 1.0);
}

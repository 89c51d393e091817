#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/profile.hpp"

using namespace isoprofile;
using doctest::Approx;

namespace {

struct Setup {
    std::shared_ptr<const MedialAxis> ma;
    NeckSet necks;
    double inr = 0.0;
    AlgorithmParams params;
    MedialAxisGraph graph;
};

Setup setup(const Region& r, double r_l = NAN)
{
    Setup s;
    s.ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
    s.necks = find_necks(*s.ma);
    s.inr = max_inscribed(*s.ma).radius;
    s.params = default_params(r, s.inr, s.necks);
    if (!std::isnan(r_l)) s.params.r_l = r_l;
    s.graph = discretize(s.ma, s.params.discretization());
    return s;
}

double rounded_square_p(double t)
{
    double rho = std::sqrt((4.0 - t) / (4.0 - std::numbers::pi));
    return 8.0 - 2.0 * (4.0 - std::numbers::pi) * rho;
}

bool near_one(double r) { return std::abs(r - 1.0) <= 1e-6; }

}  // namespace

TEST_CASE("square: first sample is the inscribed disk, last the opening")
{
    Region sq = fixtures::square2();
    Setup s = setup(sq, 0.1);
    IPBoundResult res = compute_ip_bound(sq, s.graph, s.params, s.necks);
    REQUIRE(res.bound.samples.size() > 10);
    const ProfileSample& first = res.bound.samples.front();
    CHECK(first.t == Approx(std::numbers::pi).epsilon(1e-3));
    CHECK(first.p == Approx(2.0 * std::numbers::pi).epsilon(1e-3));
    const ProfileSample& last = res.bound.samples.back();
    CHECK(last.t == Approx(3.99141).epsilon(5e-3));
    CHECK(last.p == Approx(7.82832).epsilon(5e-3));
}

TEST_CASE("disk: trivial traversal")
{
    Region d = fixtures::disk64();
    Setup s = setup(d);
    IPBoundResult res = compute_ip_bound(d, s.graph, s.params, s.necks);
    double apothem = std::cos(std::numbers::pi / 64);
    REQUIRE_FALSE(res.bound.empty());
    CHECK(res.bound.samples.front().t == Approx(std::numbers::pi * apothem * apothem).epsilon(1e-3));
    CHECK(res.bound.samples.front().p == Approx(2.0 * std::numbers::pi * apothem).epsilon(1e-3));
    CHECK(res.bound.samples.back().t == Approx(area(d)).epsilon(5e-3));
    CHECK(res.bound.samples.back().p == Approx(perimeter(d)).epsilon(5e-3));
    CHECK(res.bound.samples.size() <= 4);
}

TEST_CASE("slope law on the rectangle's constant-radius edge")
{
    Region rect = fixtures::rectangle4x2();
    Setup s = setup(rect);
    IPBoundResult res = compute_ip_bound(rect, s.graph, s.params, s.necks);
    int chords = 0;
    const auto& v = res.bound.samples;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (!near_one(v[i - 1].radius) || !near_one(v[i].radius)) continue;
        double slope = (v[i].p - v[i - 1].p) / (v[i].t - v[i - 1].t);
        CHECK(slope >= 0.98);
        CHECK(slope <= 1.02);
        ++chords;
    }
    CHECK(chords >= 5);
}

TEST_CASE("slope law on the wedge")
{
    Region w = fixtures::wedge();
    Setup s = setup(w);
    IPBoundResult res = compute_ip_bound(w, s.graph, s.params, s.necks);
    const auto& v = res.bound.samples;
    REQUIRE(v.size() > 20);
    for (std::size_t i = 2; i < v.size(); ++i) {
        double slope = (v[i].p - v[i - 1].p) / (v[i].t - v[i - 1].t);
        double r_mid = 0.5 * (v[i].radius + v[i - 1].radius);
        CHECK(slope * r_mid == Approx(1.0).epsilon(0.02));
    }
}

TEST_CASE("monotone samples and feasible snapshots")
{
    for (const Region& r : {fixtures::square2(), fixtures::l_shape(), fixtures::dumbbell(), fixtures::star(),
                            fixtures::two_neck()}) {
        Setup s = setup(r);
        IPBoundResult res = compute_ip_bound(r, s.graph, s.params, s.necks, true);
        const auto& v = res.bound.samples;
        REQUIRE(v.size() >= 2);
        for (std::size_t i = 1; i < v.size(); ++i) {
            CHECK(v[i].t > v[i - 1].t);
            CHECK(v[i].p > v[i - 1].p);
        }
        REQUIRE(res.snapshots.size() == v.size());
        for (const ProfileSample& sample : v) {
            const Snapshot& snap = res.snapshots[*sample.shape_ref];
            CHECK(area(subtract(snap.region, r)) <= 1e-9 * area(r));
            CHECK(area(snap.region) == sample.t);
            CHECK(perimeter(snap.region) == sample.p);
        }
        CHECK(v.back().t <= area(r) * (1.0 + 1e-9));
    }
}

TEST_CASE("neck-free domains: greedy bound equals the opening bound")
{
    for (const Region& r : {fixtures::square2(), fixtures::star(), fixtures::hexagon(), fixtures::triangle()}) {
        Setup s = setup(r);
        ProfileBound greedy = compute_ip_bound(r, s.graph, s.params, s.necks).bound;
        ProfileBound opening = opening_bound(r, s.params);
        int common = 0;
        for (const ProfileSample& g : greedy.samples) {
            if (auto p = opening.value_at(g.t)) {
                CHECK(g.p == Approx(*p).epsilon(5e-3));
                ++common;
            }
        }
        CHECK(common >= 5);
    }
}

TEST_CASE("square matches the rounded-square closed form")
{
    Region sq = fixtures::square2();
    Setup s = setup(sq);
    for (const ProfileSample& g : compute_ip_bound(sq, s.graph, s.params, s.necks).bound.samples) {
        CHECK(g.p == Approx(rounded_square_p(g.t)).epsilon(5e-3));
    }
    for (const ProfileSample& o : opening_bound(sq, s.params).samples) {
        if (o.source != SampleSource::Opening || o.t < std::numbers::pi) continue;
        CHECK(o.p == Approx(rounded_square_p(o.t)).epsilon(5e-3));
        CHECK(o.t == Approx(oracle::rounded_rect_area(2, 2, o.radius)).epsilon(1e-3));
    }
}

TEST_CASE("post-processing")
{
    Region f = fixtures::sawtooth_pinholes();
    Region omega = make_region({{-1, -1}, {3, -1}, {3, 3}, {-1, 3}});
    LinearizationParams lin{0.01};
    Region g = post_process(f, 0.005, omega, lin);
    CHECK(std::abs(area(g) - area(f)) < 1e-5 * area(f));
    CHECK(perimeter(g) < perimeter(f));
    for (const Polygon& poly : g.polygons) CHECK(poly.holes.empty());

    Region holes_only = make_region({{0, 0}, {2, 0}, {2, 2}, {0, 2}}, fixtures::sawtooth_pinholes().polygons[0].holes);
    CHECK(perimeter(post_process(holes_only, 0.005, omega, lin)) < perimeter(holes_only));

    Region clean = fixtures::square2();
    Region once = post_process(clean, 0.005, scale(clean, 2.0), lin);
    CHECK(symmetric_difference_area(once, clean) <= 1e-5 * area(clean));
    CHECK(area(subtract(post_process(fixtures::l_shape(), 0.05, fixtures::l_shape(), lin), fixtures::l_shape())) <= 1e-12);
}

TEST_CASE("opening bound: disk is invariant")
{
    Region d = fixtures::disk64();
    Setup s = setup(d);
    ProfileBound b = opening_bound(d, s.params);
    int openings = 0;
    for (const ProfileSample& o : b.samples) {
        if (o.source != SampleSource::Opening) continue;
        CHECK(o.t == Approx(area(d)).epsilon(5e-3));
        CHECK(o.p == Approx(perimeter(d)).epsilon(5e-3));
        ++openings;
    }
    CHECK(openings > 0);
}

TEST_CASE("opening bound: dumbbell discontinuity is bridged")
{
    Region db = fixtures::dumbbell();
    Setup s = setup(db);
    ProfileBound b = opening_bound(db, s.params);
    const auto& v = b.samples;
    int repairs = 0;
    double max_gap = 0.0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        CHECK(v[i].t > v[i - 1].t);
        CHECK(v[i].p >= v[i - 1].p);
        max_gap = std::max(max_gap, v[i].t - v[i - 1].t);
        repairs += v[i].source == SampleSource::OpeningRepair;
    }
    CHECK(repairs > 0);
    CHECK(max_gap <= 0.01 * area(db));
    CHECK(v.back().t == Approx(area(db)));
}

TEST_CASE("combine bounds")
{
    auto make = [](std::vector<std::pair<double, double>> pts, SampleSource src) {
        ProfileBound b;
        for (auto [t, p] : pts) b.samples.push_back({t, p, src, NAN, std::nullopt});
        return b;
    };
    ProfileBound low = make({{0, 0}, {1, 1}, {2, 2}}, SampleSource::MedialAxis);
    ProfileBound high = make({{0, 1}, {1.5, 2.5}, {2, 3}}, SampleSource::Opening);
    ProfileBound c = combine_bounds(low, high);
    REQUIRE(c.samples.size() == 3);
    for (const ProfileSample& s : c.samples) {
        CHECK(s.p == Approx(*low.value_at(s.t)));
        CHECK(s.source == SampleSource::MedialAxis);
    }

    ProfileBound x1 = make({{0, 0}, {2, 2}}, SampleSource::MedialAxis);
    ProfileBound x2 = make({{0, 1}, {2, 1.5}}, SampleSource::Opening);
    ProfileBound cx = combine_bounds(x1, x2);
    REQUIRE(cx.samples.size() == 3);
    CHECK(cx.samples[1].t == Approx(4.0 / 3.0));
    CHECK(cx.samples[1].p == Approx(4.0 / 3.0));
    CHECK(cx.samples[0].source == SampleSource::MedialAxis);
    CHECK(cx.samples[2].source == SampleSource::Opening);

    ProfileBound same = combine_bounds(low, low);
    REQUIRE(same.samples.size() == low.samples.size());
    for (std::size_t i = 0; i < same.samples.size(); ++i) CHECK(same.samples[i].p == low.samples[i].p);

    ProfileBound far = make({{5, 6}, {6, 7}}, SampleSource::Opening);
    ProfileBound cat = combine_bounds(low, far);
    CHECK(cat.samples.size() == 5);
    CHECK(cat.samples.back().source == SampleSource::Opening);
}

TEST_CASE("combined bound is dominated by both inputs")
{
    Region l = fixtures::l_shape();
    Setup s = setup(l);
    ProfileBound a = compute_ip_bound(l, s.graph, s.params, s.necks).bound;
    ProfileBound b = opening_bound(l, s.params);
    ProfileBound c = combine_bounds(a, b);
    for (const ProfileBound* in : {&a, &b}) {
        for (const ProfileSample& smp : in->samples) {
            if (auto v = c.value_at(smp.t)) CHECK(*v <= smp.p * (1.0 + 1e-12));
        }
    }
    for (std::size_t i = 1; i < c.samples.size(); ++i) CHECK(c.samples[i].p >= c.samples[i - 1].p);
}

TEST_CASE("analytic prefix")
{
    ProfileBound pre = analytic_prefix(1.0);
    CHECK(pre.samples.back().t == std::numbers::pi);
    CHECK(pre.samples.back().p == 2.0 * std::numbers::pi);
    CHECK(*pre.value_at(std::numbers::pi / 4) == Approx(std::numbers::pi).epsilon(1e-3));
    for (const ProfileSample& s : pre.samples) CHECK(s.p == 2.0 * std::sqrt(std::numbers::pi * s.t));

    for (const Region& r : {fixtures::square2(), fixtures::dumbbell(), fixtures::star()}) {
        Setup st = setup(r);
        ProfileBound ma = compute_ip_bound(r, st.graph, st.params, st.necks).bound;
        ProfileBound p = analytic_prefix(st.inr);
        CHECK(ma.samples.front().p == Approx(p.samples.back().p).epsilon(5e-3));
        CHECK(ma.samples.front().t == Approx(p.samples.back().t).epsilon(5e-3));
    }
}

TEST_CASE("prefix is a lower envelope for random shapes")
{
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0.2, 1.0);
    ProfileBound pre = analytic_prefix(1.0);
    for (int trial = 0; trial < 200; ++trial) {
        Ring ring;
        int n = 5 + trial % 20;
        for (int k = 0; k < n; ++k) {
            double a = 2.0 * std::numbers::pi * k / n;
            double rad = u(rng);
            ring.push_back({rad * std::cos(a), rad * std::sin(a)});
        }
        Region shape = make_region(ring);
        CHECK(perimeter(shape) >= *pre.value_at(area(shape)) * (1.0 - 1e-12));
    }
}

TEST_CASE("tightness report")
{
    Region sq = fixtures::square2();
    Setup a = setup(sq);
    CircleSummary2 ca = second_largest_circle(sq, *a.ma, a.params.lin());
    TightnessReport ra = tightness_report(sq, a.graph, a.necks, ca, a.params);
    CHECK(ra.tight_everywhere);
    CHECK(ra.t_high_tight == 0.0);
    CHECK(std::isinf(ra.r_n));

    Region hg = fixtures::hourglass();
    Setup h = setup(hg);
    TightnessReport rh = tightness_report(hg, h.graph, h.necks, second_largest_circle(hg, *h.ma, h.params.lin()), h.params);
    CHECK(rh.thick_neck);
    CHECK(rh.tight_everywhere);

    Region db = fixtures::dumbbell();
    Setup d = setup(db);
    CircleSummary2 cd = second_largest_circle(db, *d.ma, d.params.lin());
    TightnessReport rd = tightness_report(db, d.graph, d.necks, cd, d.params);
    CHECK_FALSE(rd.thick_neck);
    CHECK_FALSE(rd.tight_everywhere);
    CHECK(rd.r_t == Approx(std::max(rd.r_m, 0.5 * rd.inr2)));
    CHECK(rd.r_t_inr == Approx(std::max(rd.r_m, 0.5 * rd.inr)));
    CHECK(rd.t_low_tight > 0.0);
    CHECK(rd.t_low_tight < rd.t_high_tight);
    CHECK(rd.t_high_tight < area(db));

    ProfileBound ma = compute_ip_bound(db, d.graph, d.params, d.necks).bound;
    int checked = 0;
    for (const ProfileSample& s : ma.samples) {
        if (s.t > rd.t_low_tight) break;
        CHECK(s.p == Approx(rounded_square_p(s.t)).epsilon(0.01));
        ++checked;
    }
    CHECK(checked >= 5);
}

TEST_CASE("deterministic output")
{
    Region r = fixtures::two_neck();
    Setup s = setup(r);
    ProfileBound a = compute_ip_bound(r, s.graph, s.params, s.necks).bound;
    ProfileBound b = compute_ip_bound(r, s.graph, s.params, s.necks).bound;
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].t == b.samples[i].t);
        CHECK(a.samples[i].p == b.samples[i].p);
    }
    ProfileBound o1 = opening_bound(r, s.params);
    ProfileBound o2 = opening_bound(r, s.params);
    REQUIRE(o1.samples.size() == o2.samples.size());
    for (std::size_t i = 0; i < o1.samples.size(); ++i) CHECK(o1.samples[i].p == o2.samples[i].p);
}

TEST_CASE("parameter errors")
{
    Region db = fixtures::dumbbell();
    Setup s = setup(db);
    AlgorithmParams bad = s.params;
    bad.r_l = 0.3;
    CHECK_THROWS_AS(compute_ip_bound(db, s.graph, bad, s.necks), ParameterError);
    bad = s.params;
    bad.d_x = -1.0;
    CHECK_THROWS_AS(compute_ip_bound(db, s.graph, bad, s.necks), ParameterError);
    bad = s.params;
    bad.n_open = 1;
    CHECK_THROWS_AS(opening_bound(db, bad), ParameterError);
    AlgorithmParams huge = setup(fixtures::square2()).params;
    huge.r_l = 2.0;
    CHECK_THROWS_AS(compute_ip_bound(fixtures::square2(), huge), ParameterError);
}

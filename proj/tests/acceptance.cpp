#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "isoprofile/pipeline.hpp"
#include "isoprofile/reconstruction.hpp"

using namespace isoprofile;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Setup {
    std::shared_ptr<const MedialAxis> ma;
    NeckSet necks;
    double inr = 0.0;
    AlgorithmParams params;
    MedialAxisGraph graph;
};

Setup setup(const Region& r)
{
    Setup s;
    s.ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
    s.necks = find_necks(*s.ma);
    s.inr = max_inscribed(*s.ma).radius;
    s.params = default_params(r, s.inr, s.necks);
    s.graph = discretize(s.ma, s.params.discretization());
    return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double rounded_square_p(double t)
{
    double rho = std::sqrt((4.0 - t) / (4.0 - std::numbers::pi));
    return 8.0 - 2.0 * (4.0 - std::numbers::pi) * rho;
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome oracle_equivalence()
{
    Outcome o;
    double worst = 0.0;
    std::vector<Region> shapes{fixtures::square2(), fixtures::rectangle4x2(), fixtures::l_shape(), fixtures::dumbbell(),
                               fixtures::star()};
    for (const Region& r : shapes) {
        auto ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
        double inr = max_inscribed(*ma).radius;
        MedialAxisGraph g = discretize(ma, {0.5 / inr, 0.05 * inr, 0.02 * inr});
        LinearizationParams lin{0.005 * std::sqrt(area(r))};
        for (double f : {0.1, 0.3, 0.5, 0.7, 0.9}) worst = std::max(worst, verify_prop_marecon(r, g, f * inr, lin));
    }
    o.pass = worst <= 1e-3;
    o.detail = fmt("max symmetric difference %.2e x area over 25 cases", worst);
    return o;
}

Outcome neck_equality()
{
    Outcome o;
    LinearizationParams lin{0.01};
    double worst = 0.0;
    for (const Region& r : {fixtures::dumbbell(), fixtures::two_neck()}) {
        MedialAxis ma = compute_medial_axis(r);
        double inr = max_inscribed(ma).radius;
        double gen = find_necks(ma).r_n;
        double cls = min_classical_neck(r, lin);
        worst = std::max(worst, std::abs(gen - cls) / inr);
    }
    bool both_inf = true;
    for (const Region& r : {fixtures::square2(), fixtures::star()}) {
        both_inf = both_inf && std::isinf(find_necks(compute_medial_axis(r)).r_n) && std::isinf(min_classical_neck(r, lin));
    }
    o.pass = worst <= 1e-3 && both_inf;
    o.detail = fmt("max |r_n gen - classical| = %.2e inr; square/star infinite: ", worst) + (both_inf ? "yes" : "no");
    return o;
}

Outcome slope_law()
{
    Outcome o;
    Region rect = fixtures::rectangle4x2();
    Setup s = setup(rect);
    const auto rv = compute_ip_bound(rect, s.graph, s.params, s.necks).bound.samples;
    double lo = INFINITY;
    double hi = -INFINITY;
    int chords = 0;
    for (std::size_t i = 1; i < rv.size(); ++i) {
        if (std::abs(rv[i - 1].radius - 1.0) > 1e-6 || std::abs(rv[i].radius - 1.0) > 1e-6) continue;
        double slope = (rv[i].p - rv[i - 1].p) / (rv[i].t - rv[i - 1].t);
        lo = std::min(lo, slope);
        hi = std::max(hi, slope);
        ++chords;
    }
    Region w = fixtures::wedge();
    Setup ws = setup(w);
    const auto wv = compute_ip_bound(w, ws.graph, ws.params, ws.necks).bound.samples;
    double wedge_err = 0.0;
    for (std::size_t i = 2; i < wv.size(); ++i) {
        double slope = (wv[i].p - wv[i - 1].p) / (wv[i].t - wv[i - 1].t);
        wedge_err = std::max(wedge_err, std::abs(slope * 0.5 * (wv[i].radius + wv[i - 1].radius) - 1.0));
    }
    o.pass = chords >= 5 && lo >= 0.98 && hi <= 1.02 && wv.size() > 20 && wedge_err <= 0.02;
    o.detail = fmt("rectangle slopes in [%.4f, %.4f] over %.0f chords; ", lo, hi, chords) +
               fmt("wedge max |slope r_mid - 1| = %.4f", wedge_err);
    return o;
}

Outcome no_neck_exactness()
{
    Outcome o;
    double worst = 0.0;
    int common = 0;
    for (const Region& r : {fixtures::star(), fixtures::square2(), fixtures::hexagon(), fixtures::triangle()}) {
        Setup s = setup(r);
        ProfileBound g = compute_ip_bound(r, s.graph, s.params, s.necks).bound;
        ProfileBound op = opening_bound(r, s.params);
        for (const ProfileSample& x : g.samples) {
            if (auto p = op.value_at(x.t)) {
                worst = std::max(worst, rel(x.p, *p));
                ++common;
            }
        }
    }
    Region sq = fixtures::square2();
    Setup s = setup(sq);
    double closed = 0.0;
    for (const ProfileSample& x : compute_ip_bound(sq, s.graph, s.params, s.necks).bound.samples)
        closed = std::max(closed, rel(x.p, rounded_square_p(x.t)));
    for (const ProfileSample& x : opening_bound(sq, s.params).samples) {
        if (x.t >= std::numbers::pi) closed = std::max(closed, rel(x.p, rounded_square_p(x.t)));
    }
    o.pass = worst <= 5e-3 && closed <= 5e-3 && common > 0;
    o.detail = fmt("greedy vs opening max %.4f%% at %.0f common t; square closed form max %.4f%%", 100 * worst, common,
                   100 * closed);
    return o;
}

Outcome monotone_feasible()
{
    Outcome o;
    bool ok = true;
    double worst_out = 0.0;
    std::size_t runs = 0;
    auto monotone = [](const ProfileBound& b, bool strict_p) {
        for (std::size_t i = 1; i < b.samples.size(); ++i) {
            if (!(b.samples[i].t > b.samples[i - 1].t)) return false;
            if (strict_p ? !(b.samples[i].p > b.samples[i - 1].p) : !(b.samples[i].p >= b.samples[i - 1].p)) return false;
        }
        return true;
    };
    RunConfig cfg;
    cfg.emit_snapshots = true;
    for (const Region& r : {fixtures::square2(), fixtures::l_shape(), fixtures::dumbbell(), fixtures::star(),
                            fixtures::two_neck(), fixtures::hourglass(), fixtures::wedge(), fixtures::disk64()}) {
        Analysis a = analyze(r, cfg);
        ok = ok && monotone(a.medial, true) && monotone(a.opening, false) && monotone(a.combined, false) &&
             monotone(a.prefix, true);
        for (const Snapshot& snap : a.snapshots)
            worst_out = std::max(worst_out, area(subtract(snap.region, r)) / area(r));
        ++runs;
    }
    o.pass = ok && worst_out <= 1e-9;
    o.detail = fmt("%.0f runs monotone: ", runs) + (ok ? "yes" : "no") +
               fmt("; max area(F \\ omega) = %.2e x area", worst_out);
    return o;
}

Outcome post_processing()
{
    Outcome o;
    Region f = fixtures::sawtooth_pinholes();
    Region omega = make_region({{-1, -1}, {3, -1}, {3, 3}, {-1, 3}});
    Region g = post_process(f, 0.005, omega, {0.01});
    double change = std::abs(area(g) - area(f)) / area(f);
    o.pass = change < 1e-5 && perimeter(g) < perimeter(f);
    o.detail = fmt("relative area change %.2e; perimeter %.4f -> %.4f", change, perimeter(f), perimeter(g));
    return o;
}

Outcome discontinuity_repair()
{
    Outcome o;
    Region db = fixtures::dumbbell();
    Setup s = setup(db);
    ProfileBound b = opening_bound(db, s.params);
    double gap = 0.0;
    bool mono = true;
    int repairs = 0;
    for (std::size_t i = 1; i < b.samples.size(); ++i) {
        gap = std::max(gap, b.samples[i].t - b.samples[i - 1].t);
        mono = mono && b.samples[i].t > b.samples[i - 1].t && b.samples[i].p >= b.samples[i - 1].p;
        repairs += b.samples[i].source == SampleSource::OpeningRepair;
    }
    o.pass = gap <= 0.01 * area(db) && mono && repairs > 0;
    o.detail = fmt("max t-gap %.3f%% of area, %.0f inserted samples, monotone: ", 100 * gap / area(db), repairs) +
               (mono ? "yes" : "no");
    return o;
}

Outcome tightness_ranges()
{
    Outcome o;
    Region db = fixtures::dumbbell();
    Setup d = setup(db);
    LinearizationParams lin = d.params.lin();
    TightnessReport rd = tightness_report(db, d.graph, d.necks, second_largest_circle(db, *d.ma, lin), d.params);
    ProfileBound ma = compute_ip_bound(db, d.graph, d.params, d.necks).bound;
    double worst = 0.0;
    int checked = 0;
    for (const ProfileSample& x : ma.samples) {
        if (x.t < std::numbers::pi * d.inr * d.inr || x.t > rd.t_low_tight) continue;
        worst = std::max(worst, rel(x.p, rounded_square_p(x.t)));
        ++checked;
    }
    Region hg = fixtures::hourglass();
    Setup h = setup(hg);
    TightnessReport rh =
        tightness_report(hg, h.graph, h.necks, second_largest_circle(hg, *h.ma, h.params.lin()), h.params);
    bool order = 0.0 < rd.t_low_tight && rd.t_low_tight < rd.t_high_tight && rd.t_high_tight < area(db);
    o.pass = order && checked >= 5 && worst <= 0.01 && rh.tight_everywhere;
    o.detail = fmt("dumbbell 0 < %.4f < %.4f < area; ", rd.t_low_tight, rd.t_high_tight) +
               fmt("closed form max %.3f%% over %.0f samples; hourglass tight everywhere: ", 100 * worst, checked) +
               (rh.tight_everywhere ? "yes" : "no");
    return o;
}

Outcome tv_study_criterion()
{
    Outcome o;
    Region d = fixtures::polygon_disk(1.0, 4096);
    double ref = 2.0 * std::numbers::pi;
    bool better = true;
    double e400 = 0.0;
    for (std::size_t ny : {50u, 100u, 200u, 400u}) {
        IndicatorGrid g = rasterize(d, ny);
        double e1 = std::abs(tv_perimeter(g, Stencil::TV1) - ref);
        double e3 = std::abs(tv_perimeter(g, Stencil::Smooth3) - ref);
        better = better && e3 < e1;
        e400 = e3 / ref;
    }
    o.pass = better && e400 < 0.05;
    o.detail = std::string("smooth3 beats tv1 at every ny: ") + (better ? "yes" : "no") +
               fmt("; smooth3 relative error at ny=400 %.3f%%", 100 * e400);
    return o;
}

Outcome analytic_prefix_criterion()
{
    Outcome o;
    bool exact = true;
    double join = 0.0;
    for (const Region& r : {fixtures::square2(), fixtures::rectangle4x2(), fixtures::l_shape(), fixtures::dumbbell(),
                            fixtures::star()}) {
        Setup s = setup(r);
        ProfileBound pre = analytic_prefix(s.graph.inr);
        for (const ProfileSample& x : pre.samples) {
            bool last = &x == &pre.samples.back();
            double formula = last ? 2.0 * std::numbers::pi * s.graph.inr : 2.0 * std::sqrt(std::numbers::pi * x.t);
            exact = exact && x.p == formula;
        }
        ProfileBound ma = compute_ip_bound(r, s.graph, s.params, s.necks).bound;
        join = std::max(join, rel(ma.samples.front().p, pre.samples.back().p));
    }
    o.pass = exact && join < 5e-3;
    o.detail = std::string("formula-exact: ") + (exact ? "yes" : "no") + fmt("; max join gap %.4f%% in p", 100 * join);
    return o;
}

Outcome reconstruction_completeness()
{
    Outcome o;
    double worst = 0.0;
    int shapes = 0;
    for (const Region& r : {fixtures::square2(), fixtures::rectangle4x2(), fixtures::l_shape(), fixtures::triangle(),
                            fixtures::hexagon(), fixtures::dumbbell(), fixtures::dumbbell_unequal(),
                            fixtures::hourglass(), fixtures::two_neck(), fixtures::star(), fixtures::disk64(),
                            fixtures::wedge()}) {
        auto ma = std::make_shared<const MedialAxis>(compute_medial_axis(r));
        double inr = max_inscribed(*ma).radius;
        MedialAxisGraph g = discretize(ma, {0.5 / inr, 0.0, 0.02 * inr});
        Region rec = limited_reconstruction(r, g, full_subgraph(g), {0.005 * std::sqrt(area(r))});
        worst = std::max(worst, symmetric_difference_area(rec, r) / area(r));
        ++shapes;
    }
    o.pass = worst <= 0.01;
    o.detail = fmt("max symmetric difference %.3e x area over %.0f fixtures", worst, shapes);
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
        double budget;
    };
    std::vector<Criterion> criteria{
        {"oracle equivalence", oracle_equivalence, 60.0},
        {"neck equality", neck_equality, INFINITY},
        {"slope law", slope_law, INFINITY},
        {"no-neck exactness", no_neck_exactness, INFINITY},
        {"monotonicity and feasibility", monotone_feasible, INFINITY},
        {"post-processing", post_processing, INFINITY},
        {"discontinuity repair", discontinuity_repair, INFINITY},
        {"tightness ranges", tightness_ranges, INFINITY},
        {"TV stencil study", tv_study_criterion, 30.0},
        {"analytic prefix", analytic_prefix_criterion, INFINITY},
        {"reconstruction completeness", reconstruction_completeness, INFINITY},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > criteria[k].budget) {
            o.pass = false;
            o.detail += fmt(" (over the %.0f s budget)", criteria[k].budget);
        }
        failed += !o.pass;
        std::printf("%s %2zu %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].name, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}

#include "isoprofile/profile.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numbers>
#include <queue>
#include <thread>

#include "isoprofile/reconstruction.hpp"

namespace isoprofile {
namespace {

constexpr double kEmitFraction = 1.0 / 2000.0;
constexpr int kInflationSamples = 10;
constexpr int kMaxBridgeSamples = 400;
constexpr std::size_t kUnionBatch = 8;

template <class F>
void parallel_for(std::size_t n, F f)
{
    std::size_t workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (std::thread& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

ProfileSample measure(const Region& r, SampleSource source, double radius)
{
    return {area(r), perimeter(r), source, radius, std::nullopt};
}

struct OpeningEval {
    double r = 0.0;
    Region shape;
    double t = 0.0;
    double p = 0.0;
    std::size_t components = 0;
    Point smallest_center;
};

double median_gap(const std::vector<OpeningEval>& evals)
{
    std::vector<double> ts;
    for (const OpeningEval& e : evals) {
        if (e.t > 0.0) ts.push_back(e.t);
    }
    std::sort(ts.begin(), ts.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < ts.size(); ++i) {
        if (ts[i] > ts[i - 1]) gaps.push_back(ts[i] - ts[i - 1]);
    }
    if (gaps.empty()) return INFINITY;
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

Region halfplane(const BoundingBox& box, bool along_x, double s, bool keep_below)
{
    double pad = box.diagonal() + 1.0;
    BoundingBox b = box;
    b.min = b.min - Point{pad, pad};
    b.max = b.max + Point{pad, pad};
    double& edge = keep_below ? (along_x ? b.max.x : b.max.y) : (along_x ? b.min.x : b.min.y);
    edge = s;
    if (b.max.x <= b.min.x || b.max.y <= b.min.y) return {};
    return make_region({b.min, {b.max.x, b.min.y}, b.max, {b.min.x, b.max.y}});
}

// Bisects s in [lo, hi] so that area(shape(s)) hits each goal; area(shape(s))
// must be monotone in s.
template <class Shape>
void area_chain(Shape shape, double lo, double hi, bool increasing, const std::vector<double>& goals, double tol,
                double radius, std::vector<ProfileSample>& out)
{
    for (double goal : goals) {
        double a = lo;
        double b = hi;
        Region best;
        for (int it = 0; it < 40; ++it) {
            double s = 0.5 * (a + b);
            Region u = shape(s);
            double t = area(u);
            best = std::move(u);
            if (std::abs(t - goal) <= tol) break;
            if ((t < goal) == increasing) a = s;
            else b = s;
        }
        if (!best.empty()) out.push_back(measure(best, SampleSource::OpeningRepair, radius));
    }
}

// Fills the area range between base and target with half-plane sweeps: base
// grown by the swept part of target, and target cut back from either end.
void sweep_bridge(const Region& base, const Region& target, double spacing, double radius,
                  std::vector<ProfileSample>& out)
{
    double t_lo = area(base);
    double t_hi = area(target);
    if (!(t_hi - t_lo > 1.5 * spacing)) return;
    Region diff = subtract(target, base);
    if (diff.empty()) return;
    BoundingBox box = bounding_box(diff);
    bool along_x = box.width() >= box.height();
    BoundingBox all = bounding_box(target);
    all.extend(bounding_box(base));
    int m = std::min(kMaxBridgeSamples, static_cast<int>(std::ceil((t_hi - t_lo) / spacing)));
    double step = (t_hi - t_lo) / m;
    std::vector<double> goals;
    for (int k = 1; k < m; ++k) goals.push_back(t_lo + k * step);
    double tol = 0.1 * step;

    double d_lo = along_x ? box.min.x : box.min.y;
    double d_hi = along_x ? box.max.x : box.max.y;
    double a_lo = along_x ? all.min.x : all.min.y;
    double a_hi = along_x ? all.max.x : all.max.y;
    area_chain([&](double s) { return unite(base, intersect(target, halfplane(all, along_x, s, true))); }, d_lo, d_hi,
               true, goals, tol, radius, out);
    area_chain([&](double s) { return intersect(target, halfplane(all, along_x, s, true)); }, a_lo, a_hi, true, goals,
               tol, radius, out);
    area_chain([&](double s) { return intersect(target, halfplane(all, along_x, s, false)); }, a_lo, a_hi, false, goals,
               tol, radius, out);
}

const OpeningEval& by_t(const OpeningEval& a, const OpeningEval& b, bool lower)
{
    return (a.t < b.t) == lower ? a : b;
}

double gamma_area(const Region& omega, double r, Point inx, const LinearizationParams& lin)
{
    std::vector<Region> comps = connected_components(erode(omega, r, lin));
    if (comps.empty()) return 0.0;
    const Region* pick = nullptr;
    double best = INFINITY;
    for (const Region& c : comps) {
        double d = contains(c, inx) ? 0.0 : boundary_distance(c, inx);
        if (d < best) {
            best = d;
            pick = &c;
        }
    }
    return area(dilate(*pick, r, lin));
}

}  // namespace

const char* to_string(SampleSource source)
{
    switch (source) {
    case SampleSource::MedialAxis: return "medial_axis";
    case SampleSource::Opening: return "opening";
    case SampleSource::OpeningRepair: return "opening_repair";
    case SampleSource::AnalyticPrefix: return "analytic_prefix";
    }
    return "unknown";
}

std::optional<SampleSource> source_from_string(const std::string& name)
{
    for (SampleSource s : {SampleSource::MedialAxis, SampleSource::Opening, SampleSource::OpeningRepair,
                           SampleSource::AnalyticPrefix}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

std::optional<double> ProfileBound::value_at(double t) const
{
    if (samples.empty() || t < t_min() || t > t_max()) return std::nullopt;
    auto it = std::lower_bound(samples.begin(), samples.end(), t,
                               [](const ProfileSample& s, double v) { return s.t < v; });
    if (it->t == t || it == samples.begin()) return it->p;
    const ProfileSample& b = *it;
    const ProfileSample& a = *(it - 1);
    return a.p + (b.p - a.p) * (t - a.t) / (b.t - a.t);
}

void AlgorithmParams::validate() const
{
    auto positive = [](double v, const char* name) {
        if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(name) + " must be positive");
    };
    positive(d_c, "d_c");
    positive(r_l, "r_l");
    positive(d_x, "d_x");
    positive(s_max, "s_max");
    positive(r_c, "r_c");
    if (n_open < 2) throw ParameterError("n_open must be at least 2");
}

AlgorithmParams default_params(const Region& omega, double inr, const NeckSet& necks)
{
    AlgorithmParams p;
    p.d_c = 0.5 / inr;
    p.r_l = std::isfinite(necks.r_n) ? necks.r_n * (1.0 - 1e-9) : 0.05 * inr;
    p.d_x = 0.005 * std::sqrt(area(omega));
    p.s_max = 0.02 * inr;
    p.r_c = 0.5 * p.d_x;
    p.n_open = 100;
    return p;
}

Region post_process(const Region& f, double r_c, const Region& omega, const LinearizationParams& lin)
{
    if (f.empty()) return {};
    return intersect(close(remove_holes(f), r_c, lin), omega);
}

IPBoundResult compute_ip_bound(const Region& omega, const MedialAxisGraph& mag, const AlgorithmParams& params,
                               const NeckSet& necks, bool keep_snapshots)
{
    params.validate();
    if (std::isfinite(necks.r_n) && params.r_l > necks.r_n) throw ParameterError("r_l exceeds the minimal neck radius");
    if (mag.nodes.empty()) throw ParameterError("medial-axis graph is empty");
    LinearizationParams lin = params.lin();
    double emit_step = area(omega) * kEmitFraction;

    std::vector<double> events;
    for (const Neck& n : necks.necks) events.push_back(n.radius);
    std::sort(events.begin(), events.end(), std::greater<>());
    std::size_t next_event = 0;

    auto adj = mag.adjacency();
    std::vector<bool> in_g(mag.nodes.size(), false);
    auto cmp = [](const std::pair<double, std::size_t>& a, const std::pair<double, std::size_t>& b) {
        return a.first != b.first ? a.first < b.first : a.second > b.second;
    };
    std::priority_queue<std::pair<double, std::size_t>, std::vector<std::pair<double, std::size_t>>, decltype(cmp)> frontier(cmp);
    frontier.push({mag.nodes[mag.inx_node].radius, mag.inx_node});

    IPBoundResult out;
    Region raw;
    double last_attempt = -INFINITY;
    double last_radius = NAN;
    bool emitted_last = false;

    auto emit = [&](double radius) {
        Region f = post_process(raw, params.r_c, omega, lin);
        ProfileSample s = measure(f, SampleSource::MedialAxis, radius);
        const auto& samples = out.bound.samples;
        if (!samples.empty() && !(s.t > samples.back().t && s.p > samples.back().p)) return;
        if (keep_snapshots) {
            s.shape_ref = out.snapshots.size();
            out.snapshots.push_back({out.snapshots.size(), s.t, s.p, std::move(f)});
        }
        out.bound.samples.push_back(s);
    };

    Region pending;
    std::size_t batch = 0;
    auto flush = [&] {
        if (pending.empty()) return;
        for (Polygon& poly : raw.polygons) pending.polygons.push_back(std::move(poly));
        raw = normalize(pending);
        pending = {};
        batch = 0;
    };

    while (!frontier.empty()) {
        auto [r, c] = frontier.top();
        frontier.pop();
        if (in_g[c]) continue;
        if (raw.empty()) {
            raw = make_region(make_disk(mag.nodes[c].position, mag.nodes[c].radius, lin));
        } else {
            for (std::size_t e : adj[c]) {
                std::size_t other = mag.edges[e].a == c ? mag.edges[e].b : mag.edges[e].a;
                if (!in_g[other]) continue;
                for (Polygon& poly : reconstruct_edge(omega, mag, e, lin).polygons) pending.polygons.push_back(std::move(poly));
            }
            ++batch;
        }
        in_g[c] = true;
        for (std::size_t e : adj[c]) {
            std::size_t other = mag.edges[e].a == c ? mag.edges[e].b : mag.edges[e].a;
            if (!in_g[other]) frontier.push({mag.nodes[other].radius, other});
        }
        bool force = out.bound.samples.empty();
        while (next_event < events.size() && r <= events[next_event] * (1.0 + 1e-12)) {
            force = true;
            ++next_event;
        }
        last_radius = r;
        emitted_last = false;
        if (!force && batch < kUnionBatch) continue;
        flush();
        double t_raw = area(raw);
        if (force || t_raw - last_attempt >= emit_step) {
            last_attempt = t_raw;
            emit(r);
            emitted_last = true;
        }
    }
    flush();
    if (!emitted_last) emit(last_radius);
    return out;
}

IPBoundResult compute_ip_bound(const Region& omega, const AlgorithmParams& params, bool keep_snapshots)
{
    params.validate();
    auto ma = std::make_shared<const MedialAxis>(compute_medial_axis(omega));
    NeckSet necks = find_necks(*ma);
    MedialAxisGraph mag = discretize(ma, params.discretization());
    return compute_ip_bound(omega, mag, params, necks, keep_snapshots);
}

ProfileBound opening_bound(const Region& omega, const AlgorithmParams& params)
{
    params.validate();
    LinearizationParams lin = params.lin();
    double inr = max_inscribed(compute_medial_axis(omega)).radius;
    std::size_t n = static_cast<std::size_t>(params.n_open);

    std::vector<OpeningEval> evals(n);
    parallel_for(n, [&](std::size_t i) {
        OpeningEval& e = evals[i];
        e.r = inr * static_cast<double>(i) / static_cast<double>(n - 1);
        Region core = i == 0 ? omega : erode(omega, e.r, lin);
        std::vector<Region> comps = connected_components(core);
        e.components = comps.size();
        double smallest = INFINITY;
        for (const Region& c : comps) {
            double a = area(c);
            if (a < smallest) {
                smallest = a;
                e.smallest_center = bounding_box(c).center();
            }
        }
        e.shape = i == 0 ? omega : dilate(core, e.r, lin);
        e.t = area(e.shape);
        e.p = perimeter(e.shape);
    });

    std::vector<ProfileSample> samples;
    for (const OpeningEval& e : evals) {
        if (e.t > 0.0) samples.push_back({e.t, e.p, SampleSource::Opening, e.r, std::nullopt});
    }

    double spacing = median_gap(evals);
    if (!std::isfinite(spacing)) spacing = area(omega) / static_cast<double>(n);
    std::vector<std::vector<ProfileSample>> repairs(n);
    parallel_for(n - 1, [&](std::size_t i) {
        const OpeningEval& a = evals[i];
        const OpeningEval& b = evals[i + 1];
        if (a.components == b.components) return;
        const OpeningEval& more = a.components > b.components ? a : b;
        const OpeningEval& lo = by_t(a, b, true);
        const OpeningEval& hi = by_t(a, b, false);
        double rho_max = more.r;
        double disk_area = std::numbers::pi * rho_max * rho_max;
        int count = std::max(kInflationSamples, static_cast<int>(std::ceil(disk_area / spacing)));
        count = std::min(count, kMaxBridgeSamples);
        Region grown = lo.shape;
        double last_t = lo.t;
        for (int k = 1; k <= count && rho_max > 0.0; ++k) {
            double rho = rho_max * std::sqrt(static_cast<double>(k) / count);
            Region disk = intersect(make_region(make_disk(more.smallest_center, rho, lin)), omega);
            Region u = unite(lo.shape, disk);
            ProfileSample s = measure(u, SampleSource::OpeningRepair, rho);
            if (s.t > last_t && s.t < hi.t) {
                repairs[i].push_back(s);
                last_t = s.t;
                grown = std::move(u);
            }
        }
        sweep_bridge(grown, hi.shape, spacing, hi.r, repairs[i]);
    });
    for (auto& r : repairs) samples.insert(samples.end(), r.begin(), r.end());
    return monotone_filter(std::move(samples));
}

ProfileBound monotone_filter(std::vector<ProfileSample> samples)
{
    std::stable_sort(samples.begin(), samples.end(), [](const ProfileSample& a, const ProfileSample& b) {
        return a.t != b.t ? a.t < b.t : a.p < b.p;
    });
    std::vector<ProfileSample> unique;
    for (ProfileSample& s : samples) {
        if (unique.empty() || s.t > unique.back().t) unique.push_back(std::move(s));
    }
    std::vector<ProfileSample> kept;
    double suffix_min = INFINITY;
    for (auto it = unique.rbegin(); it != unique.rend(); ++it) {
        if (it->p <= suffix_min) {
            kept.push_back(*it);
            suffix_min = it->p;
        }
    }
    std::reverse(kept.begin(), kept.end());
    return {std::move(kept)};
}

ProfileBound combine_bounds(const ProfileBound& a, const ProfileBound& b)
{
    if (a.empty()) return b;
    if (b.empty()) return a;
    std::vector<double> grid;
    for (const ProfileSample& s : a.samples) grid.push_back(s.t);
    for (const ProfileSample& s : b.samples) grid.push_back(s.t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto exact = [](const ProfileBound& bound, double t) -> const ProfileSample* {
        auto it = std::lower_bound(bound.samples.begin(), bound.samples.end(), t,
                                   [](const ProfileSample& s, double v) { return s.t < v; });
        return it != bound.samples.end() && it->t == t ? &*it : nullptr;
    };
    auto source_near = [](const ProfileBound& bound, double t) {
        auto it = std::upper_bound(bound.samples.begin(), bound.samples.end(), t,
                                   [](double v, const ProfileSample& s) { return v < s.t; });
        return it == bound.samples.begin() ? it->source : (it - 1)->source;
    };
    auto pick = [&](double t) -> std::optional<ProfileSample> {
        std::optional<double> va = a.value_at(t);
        std::optional<double> vb = b.value_at(t);
        if (!va && !vb) return std::nullopt;
        bool use_a = va && (!vb || *va <= *vb);
        const ProfileBound& src = use_a ? a : b;
        if (const ProfileSample* s = exact(src, t)) return *s;
        return std::nullopt;
    };

    std::vector<ProfileSample> out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (auto s = pick(grid[k])) out.push_back(*s);
        if (k + 1 == grid.size()) continue;
        double t0 = grid[k];
        double t1 = grid[k + 1];
        auto a0 = a.value_at(t0), a1 = a.value_at(t1), b0 = b.value_at(t0), b1 = b.value_at(t1);
        if (!a0 || !a1 || !b0 || !b1) continue;
        double d0 = *a0 - *b0;
        double d1 = *a1 - *b1;
        if ((d0 < 0.0 && d1 > 0.0) || (d0 > 0.0 && d1 < 0.0)) {
            double tc = t0 + (t1 - t0) * d0 / (d0 - d1);
            if (tc > t0 && tc < t1) {
                double pc = *a0 + (*a1 - *a0) * (tc - t0) / (t1 - t0);
                out.push_back({tc, pc, d1 < 0.0 ? source_near(a, tc) : source_near(b, tc), NAN, std::nullopt});
            }
        }
    }
    return monotone_filter(std::move(out));
}

ProfileBound analytic_prefix(double inr, std::size_t count)
{
    ProfileBound b;
    double t_end = std::numbers::pi * inr * inr;
    count = std::max<std::size_t>(count, 1);
    for (std::size_t k = 0; k <= count; ++k) {
        double f = static_cast<double>(k) / static_cast<double>(count);
        double t = k == count ? t_end : t_end * f * f;
        double p = k == count ? 2.0 * std::numbers::pi * inr : 2.0 * std::sqrt(std::numbers::pi * t);
        b.samples.push_back({t, p, SampleSource::AnalyticPrefix, std::sqrt(t / std::numbers::pi), std::nullopt});
    }
    return b;
}

TightnessReport tightness_report(const Region& omega, const MedialAxisGraph& mag, const NeckSet& ns,
                                 const CircleSummary2& c2, const AlgorithmParams& params)
{
    LinearizationParams lin = params.lin();
    TightnessReport rep;
    rep.r_n = ns.r_n;
    rep.r_m = ns.r_m;
    rep.inr = mag.inr;
    rep.inr2 = c2.inr2;
    rep.area = area(omega);
    rep.thick_neck = thick_neck_condition(ns, c2);
    if (ns.empty()) {
        rep.t_low_tight = rep.area;
        rep.t_low_tight_inr = rep.area;
        rep.t_high_tight = 0.0;
        rep.tight_everywhere = true;
        return rep;
    }
    rep.r_t = std::max(ns.r_m, 0.5 * c2.inr2);
    rep.r_t_inr = std::max(ns.r_m, 0.5 * mag.inr);
    rep.t_low_tight = std::min(rep.area, gamma_area(omega, rep.r_t, mag.inx, lin));
    rep.t_low_tight_inr = std::min(rep.area, gamma_area(omega, rep.r_t_inr, mag.inx, lin));
    rep.t_high_tight = std::min(rep.area, area(open(omega, ns.r_n, lin)));
    rep.tight_everywhere = rep.thick_neck;
    return rep;
}

}  // namespace isoprofile

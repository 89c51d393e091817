#include "isoprofile/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <type_traits>

#include <nlohmann/json.hpp>

namespace isoprofile {
namespace {

using Json = nlohmann::ordered_json;

Json number(double v)
{
    if (!std::isfinite(v)) return nullptr;
    return v;
}

Json params_json(const AlgorithmParams& p)
{
    Json j;
    j["d_c"] = number(p.d_c);
    j["r_l"] = number(p.r_l);
    j["d_x"] = number(p.d_x);
    j["s_max"] = number(p.s_max);
    j["r_c"] = number(p.r_c);
    j["n_open"] = p.n_open;
    return j;
}

Json neck_array(const NeckSet& ns)
{
    Json arr = Json::array();
    for (const Neck& n : ns.necks) {
        Json j;
        j["x"] = number(n.location.x);
        j["y"] = number(n.location.y);
        j["radius"] = number(n.radius);
        j["kind"] = to_string(n.kind);
        arr.push_back(std::move(j));
    }
    return arr;
}

class Stopwatch {
public:
    explicit Stopwatch(std::map<std::string, double>& sink) : sink_(sink) {}

    template <class F>
    auto operator()(const std::string& stage, F f)
    {
        auto start = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            record(stage, start);
        } else {
            auto result = f();
            record(stage, start);
            return result;
        }
    }

private:
    void record(const std::string& stage, std::chrono::steady_clock::time_point start)
    {
        sink_[stage] += std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }

    std::map<std::string, double>& sink_;
};

void write_file(const std::filesystem::path& path, const std::string& body)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << body;
    if (!out) throw InputError("write failed: " + path.string());
}

ProfileBound beyond(const ProfileBound& b, double t)
{
    ProfileBound out;
    for (const ProfileSample& s : b.samples) {
        if (s.t > t) out.samples.push_back(s);
    }
    return out;
}

template <class F>
std::string capture(F f)
{
    std::ostringstream s;
    f(s);
    return s.str();
}

}  // namespace

AlgorithmParams ParamOverrides::apply(AlgorithmParams p) const
{
    if (d_c) p.d_c = *d_c;
    if (r_l) p.r_l = *r_l;
    if (d_x) {
        p.d_x = *d_x;
        if (!r_c) p.r_c = 0.5 * *d_x;
    }
    if (s_max) p.s_max = *s_max;
    if (r_c) p.r_c = *r_c;
    if (n_open) p.n_open = *n_open;
    return p;
}

Analysis analyze(const Region& omega, const RunConfig& cfg)
{
    validate(omega);
    Analysis a;
    a.omega = omega;
    Stopwatch timed(a.timings);
    a.axis = timed("medial_axis", [&] { return std::make_shared<const MedialAxis>(compute_medial_axis(omega)); });
    a.necks = timed("necks", [&] { return find_necks(*a.axis); });
    double inr = max_inscribed(*a.axis).radius;
    a.params = cfg.params.apply(default_params(omega, inr, a.necks));
    a.params.validate();
    LinearizationParams lin = a.params.lin();
    a.graph = timed("discretize", [&] { return discretize(a.axis, a.params.discretization()); });
    a.circle2 = timed("second_circle", [&] { return second_largest_circle(omega, *a.axis, lin); });

    IPBoundResult ip = timed("greedy", [&] {
        return compute_ip_bound(omega, a.graph, a.params, a.necks, cfg.emit_snapshots);
    });
    a.medial = std::move(ip.bound);
    a.snapshots = std::move(ip.snapshots);
    a.prefix = analytic_prefix(a.graph.inr);
    if (cfg.run_opening) a.opening = timed("opening", [&] { return opening_bound(omega, a.params); });
    double t_prefix = a.prefix.t_max();
    a.combined = combine_bounds(combine_bounds(a.prefix, beyond(a.medial, t_prefix)), beyond(a.opening, t_prefix));
    a.report = timed("tightness", [&] { return tightness_report(omega, a.graph, a.necks, a.circle2, a.params); });
    if (!cfg.tv_nys.empty()) {
        a.tv = timed("tv", [&] { return tv_study(omega, cfg.tv_nys, perimeter(omega)); });
    }
    return a;
}

std::string report_json(const Analysis& a)
{
    const TightnessReport& r = a.report;
    Json j;
    j["r_n"] = number(r.r_n);
    j["r_m"] = number(r.r_m);
    j["inr"] = number(r.inr);
    j["inr2"] = number(r.inr2);
    j["r_t"] = number(r.r_t);
    j["r_t_inr"] = number(r.r_t_inr);
    j["t_low_tight"] = number(r.t_low_tight);
    j["t_low_tight_inr"] = number(r.t_low_tight_inr);
    j["t_high_tight"] = number(r.t_high_tight);
    j["thick_neck"] = r.thick_neck;
    j["tight_everywhere"] = r.tight_everywhere;
    j["area"] = number(r.area);
    j["perimeter"] = number(perimeter(a.omega));
    j["params"] = params_json(a.params);
    j["necks"] = neck_array(a.necks);
    EventLines ev = event_lines(r);
    Json e;
    e["max_inscribed_t"] = number(ev.max_inscribed_t);
    e["minimal_neck_t"] = ev.minimal_neck_t ? number(*ev.minimal_neck_t) : Json(nullptr);
    e["conservatively_tight_t"] = ev.conservatively_tight_t ? number(*ev.conservatively_tight_t) : Json(nullptr);
    e["max_area_t"] = number(ev.max_area_t);
    j["event_lines"] = std::move(e);
    Json counts;
    counts["medial_axis_segments"] = a.axis ? a.axis->segments.size() : 0;
    counts["graph_nodes"] = a.graph.nodes.size();
    counts["graph_edges"] = a.graph.edges.size();
    counts["profile_samples"] = a.combined.samples.size();
    j["counts"] = std::move(counts);
    return j.dump(2) + "\n";
}

std::string necks_json(const NeckSet& ns)
{
    Json j;
    j["r_n"] = number(ns.r_n);
    j["r_m"] = number(ns.r_m);
    j["necks"] = neck_array(ns);
    return j.dump(2) + "\n";
}

std::string timings_json(const Analysis& a)
{
    Json j;
    for (const auto& [stage, seconds] : a.timings) j[stage] = seconds;
    return j.dump(2) + "\n";
}

void write_artifacts(const Analysis& a, const RunConfig& cfg)
{
    namespace fs = std::filesystem;
    fs::create_directories(cfg.out_dir);
    write_file(cfg.out_dir / "profile.csv", capture([&](std::ostream& s) { write_profile_csv(a.combined, s); }));
    write_file(cfg.out_dir / "report.json", report_json(a));
    write_file(cfg.out_dir / "timings.json", timings_json(a));
    if (cfg.emit_plot) {
        std::vector<PlotCurve> curves{{"combined", a.combined}, {"medial axis", a.medial}};
        if (!a.opening.empty()) curves.push_back({"opening", a.opening});
        curves.push_back({"analytic prefix", a.prefix});
        write_file(cfg.out_dir / "plot.svg",
                   capture([&](std::ostream& s) { emit_plot(curves, {event_lines(a.report)}, s); }));
    }
    if (!a.tv.empty()) {
        write_file(cfg.out_dir / "tv_study.csv", capture([&](std::ostream& s) { write_tv_study_csv(a.tv, s); }));
    }
    if (cfg.emit_snapshots) {
        fs::path dir = cfg.out_dir / "snapshots";
        fs::create_directories(dir);
        std::string index = "id,t,p,file\n";
        for (const Snapshot& snap : a.snapshots) {
            char name[32];
            std::snprintf(name, sizeof name, "F_%05zu.wkt", snap.id);
            write_file(dir / name, capture([&](std::ostream& s) { write_wkt(snap.region, s); }));
            index += std::to_string(snap.id) + "," + format_double(snap.t) + "," + format_double(snap.p) + "," + name + "\n";
        }
        write_file(dir / "index.csv", index);
    }
}

Analysis run_pipeline(const RunConfig& cfg)
{
    Region omega = load_polygon(cfg.input, cfg.format, cfg.normalize_area);
    Analysis a = analyze(omega, cfg);
    write_artifacts(a, cfg);
    return a;
}

}  // namespace isoprofile

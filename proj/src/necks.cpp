#include "isoprofile/necks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace isoprofile {
namespace {

constexpr double kSlopeTol = 1e-9;
constexpr double kFlatTol = 1e-9;
constexpr int kScanSteps = 100;

enum class Slope { Down, Flat, Up };

double slope_at(const MASegment& s, double q)
{
    switch (s.kind) {
    case SegmentKind::EdgeEdge: return s.q1 == s.q0 ? 0.0 : (s.r1 - s.r0) / (s.q1 - s.q0);
    case SegmentKind::VertVert: return q / std::hypot(q, s.shape);
    case SegmentKind::EdgeVert: return q / s.shape;
    }
    return 0.0;
}

double radius_span(const MASegment& s)
{
    double lo = std::min(s.r0, s.r1);
    double hi = std::max(s.r0, s.r1);
    if (auto st = s.stationary_q(); st && std::min(s.q0, s.q1) < *st && *st < std::max(s.q0, s.q1)) {
        lo = std::min(lo, s.radius_at(*st));
    }
    return hi - lo;
}

struct Classifier {
    const MedialAxis& ma;
    double flat_tol;

    bool flat(const MASegment& s) const { return radius_span(s) <= flat_tol; }

    Slope leaving(const MASegment& s, std::size_t node) const
    {
        if (flat(s)) return Slope::Flat;
        double here = node == s.node0 ? s.q0 : s.q1;
        double there = node == s.node0 ? s.q1 : s.q0;
        double d = slope_at(s, here) * (there > here ? 1.0 : -1.0);
        if (d > kSlopeTol) return Slope::Up;
        if (d < -kSlopeTol) return Slope::Down;
        return s.kind == SegmentKind::EdgeEdge ? Slope::Flat : Slope::Up;
    }
};

Point run_midpoint(const MedialAxis& ma, const std::vector<std::size_t>& run)
{
    std::vector<std::vector<std::size_t>> inc(ma.nodes.size());
    double total = 0.0;
    for (std::size_t si : run) {
        inc[ma.segments[si].node0].push_back(si);
        inc[ma.segments[si].node1].push_back(si);
        total += ma.segments[si].length();
    }
    std::size_t start = npos;
    for (std::size_t si : run) {
        for (std::size_t n : {ma.segments[si].node0, ma.segments[si].node1}) {
            if (inc[n].size() > 2) return ma.nodes[n].position;
            if (inc[n].size() == 1 && start == npos) start = n;
        }
    }
    if (start == npos) return ma.segments[run.front()].at(0.5);
    double half = 0.5 * total;
    std::size_t node = start;
    std::size_t prev_seg = npos;
    double walked = 0.0;
    while (true) {
        std::size_t next = npos;
        for (std::size_t si : inc[node]) {
            if (si != prev_seg) next = si;
        }
        if (next == npos) return ma.nodes[node].position;
        const MASegment& s = ma.segments[next];
        double len = s.length();
        bool forward = s.node0 == node;
        if (walked + len >= half) {
            double f = len > 0.0 ? (half - walked) / len : 0.0;
            return s.at(forward ? f : 1.0 - f);
        }
        walked += len;
        prev_seg = next;
        node = forward ? s.node1 : s.node0;
    }
}

double inscribed_radius_by_erosion(const Region& omega, const LinearizationParams& lin)
{
    BoundingBox box = bounding_box(omega);
    double lo = 0.0;
    double hi = 0.5 * std::min(box.width(), box.height());
    hi = std::nextafter(hi, INFINITY);
    while (hi - lo > 1e-7 * hi) {
        double mid = 0.5 * (lo + hi);
        if (erode(omega, mid, lin).empty()) hi = mid;
        else lo = mid;
    }
    return lo;
}

double sampled_inscribed(const Region& piece, Point& where)
{
    BoundingBox box = bounding_box(piece);
    const int n = 200;
    double step = std::max(box.width(), box.height()) / n;
    double best = 0.0;
    where = box.center();
    for (double y = box.min.y + 0.5 * step; y < box.max.y; y += step) {
        for (double x = box.min.x + 0.5 * step; x < box.max.x; x += step) {
            Point p{x, y};
            if (!contains(piece, p)) continue;
            double d = boundary_distance(piece, p);
            if (d > best) {
                best = d;
                where = p;
            }
        }
    }
    return best;
}

}  // namespace

const char* to_string(NeckKind kind)
{
    return kind == NeckKind::InteriorLocalMin ? "interior_local_min" : "junction_two_increasing";
}

NeckSet make_neck_set(std::vector<Neck> necks)
{
    std::sort(necks.begin(), necks.end(), [](const Neck& a, const Neck& b) {
        return std::tie(a.radius, a.location.x, a.location.y) < std::tie(b.radius, b.location.x, b.location.y);
    });
    NeckSet ns;
    ns.necks = std::move(necks);
    if (!ns.necks.empty()) {
        ns.r_n = ns.necks.front().radius;
        ns.r_m = ns.necks.back().radius;
    }
    return ns;
}

NeckSet find_necks(const MedialAxis& ma)
{
    std::vector<Neck> necks;
    Classifier c{ma, kFlatTol * bounding_box(ma.boundary).diagonal()};
    auto is_flat = [&](const MASegment& s) { return c.flat(s); };

    for (const MASegment& s : ma.segments) {
        if (s.kind == SegmentKind::EdgeEdge || is_flat(s)) continue;
        double lo = std::min(s.q0, s.q1);
        double hi = std::max(s.q0, s.q1);
        if (slope_at(s, lo) < -kSlopeTol && slope_at(s, hi) > kSlopeTol) {
            necks.push_back({s.point_at(0.0), s.radius_at(0.0), NeckKind::InteriorLocalMin});
        }
    }

    auto inc = ma.incidence();
    std::vector<bool> junction(ma.nodes.size(), false);
    for (std::size_t n = 0; n < ma.nodes.size(); ++n) {
        int up = 0;
        for (std::size_t si : inc[n]) up += c.leaving(ma.segments[si], n) == Slope::Up;
        if (up >= 2) {
            junction[n] = true;
            necks.push_back({ma.nodes[n].position, ma.nodes[n].radius, NeckKind::JunctionTwoIncreasing});
        }
    }

    std::vector<std::size_t> parent(ma.nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const MASegment& s : ma.segments) {
        if (is_flat(s)) parent[find(s.node0)] = find(s.node1);
    }
    std::vector<std::vector<std::size_t>> runs(ma.nodes.size());
    for (std::size_t si = 0; si < ma.segments.size(); ++si) {
        if (is_flat(ma.segments[si])) runs[find(ma.segments[si].node0)].push_back(si);
    }
    for (const auto& run : runs) {
        if (run.empty()) continue;
        std::vector<std::size_t> nodes;
        for (std::size_t si : run) {
            nodes.push_back(ma.segments[si].node0);
            nodes.push_back(ma.segments[si].node1);
        }
        std::sort(nodes.begin(), nodes.end());
        nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
        bool all_up = true;
        bool any_exit = false;
        bool touches_junction = false;
        for (std::size_t n : nodes) {
            touches_junction = touches_junction || junction[n];
            for (std::size_t si : inc[n]) {
                if (is_flat(ma.segments[si])) continue;
                any_exit = true;
                all_up = all_up && c.leaving(ma.segments[si], n) == Slope::Up;
            }
        }
        if (all_up && any_exit && !touches_junction) {
            const MASegment& first = ma.segments[run.front()];
            necks.push_back({run_midpoint(ma, run), 0.5 * (first.r0 + first.r1), NeckKind::InteriorLocalMin});
        }
    }
    return make_neck_set(std::move(necks));
}

bool classical_neck_exists(const Region& omega, double rho, const LinearizationParams& lin)
{
    if (!(rho > 0.0)) return false;
    return connected_components(erode(omega, rho, lin)).size() >= 2;
}

double min_classical_neck(const Region& omega, const LinearizationParams& lin)
{
    double inr = inscribed_radius_by_erosion(omega, lin);
    double prev = 0.0;
    for (int k = 1; k < kScanSteps; ++k) {
        double rho = inr * k / kScanSteps;
        if (classical_neck_exists(omega, rho, lin)) {
            double lo = prev;
            double hi = rho;
            while (hi - lo > 1e-4 * inr) {
                double mid = 0.5 * (lo + hi);
                if (classical_neck_exists(omega, mid, lin)) hi = mid;
                else lo = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev = rho;
    }
    return INFINITY;
}

CircleSummary2 second_largest_circle(const Region& omega, const MedialAxis& ma, const LinearizationParams& lin)
{
    InscribedCircle inb = max_inscribed(ma);
    std::size_t sides = disk_segments(inb.radius, lin);
    double outer = inb.radius / std::cos(std::numbers::pi / static_cast<double>(sides));
    Region disk = make_region(make_disk(inb.center, outer, lin));
    Region rest = subtract(omega, disk);

    CircleSummary2 c2{0.0, inb.center};
    double min_area = 1e-9 * area(omega);
    for (const Region& piece : connected_components(rest)) {
        if (area(piece) < min_area) continue;
        double radius = 0.0;
        Point where;
        try {
            if (!piece.polygons.front().holes.empty()) throw StructuralError("piece has holes");
            InscribedCircle c = max_inscribed(compute_medial_axis(piece));
            radius = c.radius;
            where = c.center;
        } catch (const StructuralError&) {
            radius = sampled_inscribed(piece, where);
        }
        if (radius > c2.inr2) c2 = {radius, where};
    }
    return c2;
}

bool thick_neck_condition(const NeckSet& ns, const CircleSummary2& c2)
{
    return std::all_of(ns.necks.begin(), ns.necks.end(), [&](const Neck& n) { return n.radius > 0.5 * c2.inr2; });
}

}  // namespace isoprofile

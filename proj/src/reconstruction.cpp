#include "isoprofile/reconstruction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace isoprofile {
namespace {

std::vector<std::size_t> dedup(std::vector<std::size_t> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void append(Region& dst, Region src)
{
    for (Polygon& p : src.polygons) dst.polygons.push_back(std::move(p));
}

Region sweep_polygon(const MedialAxis& ma, const MASegment& s, double qa, double qb)
{
    Ring ring{s.footpoint(qa, 0, ma.boundary), s.footpoint(qb, 0, ma.boundary), s.point_at(qb),
              s.footpoint(qb, 1, ma.boundary), s.footpoint(qa, 1, ma.boundary), s.point_at(qa)};
    Ring clean;
    for (const Point& p : ring) {
        if (clean.empty() || !(clean.back() == p)) clean.push_back(p);
    }
    while (clean.size() > 1 && clean.front() == clean.back()) clean.pop_back();
    if (clean.size() < 3 || std::abs(signed_area(clean)) <= 0.0) return {};
    return normalize(make_region(std::move(clean)));
}

struct Interval {
    double lo;
    double hi;
};

Region merged_pieces(const MedialAxis& ma, std::vector<std::vector<Interval>> by_segment, const std::vector<GraphNode>& lone,
                     const LinearizationParams& lin)
{
    Region parts;
    for (std::size_t si = 0; si < by_segment.size(); ++si) {
        auto& iv = by_segment[si];
        if (iv.empty()) continue;
        std::sort(iv.begin(), iv.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        const MASegment& s = ma.segments[si];
        double touch = 1e-12 * (std::abs(s.q1 - s.q0) + 1.0);
        std::vector<Interval> merged{iv.front()};
        for (std::size_t k = 1; k < iv.size(); ++k) {
            if (iv[k].lo <= merged.back().hi + touch) merged.back().hi = std::max(merged.back().hi, iv[k].hi);
            else merged.push_back(iv[k]);
        }
        for (const Interval& m : merged) {
            append(parts, make_region(make_disk(s.point_at(m.lo), s.radius_at(m.lo), lin)));
            if (m.hi != m.lo) {
                append(parts, make_region(make_disk(s.point_at(m.hi), s.radius_at(m.hi), lin)));
                append(parts, sweep_polygon(ma, s, m.lo, m.hi));
            }
        }
    }
    for (const GraphNode& n : lone) append(parts, make_region(make_disk(n.position, n.radius, lin)));
    return normalize(parts);
}

double stationary_in(const MASegment& s)
{
    double lo = std::min(s.q0, s.q1);
    double hi = std::max(s.q0, s.q1);
    if (auto st = s.stationary_q()) return std::clamp(*st, lo, hi);
    return s.radius_at(lo) <= s.radius_at(hi) ? lo : hi;
}

}  // namespace

Subgraph make_subgraph(const MedialAxisGraph& mag, std::vector<std::size_t> nodes, std::vector<std::size_t> edges)
{
    Subgraph g;
    g.edges = dedup(std::move(edges));
    for (std::size_t e : g.edges) {
        if (e >= mag.edges.size()) throw ParameterError("subgraph edge id out of range");
        nodes.push_back(mag.edges[e].a);
        nodes.push_back(mag.edges[e].b);
    }
    g.nodes = dedup(std::move(nodes));
    for (std::size_t n : g.nodes) {
        if (n >= mag.nodes.size()) throw ParameterError("subgraph node id out of range");
    }

    std::vector<std::size_t> parent(mag.nodes.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t e : g.edges) parent[find(mag.edges[e].a)] = find(mag.edges[e].b);
    g.connected = !g.nodes.empty() && std::all_of(g.nodes.begin(), g.nodes.end(), [&](std::size_t n) {
        return find(n) == find(g.nodes.front());
    });
    return g;
}

Subgraph full_subgraph(const MedialAxisGraph& mag)
{
    std::vector<std::size_t> nodes(mag.nodes.size());
    std::iota(nodes.begin(), nodes.end(), 0);
    std::vector<std::size_t> edges(mag.edges.size());
    std::iota(edges.begin(), edges.end(), 0);
    return make_subgraph(mag, std::move(nodes), std::move(edges));
}

Subgraph radius_subgraph(const MedialAxisGraph& mag, double rho)
{
    std::vector<std::size_t> nodes;
    for (std::size_t i = 0; i < mag.nodes.size(); ++i) {
        if (mag.nodes[i].radius >= rho) nodes.push_back(i);
    }
    std::vector<std::size_t> edges;
    for (std::size_t i = 0; i < mag.edges.size(); ++i) {
        if (mag.nodes[mag.edges[i].a].radius >= rho && mag.nodes[mag.edges[i].b].radius >= rho) edges.push_back(i);
    }
    return make_subgraph(mag, std::move(nodes), std::move(edges));
}

Region reconstruct_piece(const MedialAxis& ma, std::size_t si, double qa, double qb, const LinearizationParams& lin)
{
    if (si >= ma.segments.size()) throw StructuralError("edge has no parent medial-axis segment");
    const MASegment& s = ma.segments[si];
    Region parts;
    append(parts, make_region(make_disk(s.point_at(qa), s.radius_at(qa), lin)));
    if (qb != qa) {
        append(parts, make_region(make_disk(s.point_at(qb), s.radius_at(qb), lin)));
        append(parts, sweep_polygon(ma, s, qa, qb));
    }
    return normalize(parts);
}

Region reconstruct_edge(const Region& omega, const MedialAxisGraph& mag, std::size_t edge, const LinearizationParams& lin)
{
    (void)omega;
    if (edge >= mag.edges.size()) throw ParameterError("edge id out of range");
    const GraphEdge& e = mag.edges[edge];
    return reconstruct_piece(*mag.axis, e.segment, e.q_a, e.q_b, lin);
}

Region limited_reconstruction(const Region& omega, const MedialAxisGraph& mag, const Subgraph& g,
                              const LinearizationParams& lin)
{
    (void)omega;
    if (g.empty()) return {};
    const MedialAxis& ma = *mag.axis;
    std::vector<std::vector<Interval>> by_segment(ma.segments.size());
    std::vector<bool> covered(mag.nodes.size(), false);
    for (std::size_t ei : g.edges) {
        const GraphEdge& e = mag.edges[ei];
        by_segment[e.segment].push_back({std::min(e.q_a, e.q_b), std::max(e.q_a, e.q_b)});
        covered[e.a] = covered[e.b] = true;
    }
    std::vector<GraphNode> lone;
    for (std::size_t n : g.nodes) {
        if (!covered[n]) lone.push_back(mag.nodes[n]);
    }
    return merged_pieces(ma, std::move(by_segment), lone, lin);
}

Region radius_reconstruction(const MedialAxisGraph& mag, double rho, const LinearizationParams& lin)
{
    const MedialAxis& ma = *mag.axis;
    std::vector<std::vector<Interval>> by_segment(ma.segments.size());
    std::vector<bool> covered(mag.nodes.size(), false);
    for (const GraphEdge& e : mag.edges) {
        double ra = mag.nodes[e.a].radius;
        double rb = mag.nodes[e.b].radius;
        if (ra < rho && rb < rho) continue;
        const MASegment& s = ma.segments[e.segment];
        double qa = e.q_a;
        double qb = e.q_b;
        if (ra < rho || rb < rho) {
            double qmin = stationary_in(s);
            double keep = ra >= rho ? qa : qb;
            double cut = std::clamp(s.solve_radius(rho, keep - qmin), std::min(qa, qb), std::max(qa, qb));
            if (ra >= rho) qb = cut;
            else qa = cut;
        }
        covered[e.a] = covered[e.a] || ra >= rho;
        covered[e.b] = covered[e.b] || rb >= rho;
        by_segment[e.segment].push_back({std::min(qa, qb), std::max(qa, qb)});
    }
    std::vector<GraphNode> lone;
    for (std::size_t i = 0; i < mag.nodes.size(); ++i) {
        if (!covered[i] && mag.nodes[i].radius >= rho) lone.push_back(mag.nodes[i]);
    }
    return merged_pieces(ma, std::move(by_segment), lone, lin);
}

double verify_prop_marecon(const Region& omega, const MedialAxisGraph& mag, double rho, const LinearizationParams& lin)
{
    if (rho < mag.r_limit * (1.0 - 1e-12) || rho > mag.inr * (1.0 + 1e-12)) {
        throw ParameterError("rho must lie between the graph's radius limit and inr");
    }
    Region recon = radius_reconstruction(mag, rho, lin);
    Region opened = open(omega, rho, lin);
    return symmetric_difference_area(recon, opened) / area(omega);
}

}  // namespace isoprofile

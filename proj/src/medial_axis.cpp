#include "isoprofile/medial_axis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <map>
#include <ostream>
#include <random>
#include <unordered_map>

#include <boost/polygon/polygon.hpp>
#include <boost/polygon/voronoi.hpp>

namespace isoprofile {
namespace {

namespace bp = boost::polygon;
using VD = bp::voronoi_diagram<double>;
using ISegment = bp::segment_data<std::int32_t>;
using IPoint = bp::point_data<std::int32_t>;

constexpr double kTieRadius = 1e-10;
constexpr double kTieSeparation = 1e-6;
constexpr double kPerturbation = 1e-7;
constexpr int kPerturbAttempts = 6;
constexpr double kCoincident = 1e-9;

Point perp(Point a) { return {-a.y, a.x}; }

struct Snap {
    Point center;
    double scale = 1.0;

    std::int32_t to_int(double v, double c) const
    {
        return static_cast<std::int32_t>(std::llround((v - c) * scale));
    }
    IPoint to_ipoint(Point p) const { return {to_int(p.x, center.x), to_int(p.y, center.y)}; }
    Point to_point(double x, double y) const
    {
        return {center.x + x / scale, center.y + y / scale};
    }
};

Snap make_snap(const Ring& ring)
{
    BoundingBox box = bounding_box(ring);
    double diag = box.diagonal();
    Snap s;
    s.center = box.center();
    s.scale = std::exp2(std::floor(std::log2(1e9 / diag)));
    return s;
}

Ring drop_collinear(const Ring& in)
{
    Ring ring = in;
    bool changed = true;
    while (changed && ring.size() > 3) {
        changed = false;
        for (std::size_t i = 0; i < ring.size(); ++i) {
            Point a = ring[(i + ring.size() - 1) % ring.size()];
            Point b = ring[i];
            Point c = ring[(i + 1) % ring.size()];
            Point u = b - a;
            Point v = c - b;
            double scale = norm(u) * norm(v);
            if (std::abs(cross(u, v)) <= 1e-14 * scale && dot(u, v) > 0.0) {
                ring.erase(ring.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
        }
    }
    return ring;
}

std::uint64_t hash_ring(const Ring& ring)
{
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](double v) {
        std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    };
    for (const Point& p : ring) {
        mix(p.x);
        mix(p.y);
    }
    return h;
}

Ring perturb(const Ring& ring, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    double mag = kPerturbation * bounding_box(ring).diagonal();
    Ring out = ring;
    for (Point& p : out) {
        p.x += mag * unit(rng);
        p.y += mag * unit(rng);
    }
    return out;
}

Governor governor_of(const VD::cell_type& cell, std::size_t n)
{
    std::size_t i = cell.source_index();
    if (cell.contains_segment()) return {GovernorKind::BoundaryEdge, i};
    if (cell.source_category() == bp::SOURCE_CATEGORY_SEGMENT_START_POINT) return {GovernorKind::BoundaryVertex, i};
    return {GovernorKind::BoundaryVertex, (i + 1) % n};
}

double line_distance(Point p, Point a, Point b)
{
    Point d = b - a;
    return std::abs(cross(d, p - a)) / norm(d);
}

MASegment make_segment(Governor g1, Governor g2, Point p0, Point p1, const Ring& ring)
{
    std::size_t n = ring.size();
    MASegment s;
    if (g1.kind == GovernorKind::BoundaryEdge && g2.kind == GovernorKind::BoundaryEdge) {
        s.kind = SegmentKind::EdgeEdge;
        s.governors = {g1, g2};
        double len = distance(p0, p1);
        s.origin = p0;
        s.axis = len > 0.0 ? (1.0 / len) * (p1 - p0) : Point{1.0, 0.0};
        s.normal = perp(s.axis);
        s.q0 = 0.0;
        s.q1 = len;
        auto radius = [&](Point p) {
            double a = line_distance(p, ring[g1.index], ring[(g1.index + 1) % n]);
            double b = line_distance(p, ring[g2.index], ring[(g2.index + 1) % n]);
            return 0.5 * (a + b);
        };
        s.r0 = radius(p0);
        s.r1 = radius(p1);
        return s;
    }
    if (g1.kind == GovernorKind::BoundaryVertex && g2.kind == GovernorKind::BoundaryVertex) {
        s.kind = SegmentKind::VertVert;
        s.governors = {g1, g2};
        Point v1 = ring[g1.index];
        Point v2 = ring[g2.index];
        double gap = distance(v1, v2);
        s.origin = 0.5 * (v1 + v2);
        s.axis = (1.0 / gap) * perp(v2 - v1);
        s.normal = perp(s.axis);
        s.shape = 0.5 * gap;
        s.q0 = dot(p0 - s.origin, s.axis);
        s.q1 = dot(p1 - s.origin, s.axis);
        s.r0 = s.radius_at(s.q0);
        s.r1 = s.radius_at(s.q1);
        return s;
    }
    Governor edge = g1.kind == GovernorKind::BoundaryEdge ? g1 : g2;
    Governor vert = g1.kind == GovernorKind::BoundaryEdge ? g2 : g1;
    s.kind = SegmentKind::EdgeVert;
    s.governors = {edge, vert};
    Point a = ring[edge.index];
    Point b = ring[(edge.index + 1) % n];
    Point v = ring[vert.index];
    s.axis = (1.0 / distance(a, b)) * (b - a);
    s.normal = perp(s.axis);
    double h = dot(v - a, s.normal);
    if (h < 0.0) {
        s.normal = -1.0 * s.normal;
        h = -h;
    }
    s.shape = std::max(h, 1e-300);
    s.origin = a + dot(v - a, s.axis) * s.axis;
    s.q0 = dot(p0 - s.origin, s.axis);
    s.q1 = dot(p1 - s.origin, s.axis);
    s.r0 = s.radius_at(s.q0);
    s.r1 = s.radius_at(s.q1);
    return s;
}

void merge_coincident(MedialAxis& ma, double tol)
{
    std::vector<std::size_t> parent(ma.nodes.size());
    for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::vector<MASegment> kept;
    for (const MASegment& s : ma.segments) {
        if (s.length() <= tol) {
            std::size_t a = find(s.node0);
            std::size_t b = find(s.node1);
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        } else {
            kept.push_back(s);
        }
    }
    if (kept.size() == ma.segments.size()) return;
    std::vector<std::size_t> remap(ma.nodes.size(), npos);
    std::vector<MANode> nodes;
    for (std::size_t i = 0; i < ma.nodes.size(); ++i) {
        if (find(i) != i) continue;
        remap[i] = nodes.size();
        nodes.push_back(ma.nodes[i]);
    }
    for (MASegment& s : kept) {
        s.node0 = remap[find(s.node0)];
        s.node1 = remap[find(s.node1)];
    }
    ma.nodes = std::move(nodes);
    ma.segments = std::move(kept);
}

MedialAxis build(const Ring& input)
{
    Snap snap = make_snap(input);
    std::vector<IPoint> ipts;
    ipts.reserve(input.size());
    for (const Point& p : input) ipts.push_back(snap.to_ipoint(p));
    for (std::size_t i = 0; i < ipts.size(); ++i) {
        if (ipts[i] == ipts[(i + 1) % ipts.size()]) throw StructuralError("degenerate edge after snapping");
    }

    MedialAxis ma;
    ma.boundary.reserve(ipts.size());
    for (const IPoint& p : ipts) ma.boundary.push_back(snap.to_point(p.x(), p.y()));
    const Ring& ring = ma.boundary;
    std::size_t n = ring.size();

    std::vector<ISegment> segs;
    segs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) segs.emplace_back(ipts[i], ipts[(i + 1) % n]);

    VD vd;
    bp::construct_voronoi(segs.begin(), segs.end(), &vd);

    std::unordered_map<const VD::vertex_type*, std::size_t> node_of;
    auto node_id = [&](const VD::vertex_type* v) {
        auto [it, inserted] = node_of.try_emplace(v, ma.nodes.size());
        if (inserted) ma.nodes.push_back({snap.to_point(v->x(), v->y()), -1.0});
        return it->second;
    };

    for (const auto& e : vd.edges()) {
        if (e.is_secondary() || e.is_infinite()) continue;
        if (&e > e.twin()) continue;
        Governor g1 = governor_of(*e.cell(), n);
        Governor g2 = governor_of(*e.twin()->cell(), n);
        Point p0 = snap.to_point(e.vertex0()->x(), e.vertex0()->y());
        Point p1 = snap.to_point(e.vertex1()->x(), e.vertex1()->y());
        MASegment s = make_segment(g1, g2, p0, p1, ring);
        Point mid = s.point_at(0.5 * (s.q0 + s.q1));
        if (!contains(ring, mid)) continue;
        s.node0 = node_id(e.vertex0());
        s.node1 = node_id(e.vertex1());
        if (ma.nodes[s.node0].radius < 0.0) ma.nodes[s.node0].radius = s.r0;
        if (ma.nodes[s.node1].radius < 0.0) ma.nodes[s.node1].radius = s.r1;
        ma.segments.push_back(s);
    }
    if (ma.segments.empty()) throw StructuralError("medial axis is empty");
    merge_coincident(ma, kCoincident * bounding_box(ring).diagonal());
    return ma;
}

bool has_tie(const MedialAxis& ma)
{
    double diag = bounding_box(ma.boundary).diagonal();
    InscribedCircle best = max_inscribed(ma);
    for (const MANode& node : ma.nodes) {
        if (node.radius >= best.radius - kTieRadius * diag &&
            distance(node.position, best.center) > kTieSeparation * diag)
            return true;
    }
    return false;
}

double parabola_length(double u, double h)
{
    double k = u / h;
    return 0.5 * (u * std::sqrt(1.0 + k * k) + h * std::asinh(k));
}

}  // namespace

const char* to_string(SegmentKind kind)
{
    switch (kind) {
    case SegmentKind::EdgeEdge: return "edge_edge";
    case SegmentKind::VertVert: return "vert_vert";
    case SegmentKind::EdgeVert: return "edge_vert";
    }
    return "unknown";
}

Point MASegment::point_at(double q) const
{
    Point p = origin + q * axis;
    if (kind == SegmentKind::EdgeVert) p = p + radius_at(q) * normal;
    return p;
}

double MASegment::radius_at(double q) const
{
    switch (kind) {
    case SegmentKind::EdgeEdge:
        if (q1 == q0) return r0;
        return r0 + (r1 - r0) * (q - q0) / (q1 - q0);
    case SegmentKind::VertVert: return std::hypot(q, shape);
    case SegmentKind::EdgeVert: return (q * q + shape * shape) / (2.0 * shape);
    }
    return 0.0;
}

std::optional<double> MASegment::stationary_q() const
{
    if (kind == SegmentKind::EdgeEdge) return std::nullopt;
    return 0.0;
}

double MASegment::solve_radius(double rho, double side) const
{
    switch (kind) {
    case SegmentKind::EdgeEdge:
        if (r1 == r0) return side;
        return q0 + (rho - r0) / (r1 - r0) * (q1 - q0);
    case SegmentKind::VertVert: {
        double m = std::sqrt(std::max(rho * rho - shape * shape, 0.0));
        return side < 0.0 ? -m : m;
    }
    case SegmentKind::EdgeVert: {
        double m = std::sqrt(std::max(2.0 * shape * rho - shape * shape, 0.0));
        return side < 0.0 ? -m : m;
    }
    }
    return side;
}

double MASegment::arc_length(double qa, double qb) const
{
    if (kind == SegmentKind::EdgeVert) return std::abs(parabola_length(qb, shape) - parabola_length(qa, shape));
    return std::abs(qb - qa);
}

Point MASegment::footpoint(double q, std::size_t g, const Ring& boundary) const
{
    const Governor& gov = governors.at(g);
    if (gov.kind == GovernorKind::BoundaryVertex) return boundary.at(gov.index);
    Point a = boundary.at(gov.index);
    Point b = boundary.at((gov.index + 1) % boundary.size());
    Point d = b - a;
    double t = std::clamp(dot(point_at(q) - a, d) / dot(d, d), 0.0, 1.0);
    return a + t * d;
}

std::vector<std::vector<std::size_t>> MedialAxis::incidence() const
{
    std::vector<std::vector<std::size_t>> inc(nodes.size());
    for (std::size_t i = 0; i < segments.size(); ++i) {
        inc[segments[i].node0].push_back(i);
        if (segments[i].node1 != segments[i].node0) inc[segments[i].node1].push_back(i);
    }
    return inc;
}

MedialAxis compute_medial_axis(const Region& poly)
{
    validate(poly);
    if (poly.polygons.size() != 1) throw StructuralError("expected a single polygon");
    if (!poly.polygons.front().holes.empty()) throw StructuralError("holes unsupported");
    Ring ring = poly.polygons.front().outer;
    if (signed_area(ring) < 0.0) std::reverse(ring.begin(), ring.end());
    if (!is_simple(ring)) throw StructuralError("not simple");
    ring = drop_collinear(ring);

    MedialAxis ma = build(ring);
    std::uint64_t seed = hash_ring(ring);
    for (int attempt = 0; attempt < kPerturbAttempts && has_tie(ma); ++attempt) {
        ma = build(perturb(ring, seed + static_cast<std::uint64_t>(attempt)));
        ma.perturbed = true;
    }
    return ma;
}

InscribedCircle max_inscribed(const MedialAxis& ma)
{
    InscribedCircle best{{}, -1.0};
    for (const MANode& node : ma.nodes) {
        if (node.radius > best.radius) best = {node.position, node.radius};
    }
    return best;
}

std::vector<std::vector<std::size_t>> MedialAxisGraph::adjacency() const
{
    std::vector<std::vector<std::size_t>> adj(nodes.size());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        adj[edges[i].a].push_back(i);
        adj[edges[i].b].push_back(i);
    }
    return adj;
}

MedialAxisGraph discretize(std::shared_ptr<const MedialAxis> ma, const DiscretizationParams& params)
{
    if (!ma) throw ParameterError("discretize: null medial axis");
    if (!(params.d_c > 0.0)) throw ParameterError("d_c must be positive");
    if (!(params.s_max > 0.0)) throw ParameterError("s_max must be positive");
    if (!(params.r_l >= 0.0)) throw ParameterError("r_l must be non-negative");

    InscribedCircle inb = max_inscribed(*ma);
    if (params.r_l > inb.radius) throw ParameterError("r_l exceeds the inscribed radius");
    double r_eff = std::max(params.r_l, kRadiusFloor * inb.radius);

    MedialAxisGraph g;
    g.axis = ma;
    g.inr = inb.radius;
    g.inx = inb.center;
    g.r_limit = r_eff;

    std::vector<std::size_t> from_ma(ma->nodes.size(), npos);
    for (std::size_t i = 0; i < ma->nodes.size(); ++i) {
        const MANode& node = ma->nodes[i];
        if (node.radius < r_eff) continue;
        from_ma[i] = g.nodes.size();
        GraphNode gn;
        gn.position = node.position;
        gn.radius = node.radius;
        gn.ma_node = i;
        g.nodes.push_back(gn);
    }

    auto interior_node = [&](std::size_t si, double q) {
        const MASegment& s = ma->segments[si];
        GraphNode gn;
        gn.position = s.point_at(q);
        gn.radius = s.radius_at(q);
        gn.segment = si;
        gn.q = q;
        g.nodes.push_back(gn);
        return g.nodes.size() - 1;
    };

    for (std::size_t si = 0; si < ma->segments.size(); ++si) {
        const MASegment& s = ma->segments[si];
        double lo = std::min(s.q0, s.q1);
        double hi = std::max(s.q0, s.q1);
        std::size_t node_lo = s.q0 <= s.q1 ? s.node0 : s.node1;
        std::size_t node_hi = s.q0 <= s.q1 ? s.node1 : s.node0;

        double qmin;
        if (auto st = s.stationary_q()) {
            qmin = std::clamp(*st, lo, hi);
        } else {
            qmin = s.radius_at(lo) <= s.radius_at(hi) ? lo : hi;
        }

        std::vector<std::pair<double, double>> pieces;
        if (s.radius_at(qmin) >= r_eff) {
            if (lo < qmin) pieces.emplace_back(lo, qmin);
            if (qmin < hi) pieces.emplace_back(qmin, hi);
        } else {
            if (lo < qmin && s.radius_at(lo) >= r_eff) pieces.emplace_back(lo, s.solve_radius(r_eff, lo - qmin));
            if (qmin < hi && s.radius_at(hi) >= r_eff) pieces.emplace_back(s.solve_radius(r_eff, hi - qmin), hi);
        }

        std::size_t qmin_node = npos;
        auto node_at = [&](double q) -> std::size_t {
            if (q == lo && node_lo != npos && from_ma[node_lo] != npos) return from_ma[node_lo];
            if (q == hi && node_hi != npos && from_ma[node_hi] != npos) return from_ma[node_hi];
            if (q == qmin) {
                if (qmin_node == npos) qmin_node = interior_node(si, q);
                return qmin_node;
            }
            return interior_node(si, q);
        };

        for (auto [a, b] : pieces) {
            if (!(a < b)) continue;
            double ra = s.radius_at(a);
            double rb = s.radius_at(b);
            double gap = std::abs(1.0 / ra - 1.0 / rb);
            auto k1 = static_cast<std::size_t>(std::max(1.0, std::ceil(gap / params.d_c - 1e-9)));
            double side = (a >= qmin) ? b - qmin : a - qmin;

            std::vector<double> breaks{a};
            for (std::size_t j = 1; j < k1; ++j) {
                double w = 1.0 / ra + (1.0 / rb - 1.0 / ra) * static_cast<double>(j) / static_cast<double>(k1);
                double q = s.solve_radius(1.0 / w, side);
                breaks.push_back(std::clamp(q, a, b));
            }
            breaks.push_back(b);

            std::vector<double> fine{a};
            for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
                double qa = breaks[j];
                double qb = breaks[j + 1];
                double density = 1.0;
                if (s.kind == SegmentKind::EdgeVert) {
                    double m = std::max(std::abs(qa), std::abs(qb)) / s.shape;
                    density = std::sqrt(1.0 + m * m);
                }
                auto k2 = static_cast<std::size_t>(
                    std::max(1.0, std::ceil(density * std::abs(qb - qa) / params.s_max - 1e-9)));
                for (std::size_t k = 1; k < k2; ++k) {
                    fine.push_back(qa + (qb - qa) * static_cast<double>(k) / static_cast<double>(k2));
                }
                fine.push_back(qb);
            }

            std::size_t prev = node_at(fine.front());
            for (std::size_t j = 1; j < fine.size(); ++j) {
                if (!(fine[j] > fine[j - 1])) continue;
                std::size_t cur = node_at(fine[j]);
                g.edges.push_back({prev, cur, si, fine[j - 1], fine[j]});
                prev = cur;
            }
        }
    }

    g.inx_node = 0;
    for (std::size_t i = 1; i < g.nodes.size(); ++i) {
        if (g.nodes[i].radius > g.nodes[g.inx_node].radius) g.inx_node = i;
    }
    if (g.nodes.empty()) throw ParameterError("discretized graph is empty");
    g.inx = g.nodes[g.inx_node].position;
    return g;
}

void write_medial_axis_csv(const MedialAxis& ma, std::ostream& out)
{
    auto gov = [](const Governor& g) {
        return std::string(g.kind == GovernorKind::BoundaryEdge ? "e" : "v") + std::to_string(g.index);
    };
    auto old = out.precision(17);
    out << "segment,kind,x0,y0,r0,x1,y1,r1,length,governor0,governor1\n";
    for (std::size_t i = 0; i < ma.segments.size(); ++i) {
        const MASegment& s = ma.segments[i];
        Point a = s.point_at(s.q0);
        Point b = s.point_at(s.q1);
        out << i << ',' << to_string(s.kind) << ',' << a.x << ',' << a.y << ',' << s.radius_at(s.q0) << ','
            << b.x << ',' << b.y << ',' << s.radius_at(s.q1) << ',' << s.length() << ',' << gov(s.governors[0])
            << ',' << gov(s.governors[1]) << '\n';
    }
    out.precision(old);
}

}  // namespace isoprofile

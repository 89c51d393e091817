#include "isoprofile/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "clipper2/clipper.h"

namespace isoprofile {

namespace {

namespace cl = Clipper2Lib;

// Snap grid and sliver threshold shared by one boolean/offset evaluation.
// The grid spacing is ~1e-9 of the operands' extent (rounded to a power of two
// so scaling is exact in both directions).
struct Grid {
    double scale = 1.0;
    double inv = 1.0;
    double min_area = 0.0;

    explicit Grid(double extent)
    {
        if (!(extent > 0.0) || !std::isfinite(extent)) extent = 1.0;
        const double quantum = 1e-9 * extent;
        scale = std::exp2(std::floor(std::log2(1.0 / quantum)));
        inv = 1.0 / scale;
        min_area = 1e-12 * extent * extent;
    }

    cl::Point64 to_int(Point p) const
    {
        return {static_cast<int64_t>(std::llround(p.x * scale)),
                static_cast<int64_t>(std::llround(p.y * scale))};
    }
    Point to_real(const cl::Point64& p) const
    {
        return {static_cast<double>(p.x) * inv, static_cast<double>(p.y) * inv};
    }
};

double extent_of(const BoundingBox& box)
{
    if (!box.valid()) return 1.0;
    const double m = std::max({std::abs(box.min.x), std::abs(box.min.y), std::abs(box.max.x),
                               std::abs(box.max.y)});
    return std::max(box.diagonal(), m);
}

cl::Path64 to_path(const Ring& ring, const Grid& grid)
{
    cl::Path64 path;
    path.reserve(ring.size());
    for (const Point& p : ring) {
        cl::Point64 q = grid.to_int(p);
        if (path.empty() || path.back() != q) path.push_back(q);
    }
    while (path.size() > 1 && path.front() == path.back()) path.pop_back();
    return path;
}

void append_paths(const Region& r, const Grid& grid, cl::Paths64& out)
{
    for (const Polygon& poly : r.polygons) {
        cl::Path64 p = to_path(poly.outer, grid);
        if (p.size() >= 3) out.push_back(std::move(p));
        for (const Ring& hole : poly.holes) {
            cl::Path64 h = to_path(hole, grid);
            if (h.size() >= 3) out.push_back(std::move(h));
        }
    }
}

Ring to_ring(const cl::Path64& path, const Grid& grid)
{
    Ring ring;
    ring.reserve(path.size());
    for (const auto& p : path) ring.push_back(grid.to_real(p));
    return ring;
}

void orient(Ring& ring, bool ccw)
{
    if ((signed_area(ring) > 0.0) != ccw) std::reverse(ring.begin(), ring.end());
}

// Outer nodes of a PolyTree64 become polygons; their children are holes whose
// children are again outers (islands).
void collect_outers(const cl::PolyPath64& node, const Grid& grid, Region& out)
{
    for (const auto& outer_node : node) {
        Ring outer = to_ring(outer_node->Polygon(), grid);
        if (outer.size() < 3 || std::abs(signed_area(outer)) < grid.min_area) continue;
        orient(outer, true);
        Polygon poly{std::move(outer), {}};
        for (const auto& hole_node : *outer_node) {
            Ring hole = to_ring(hole_node->Polygon(), grid);
            if (hole.size() >= 3 && std::abs(signed_area(hole)) >= grid.min_area) {
                orient(hole, false);
                poly.holes.push_back(std::move(hole));
            }
            collect_outers(*hole_node, grid, out);
        }
        out.polygons.push_back(std::move(poly));
    }
}

Region from_tree(const cl::PolyTree64& tree, const Grid& grid)
{
    Region out;
    collect_outers(tree, grid, out);
    return out;
}

Region run_clipper(cl::ClipType type, const cl::Paths64& subject, const cl::Paths64& clip,
                   const Grid& grid)
{
    cl::Clipper64 clipper;
    clipper.AddSubject(subject);
    if (!clip.empty()) clipper.AddClip(clip);
    cl::PolyTree64 tree;
    clipper.Execute(type, cl::FillRule::NonZero, tree);
    return from_tree(tree, grid);
}

// Arc tolerance (sagitta) that makes Clipper's round joins use chords of at
// most d_x on a circle of radius delta; both in grid units.
double arc_tolerance(double delta, double d_x)
{
    const double half = 0.5 * d_x / delta;
    if (half >= 1.0) return delta;
    return delta * (1.0 - std::sqrt(1.0 - half * half));
}

Region offset(const Region& r, double delta, const LinearizationParams& lin)
{
    BoundingBox box = bounding_box(r);
    const Grid grid(extent_of(box) + std::abs(delta));
    cl::Paths64 paths;
    append_paths(r, grid, paths);
    if (paths.empty()) return {};
    const double scaled = delta * grid.scale;
    cl::ClipperOffset co(2.0, arc_tolerance(std::abs(scaled), lin.d_x * grid.scale));
    co.AddPaths(paths, cl::JoinType::Round, cl::EndType::Polygon);
    cl::PolyTree64 tree;
    co.Execute(scaled, tree);
    return from_tree(tree, grid);
}

void check_radius(double radius, const char* what)
{
    if (!(radius >= 0.0) || !std::isfinite(radius))
        throw ParameterError(std::string(what) + ": radius must be finite and >= 0");
}

void check_lin(const LinearizationParams& lin)
{
    if (!(lin.d_x > 0.0) || !std::isfinite(lin.d_x))
        throw ParameterError("linearization: d_x must be > 0");
}

double segment_distance(Point p, Point a, Point b)
{
    const Point ab = b - a;
    const double len2 = dot(ab, ab);
    double t = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return distance(p, a + t * ab);
}

int orientation(Point a, Point b, Point c)
{
    const double v = cross(b - a, c - a);
    const double tol = 1e-14 * (norm(b - a) + norm(c - a)) * (norm(b - a) + norm(c - a));
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
}

bool on_segment(Point a, Point b, Point p)
{
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
           p.y <= std::max(a.y, b.y);
}

bool segments_intersect(Point a, Point b, Point c, Point d)
{
    const int o1 = orientation(a, b, c);
    const int o2 = orientation(a, b, d);
    const int o3 = orientation(c, d, a);
    const int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(a, b, c)) return true;
    if (o2 == 0 && on_segment(a, b, d)) return true;
    if (o3 == 0 && on_segment(c, d, a)) return true;
    if (o4 == 0 && on_segment(c, d, b)) return true;
    return false;
}

}  // namespace

void BoundingBox::extend(Point p)
{
    min.x = std::min(min.x, p.x);
    min.y = std::min(min.y, p.y);
    max.x = std::max(max.x, p.x);
    max.y = std::max(max.y, p.y);
}

void BoundingBox::extend(const BoundingBox& other)
{
    if (!other.valid()) return;
    extend(other.min);
    extend(other.max);
}

double signed_area(const Ring& ring)
{
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    // Shoelace relative to the first vertex to limit cancellation.
    const Point o = ring[0];
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) acc += cross(ring[i] - o, ring[i + 1] - o);
    return 0.5 * acc;
}

double ring_length(const Ring& ring)
{
    const std::size_t n = ring.size();
    if (n < 2) return 0.0;
    double len = 0.0;
    for (std::size_t i = 0; i < n; ++i) len += distance(ring[i], ring[(i + 1) % n]);
    return len;
}

double area(const Region& r)
{
    double a = 0.0;
    for (const Polygon& poly : r.polygons) {
        a += std::abs(signed_area(poly.outer));
        for (const Ring& h : poly.holes) a -= std::abs(signed_area(h));
    }
    return std::max(a, 0.0);
}

double perimeter(const Region& r)
{
    double p = 0.0;
    for (const Polygon& poly : r.polygons) {
        p += ring_length(poly.outer);
        for (const Ring& h : poly.holes) p += ring_length(h);
    }
    return p;
}

std::size_t vertex_count(const Region& r)
{
    std::size_t n = 0;
    for (const Polygon& poly : r.polygons) {
        n += poly.outer.size();
        for (const Ring& h : poly.holes) n += h.size();
    }
    return n;
}

BoundingBox bounding_box(const Ring& ring)
{
    BoundingBox box;
    for (const Point& p : ring) box.extend(p);
    return box;
}

BoundingBox bounding_box(const Region& r)
{
    BoundingBox box;
    for (const Polygon& poly : r.polygons) box.extend(bounding_box(poly.outer));
    return box;
}

void validate(const Region& r)
{
    auto check_ring = [](const Ring& ring, const char* what) {
        if (ring.size() < 3) throw StructuralError(std::string(what) + " ring has fewer than 3 vertices");
        for (const Point& p : ring)
            if (!std::isfinite(p.x) || !std::isfinite(p.y))
                throw StructuralError(std::string(what) + " ring has a non-finite coordinate");
        for (std::size_t i = 0; i < ring.size(); ++i)
            if (ring[i] == ring[(i + 1) % ring.size()])
                throw StructuralError(std::string(what) + " ring repeats a vertex");
        if (signed_area(ring) == 0.0) throw StructuralError(std::string(what) + " ring has zero area");
    };
    for (const Polygon& poly : r.polygons) {
        check_ring(poly.outer, "outer");
        for (const Ring& h : poly.holes) check_ring(h, "hole");
    }
}

bool is_simple(const Ring& ring)
{
    const std::size_t n = ring.size();
    if (n < 3) return false;
    for (std::size_t i = 0; i < n; ++i) {
        const Point a = ring[i], b = ring[(i + 1) % n];
        for (std::size_t j = i + 1; j < n; ++j) {
            if (j == i + 1 || (i == 0 && j == n - 1)) {
                // adjacent edges only share their common vertex unless they fold back
                const Point c = ring[j], d = ring[(j + 1) % n];
                const Point shared = (j == i + 1) ? b : a;
                const Point other_ab = (j == i + 1) ? a : b;
                const Point other_cd = (j == i + 1) ? d : c;
                if (orientation(shared, other_ab, other_cd) == 0 &&
                    dot(other_ab - shared, other_cd - shared) > 0.0)
                    return false;
                continue;
            }
            if (segments_intersect(a, b, ring[j], ring[(j + 1) % n])) return false;
        }
    }
    return true;
}

Region make_region(Ring outer)
{
    orient(outer, true);
    Region r;
    r.polygons.push_back({std::move(outer), {}});
    return r;
}

Region make_region(Ring outer, std::vector<Ring> holes)
{
    orient(outer, true);
    for (Ring& h : holes) orient(h, false);
    Region r;
    r.polygons.push_back({std::move(outer), std::move(holes)});
    return r;
}

std::size_t disk_segments(double radius, const LinearizationParams& lin)
{
    check_lin(lin);
    if (radius <= 0.0) return 0;
    const double half = std::min(1.0, 0.5 * lin.d_x / radius);
    const double step = 2.0 * std::asin(half);
    const auto n = static_cast<std::size_t>(std::ceil(2.0 * std::numbers::pi / step - 1e-9));
    return std::max<std::size_t>(n, 12);
}

Ring make_disk(Point center, double radius, const LinearizationParams& lin)
{
    check_radius(radius, "make_disk");
    const std::size_t n = disk_segments(radius, lin);
    Ring ring;
    ring.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        ring.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
    }
    return ring;
}

Region boolean(BoolOp op, const Region& a, const Region& b)
{
    BoundingBox box = bounding_box(a);
    box.extend(bounding_box(b));
    const Grid grid(extent_of(box));
    cl::Paths64 pa, pb;
    append_paths(a, grid, pa);
    append_paths(b, grid, pb);
    switch (op) {
    case BoolOp::Union: {
        pa.insert(pa.end(), pb.begin(), pb.end());
        return run_clipper(cl::ClipType::Union, pa, {}, grid);
    }
    case BoolOp::Intersection:
        if (pa.empty() || pb.empty()) return {};
        return run_clipper(cl::ClipType::Intersection, pa, pb, grid);
    case BoolOp::Difference:
        if (pa.empty()) return {};
        return run_clipper(cl::ClipType::Difference, pa, pb, grid);
    }
    return {};
}

Region unite_all(std::span<const Region> parts)
{
    BoundingBox box;
    for (const Region& r : parts) box.extend(bounding_box(r));
    const Grid grid(extent_of(box));
    cl::Paths64 paths;
    for (const Region& r : parts) append_paths(r, grid, paths);
    if (paths.empty()) return {};
    return run_clipper(cl::ClipType::Union, paths, {}, grid);
}

Region normalize(const Region& r)
{
    const Grid grid(extent_of(bounding_box(r)));
    cl::Paths64 paths;
    append_paths(r, grid, paths);
    if (paths.empty()) return {};
    return run_clipper(cl::ClipType::Union, paths, {}, grid);
}

Region dilate(const Region& r, double radius, const LinearizationParams& lin)
{
    check_radius(radius, "dilate");
    check_lin(lin);
    if (radius == 0.0) return r;
    return offset(r, radius, lin);
}

Region erode(const Region& r, double radius, const LinearizationParams& lin)
{
    check_radius(radius, "erode");
    check_lin(lin);
    if (radius == 0.0) return r;
    return offset(r, -radius, lin);
}

Region open(const Region& r, double radius, const LinearizationParams& lin)
{
    check_radius(radius, "open");
    if (radius == 0.0) return r;
    return dilate(erode(r, radius, lin), radius, lin);
}

Region close(const Region& r, double radius, const LinearizationParams& lin)
{
    check_radius(radius, "close");
    if (radius == 0.0) return r;
    return erode(dilate(r, radius, lin), radius, lin);
}

std::vector<Region> connected_components(const Region& r)
{
    std::vector<Region> out;
    out.reserve(r.polygons.size());
    for (const Polygon& poly : r.polygons) out.push_back(Region{{poly}});
    return out;
}

Region remove_holes(const Region& r)
{
    Region solid;
    for (const Polygon& poly : r.polygons) solid.polygons.push_back({poly.outer, {}});
    // islands that sat inside a dropped hole now overlap their parent outer
    return solid.polygons.size() > 1 ? normalize(solid) : solid;
}

bool contains(const Ring& ring, Point p)
{
    bool inside = false;
    const std::size_t n = ring.size();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
        const Point a = ring[i], b = ring[j];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < x) inside = !inside;
        }
    }
    return inside;
}

bool contains(const Region& r, Point p)
{
    for (const Polygon& poly : r.polygons) {
        if (!contains(poly.outer, p)) continue;
        bool in_hole = false;
        for (const Ring& h : poly.holes)
            if (contains(h, p)) {
                in_hole = true;
                break;
            }
        if (!in_hole) return true;
    }
    return false;
}

double boundary_distance(const Region& r, Point p)
{
    double best = INFINITY;
    auto scan = [&](const Ring& ring) {
        const std::size_t n = ring.size();
        for (std::size_t i = 0; i < n; ++i)
            best = std::min(best, segment_distance(p, ring[i], ring[(i + 1) % n]));
    };
    for (const Polygon& poly : r.polygons) {
        scan(poly.outer);
        for (const Ring& h : poly.holes) scan(h);
    }
    return best;
}

double symmetric_difference_area(const Region& a, const Region& b)
{
    return area(subtract(a, b)) + area(subtract(b, a));
}

Region translate(const Region& r, Point offset_by)
{
    Region out = r;
    for (Polygon& poly : out.polygons) {
        for (Point& p : poly.outer) p = p + offset_by;
        for (Ring& h : poly.holes)
            for (Point& p : h) p = p + offset_by;
    }
    return out;
}

Region scale(const Region& r, double factor)
{
    Region out = r;
    for (Polygon& poly : out.polygons) {
        for (Point& p : poly.outer) p = factor * p;
        for (Ring& h : poly.holes)
            for (Point& p : h) p = factor * p;
    }
    if (factor < 0.0) return normalize(out);
    return out;
}

}  // namespace isoprofile

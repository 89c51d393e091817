#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoprofile {

/// Raised for malformed geometry: degenerate rings, self-intersections,
/// unsupported topology.
class StructuralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised for out-of-range numeric parameters (negative radii, r_l > inr, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
    friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
    friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
    friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline Point lerp(Point a, Point b, double t) { return a + t * (b - a); }

/// Closed vertex loop without a repeated closing vertex. Outer rings are
/// counter-clockwise, holes clockwise.
using Ring = std::vector<Point>;

struct Polygon {
    Ring outer;
    std::vector<Ring> holes;
};

/// A set of polygons with holes; outers have pairwise disjoint interiors.
struct Region {
    std::vector<Polygon> polygons;

    bool empty() const { return polygons.empty(); }
};

struct LinearizationParams {
    double d_x = 0.01;  ///< maximum chord length used for circular arcs
};

struct BoundingBox {
    Point min{+INFINITY, +INFINITY};
    Point max{-INFINITY, -INFINITY};

    bool valid() const { return min.x <= max.x && min.y <= max.y; }
    double width() const { return max.x - min.x; }
    double height() const { return max.y - min.y; }
    double diagonal() const { return valid() ? std::hypot(width(), height()) : 0.0; }
    Point center() const { return 0.5 * (min + max); }
    void extend(Point p);
    void extend(const BoundingBox& other);
};

double signed_area(const Ring& ring);
double ring_length(const Ring& ring);

double area(const Region& r);
double perimeter(const Region& r);
std::size_t vertex_count(const Region& r);

BoundingBox bounding_box(const Ring& ring);
BoundingBox bounding_box(const Region& r);

/// Checks the cheap structural invariants (finite coordinates, >= 3 distinct
/// vertices per ring, nonzero area). Throws StructuralError.
void validate(const Region& r);

/// True when no two non-adjacent edges of the ring intersect.
bool is_simple(const Ring& ring);

/// Wraps one ring as a region, fixing orientation to counter-clockwise.
Region make_region(Ring outer);
Region make_region(Ring outer, std::vector<Ring> holes);

/// Regular polygon inscribed in the circle, vertex angles starting at zero and
/// uniformly spaced so every chord is at most lin.d_x.
Ring make_disk(Point center, double radius, const LinearizationParams& lin);
std::size_t disk_segments(double radius, const LinearizationParams& lin);

enum class BoolOp { Union, Intersection, Difference };

Region boolean(BoolOp op, const Region& a, const Region& b);
inline Region unite(const Region& a, const Region& b) { return boolean(BoolOp::Union, a, b); }
inline Region intersect(const Region& a, const Region& b) { return boolean(BoolOp::Intersection, a, b); }
inline Region subtract(const Region& a, const Region& b) { return boolean(BoolOp::Difference, a, b); }

/// Union of many regions in a single sweep.
Region unite_all(std::span<const Region> parts);

/// Cleans a region whose rings may overlap or self-touch into a valid Region.
Region normalize(const Region& r);

Region dilate(const Region& r, double radius, const LinearizationParams& lin);
Region erode(const Region& r, double radius, const LinearizationParams& lin);
Region open(const Region& r, double radius, const LinearizationParams& lin);
Region close(const Region& r, double radius, const LinearizationParams& lin);

std::vector<Region> connected_components(const Region& r);
Region remove_holes(const Region& r);

/// Even-odd point membership (boundary points count as inside within eps).
bool contains(const Region& r, Point p);
bool contains(const Ring& ring, Point p);

/// Distance from p to the boundary of the region (all rings).
double boundary_distance(const Region& r, Point p);

double symmetric_difference_area(const Region& a, const Region& b);

Region translate(const Region& r, Point offset);
Region scale(const Region& r, double factor);

}  // namespace isoprofile

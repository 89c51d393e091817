#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "isoprofile/geometry.hpp"

namespace isoprofile {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class GovernorKind { BoundaryVertex, BoundaryEdge };

/// Boundary element equidistant from a medial-axis segment. Edge i runs from
/// boundary vertex i to vertex i+1.
struct Governor {
    GovernorKind kind = GovernorKind::BoundaryEdge;
    std::size_t index = 0;
};

enum class SegmentKind { EdgeEdge, VertVert, EdgeVert };

const char* to_string(SegmentKind kind);

/// One exact medial-axis curve in a local frame:
///
///   x(q) = origin + q * axis + y(q) * normal,   q between q0 and q1
///
/// EdgeEdge: y = 0, radius affine in q (r0 at q0, r1 at q1).
/// VertVert: y = 0, radius = sqrt(q^2 + shape^2), shape = half the vertex gap.
/// EdgeVert: parabola with focal height h = shape, y = radius = (q^2 + h^2) / 2h.
///
/// The public parameter tau in [0, 1] maps linearly onto [q0, q1].
struct MASegment {
    SegmentKind kind = SegmentKind::EdgeEdge;
    std::array<Governor, 2> governors{};
    std::size_t node0 = npos;
    std::size_t node1 = npos;
    Point origin;
    Point axis{1.0, 0.0};
    Point normal{0.0, 1.0};
    double q0 = 0.0;
    double q1 = 0.0;
    double shape = 0.0;
    double r0 = 0.0;
    double r1 = 0.0;

    double natural(double tau) const { return q0 + tau * (q1 - q0); }
    Point point_at(double q) const;
    double radius_at(double q) const;
    Point at(double tau) const { return point_at(natural(tau)); }
    double radius(double tau) const { return radius_at(natural(tau)); }

    /// Parameter of the radius minimum for curved or hyperbolic radius
    /// profiles (always q = 0); empty for EdgeEdge.
    std::optional<double> stationary_q() const;

    /// Parameters on the branch containing `side` where radius == rho.
    /// Only meaningful when rho lies between the min and the radius at `side`.
    double solve_radius(double rho, double side) const;

    double arc_length(double qa, double qb) const;
    double length() const { return arc_length(q0, q1); }

    /// Tangency point of the ball centered at x(q) on governor g.
    Point footpoint(double q, std::size_t g, const Ring& boundary) const;
};

struct MANode {
    Point position;
    double radius = 0.0;
};

/// Medial axis of a hole-free simple polygon: a tree of exact segments.
struct MedialAxis {
    Ring boundary;  ///< counter-clockwise polygon the axis was computed for
    std::vector<MANode> nodes;
    std::vector<MASegment> segments;
    bool perturbed = false;

    /// node id -> incident segment ids
    std::vector<std::vector<std::size_t>> incidence() const;
};

/// Exact medial axis of a single hole-free simple polygon. Inputs whose
/// maximal inscribed circle is not unique are re-run on a deterministically
/// perturbed boundary. Throws StructuralError on holes, multiple polygons,
/// self-intersections and degenerate edges.
MedialAxis compute_medial_axis(const Region& poly);

struct InscribedCircle {
    Point center;
    double radius = 0.0;
};

InscribedCircle max_inscribed(const MedialAxis& ma);

struct DiscretizationParams {
    double d_c = 0.5;     ///< max |1/r(a) - 1/r(b)| along one graph edge
    double r_l = 0.0;     ///< radius limit; smaller parts of the axis are dropped
    double s_max = 0.02;  ///< max arc length of one graph edge
};

struct GraphNode {
    Point position;
    double radius = 0.0;
    std::size_t segment = npos;    ///< owning segment for interior samples
    double q = 0.0;                ///< natural parameter on `segment`
    std::size_t ma_node = npos;    ///< medial-axis junction this node sits on
};

struct GraphEdge {
    std::size_t a = npos;
    std::size_t b = npos;
    std::size_t segment = npos;
    double q_a = 0.0;
    double q_b = 0.0;
};

struct MedialAxisGraph {
    std::shared_ptr<const MedialAxis> axis;
    std::vector<GraphNode> nodes;
    std::vector<GraphEdge> edges;
    std::size_t inx_node = npos;
    Point inx;
    double inr = 0.0;
    double r_limit = 0.0;  ///< effective truncation radius used

    /// node id -> incident edge ids
    std::vector<std::vector<std::size_t>> adjacency() const;
};

/// Smallest truncation radius used when r_l == 0, relative to inr. The 1/r
/// spacing rule cannot reach radius zero at convex corners.
inline constexpr double kRadiusFloor = 1e-3;

MedialAxisGraph discretize(std::shared_ptr<const MedialAxis> ma, const DiscretizationParams& params);

/// Debug export: one row per segment with kind, endpoints, radii and governors.
void write_medial_axis_csv(const MedialAxis& ma, std::ostream& out);

}  // namespace isoprofile

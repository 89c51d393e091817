#pragma once

#include <cmath>
#include <vector>

#include "isoprofile/geometry.hpp"
#include "isoprofile/medial_axis.hpp"

namespace isoprofile {

enum class NeckKind { InteriorLocalMin, JunctionTwoIncreasing };

const char* to_string(NeckKind kind);

/// Local minimum of the radius function on the medial axis.
struct Neck {
    Point location;
    double radius = 0.0;
    NeckKind kind = NeckKind::InteriorLocalMin;
};

struct NeckSet {
    std::vector<Neck> necks;  ///< sorted by radius, then x, then y
    double r_n = INFINITY;
    double r_m = INFINITY;

    bool empty() const { return necks.empty(); }
};

NeckSet make_neck_set(std::vector<Neck> necks);

struct CircleSummary2 {
    double inr2 = 0.0;
    Point inx2;
};

/// Necks of the exact medial axis: strict interior minima of curved segments,
/// junctions with at least two strictly increasing outgoing segments, and
/// constant-radius runs whose every exit increases (one neck at the run's
/// arc-length midpoint).
NeckSet find_necks(const MedialAxis& ma);

/// True when the erosion of omega by rho has at least two components.
bool classical_neck_exists(const Region& omega, double rho, const LinearizationParams& lin);

/// Smallest rho in (0, inr) disconnecting the erosion: a 100-step scan refined
/// by bisection to 1e-4 inr. Returns +inf when no scanned rho disconnects.
double min_classical_neck(const Region& omega, const LinearizationParams& lin);

/// Largest circle in omega minus the (circumscribed, linearized) maximal
/// inscribed disk, via the medial axis of each remaining piece.
CircleSummary2 second_largest_circle(const Region& omega, const MedialAxis& ma, const LinearizationParams& lin);

/// Every neck radius exceeds inr2 / 2; vacuously true without necks.
bool thick_neck_condition(const NeckSet& ns, const CircleSummary2& c2);

}  // namespace isoprofile

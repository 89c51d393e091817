#pragma once

#include <cstddef>
#include <vector>

#include "isoprofile/geometry.hpp"
#include "isoprofile/medial_axis.hpp"

namespace isoprofile {

/// Node and edge ids of a MedialAxisGraph.
struct Subgraph {
    std::vector<std::size_t> nodes;
    std::vector<std::size_t> edges;
    bool connected = false;

    bool empty() const { return nodes.empty(); }
};

/// Sorts and dedups ids, adds missing edge endpoints, sets `connected`.
Subgraph make_subgraph(const MedialAxisGraph& mag, std::vector<std::size_t> nodes, std::vector<std::size_t> edges);
Subgraph full_subgraph(const MedialAxisGraph& mag);
/// Nodes with radius >= rho and the edges joining two such nodes.
Subgraph radius_subgraph(const MedialAxisGraph& mag, double rho);

/// Region swept by the maximal balls centred on segment `si` between the
/// natural parameters qa and qb: both end balls plus the polygon spanned by
/// the centres and their tangency points on the two governors.
Region reconstruct_piece(const MedialAxis& ma, std::size_t si, double qa, double qb, const LinearizationParams& lin);

Region reconstruct_edge(const Region& omega, const MedialAxisGraph& mag, std::size_t edge, const LinearizationParams& lin);

/// Union of the per-edge regions of g plus balls at nodes without edges in g.
/// An empty subgraph yields an empty region.
Region limited_reconstruction(const Region& omega, const MedialAxisGraph& mag, const Subgraph& g,
                              const LinearizationParams& lin);

/// Reconstruction of the exact radius-rho part of the axis: graph edges that
/// cross radius rho are cut at the crossing on their parent segment.
Region radius_reconstruction(const MedialAxisGraph& mag, double rho, const LinearizationParams& lin);

/// area(reconstruction of {r >= rho} symmetric-difference open(omega, rho)) / area(omega)
double verify_prop_marecon(const Region& omega, const MedialAxisGraph& mag, double rho, const LinearizationParams& lin);

}  // namespace isoprofile

#pragma once

#include <cstdint>
#include <vector>

#include "isoprofile/geometry.hpp"

namespace oracle {

using isoprofile::Point;
using isoprofile::Region;

double segment_distance(Point p, Point a, Point b);

/// Minimum distance to any boundary edge, by exhaustive scan.
double boundary_distance(const Region& r, Point p);

/// Crossing-number point membership over all rings.
bool inside(const Region& r, Point p);

struct Ball {
    Point center;
    double radius = 0.0;
};

/// Cell-centre sampling grid.
struct Grid {
    double x0 = 0.0;
    double y0 = 0.0;
    double cell = 1.0;
    int nx = 0;
    int ny = 0;

    Point center(int i, int j) const { return {x0 + (i + 0.5) * cell, y0 + (j + 0.5) * cell}; }
    double cell_area() const { return cell * cell; }
};

Grid grid_over(const isoprofile::BoundingBox& box, double cell, double pad);

using Mask = std::vector<std::uint8_t>;

/// Scanline fill of cell centres inside the region (even-odd).
Mask fill_region(const Grid& g, const Region& r);
Mask fill_balls(const Grid& g, const std::vector<Ball>& balls);

double mask_area(const Grid& g, const Mask& m);
double xor_area(const Grid& g, const Mask& a, const Mask& b);
/// Area of cells set in a but not in b.
double minus_area(const Grid& g, const Mask& a, const Mask& b);

double rounded_rect_area(double w, double h, double rho);
double rounded_rect_perimeter(double w, double h, double rho);

}  // namespace oracle

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

namespace {

template <class F>
void for_each_edge(const Region& r, F&& f)
{
    auto ring_edges = [&](const isoprofile::Ring& ring) {
        for (std::size_t i = 0; i < ring.size(); ++i) f(ring[i], ring[(i + 1) % ring.size()]);
    };
    for (const auto& poly : r.polygons) {
        ring_edges(poly.outer);
        for (const auto& h : poly.holes) ring_edges(h);
    }
}

}  // namespace

double segment_distance(Point p, Point a, Point b)
{
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    double len2 = dx * dx + dy * dy;
    double t = len2 > 0.0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

double boundary_distance(const Region& r, Point p)
{
    double best = std::numeric_limits<double>::infinity();
    for_each_edge(r, [&](Point a, Point b) { best = std::min(best, segment_distance(p, a, b)); });
    return best;
}

bool inside(const Region& r, Point p)
{
    bool in = false;
    for_each_edge(r, [&](Point a, Point b) {
        if ((a.y > p.y) != (b.y > p.y)) {
            double x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (x > p.x) in = !in;
        }
    });
    return in;
}

Grid grid_over(const isoprofile::BoundingBox& box, double cell, double pad)
{
    Grid g;
    g.cell = cell;
    g.x0 = box.min.x - pad;
    g.y0 = box.min.y - pad;
    g.nx = static_cast<int>(std::ceil((box.width() + 2 * pad) / cell));
    g.ny = static_cast<int>(std::ceil((box.height() + 2 * pad) / cell));
    return g;
}

Mask fill_region(const Grid& g, const Region& r)
{
    Mask m(static_cast<std::size_t>(g.nx) * g.ny, 0);
    std::vector<double> xs;
    for (int j = 0; j < g.ny; ++j) {
        double y = g.y0 + (j + 0.5) * g.cell;
        xs.clear();
        for_each_edge(r, [&](Point a, Point b) {
            if ((a.y > y) != (b.y > y)) xs.push_back(a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x));
        });
        std::sort(xs.begin(), xs.end());
        for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
            int i0 = std::max(0, static_cast<int>(std::ceil((xs[k] - g.x0) / g.cell - 0.5)));
            int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((xs[k + 1] - g.x0) / g.cell - 0.5)));
            for (int i = i0; i <= i1; ++i) m[static_cast<std::size_t>(j) * g.nx + i] = 1;
        }
    }
    return m;
}

Mask fill_balls(const Grid& g, const std::vector<Ball>& balls)
{
    Mask m(static_cast<std::size_t>(g.nx) * g.ny, 0);
    for (const Ball& b : balls) {
        int j0 = std::max(0, static_cast<int>(std::floor((b.center.y - b.radius - g.y0) / g.cell)));
        int j1 = std::min(g.ny - 1, static_cast<int>(std::ceil((b.center.y + b.radius - g.y0) / g.cell)));
        for (int j = j0; j <= j1; ++j) {
            double y = g.y0 + (j + 0.5) * g.cell - b.center.y;
            double w2 = b.radius * b.radius - y * y;
            if (w2 < 0.0) continue;
            double w = std::sqrt(w2);
            int i0 = std::max(0, static_cast<int>(std::ceil((b.center.x - w - g.x0) / g.cell - 0.5)));
            int i1 = std::min(g.nx - 1, static_cast<int>(std::floor((b.center.x + w - g.x0) / g.cell - 0.5)));
            for (int i = i0; i <= i1; ++i) m[static_cast<std::size_t>(j) * g.nx + i] = 1;
        }
    }
    return m;
}

double mask_area(const Grid& g, const Mask& m)
{
    double n = 0;
    for (auto v : m) n += v;
    return n * g.cell_area();
}

double xor_area(const Grid& g, const Mask& a, const Mask& b)
{
    double n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] != b[i]);
    return n * g.cell_area();
}

double minus_area(const Grid& g, const Mask& a, const Mask& b)
{
    double n = 0;
    for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] && !b[i]);
    return n * g.cell_area();
}

double rounded_rect_area(double w, double h, double rho)
{
    return w * h - (4.0 - std::numbers::pi) * rho * rho;
}

double rounded_rect_perimeter(double w, double h, double rho)
{
    return 2.0 * (w + h) - 2.0 * (4.0 - std::numbers::pi) * rho;
}

}  // namespace oracle

#include "isoprofile/tv.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <utility>

namespace isoprofile {
namespace {

double pairwise_sum(std::span<const double> v)
{
    if (v.size() <= 16) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

// Adds the winding contribution of one directed segment lying inside row j.
// Cells left of the segment get sign(dy) times the covered fraction.
void deposit_row(Point a, Point b, const GridSpec& g, std::vector<double>& partial, std::vector<double>& full)
{
    double cell_area = g.dx * g.dy;
    double xa = (a.x - g.origin.x) / g.dx;
    double xb = (b.x - g.origin.x) / g.dx;
    double lo = std::min(xa, xb);
    double hi = std::max(xa, xb);
    auto nx = static_cast<std::ptrdiff_t>(g.nx);
    std::ptrdiff_t first = static_cast<std::ptrdiff_t>(std::floor(lo));
    std::ptrdiff_t last = static_cast<std::ptrdiff_t>(std::floor(hi));
    if (last > first && static_cast<double>(last) == hi) --last;
    for (std::ptrdiff_t i = first; i <= last; ++i) {
        double c0 = std::max(lo, static_cast<double>(i));
        double c1 = std::min(hi, static_cast<double>(i + 1));
        double f0 = hi > lo ? (c0 - xa) / (xb - xa) : 0.0;
        double f1 = hi > lo ? (c1 - xa) / (xb - xa) : 1.0;
        double dy = (b.y - a.y) * std::abs(f1 - f0);
        if (hi == lo) dy = b.y - a.y;
        double xmid = 0.5 * (c0 + c1) - static_cast<double>(i);
        // area of the strip part left of the piece inside cell i
        double left = dy * xmid * g.dx / cell_area;
        double whole = dy * g.dx / cell_area;
        if (i >= nx) {
            full[g.nx] += whole;
            continue;
        }
        if (i < 0) continue;
        partial[static_cast<std::size_t>(i)] += left;
        full[static_cast<std::size_t>(i)] += whole;
    }
}

void rasterize_ring(const Ring& ring, const GridSpec& g, std::vector<double>& values)
{
    std::vector<std::vector<double>> partial(g.ny, std::vector<double>(g.nx, 0.0));
    std::vector<std::vector<double>> full(g.ny, std::vector<double>(g.nx + 1, 0.0));
    for (std::size_t k = 0; k < ring.size(); ++k) {
        Point a = ring[k];
        Point b = ring[(k + 1) % ring.size()];
        if (a.y == b.y) continue;
        double ya = (a.y - g.origin.y) / g.dy;
        double yb = (b.y - g.origin.y) / g.dy;
        double lo = std::min(ya, yb);
        double hi = std::max(ya, yb);
        auto j0 = std::max<std::ptrdiff_t>(0, static_cast<std::ptrdiff_t>(std::floor(lo)));
        auto j1 = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(g.ny) - 1, static_cast<std::ptrdiff_t>(std::floor(hi)));
        for (std::ptrdiff_t j = j0; j <= j1; ++j) {
            double s0 = std::max(lo, static_cast<double>(j));
            double s1 = std::min(hi, static_cast<double>(j + 1));
            if (s1 <= s0) continue;
            double f0 = (s0 - ya) / (yb - ya);
            double f1 = (s1 - ya) / (yb - ya);
            Point p0 = lerp(a, b, f0);
            Point p1 = lerp(a, b, f1);
            if (ya > yb) std::swap(p0, p1);
            auto row = static_cast<std::size_t>(j);
            deposit_row(p0, p1, g, partial[row], full[row]);
        }
    }
    for (std::size_t j = 0; j < g.ny; ++j) {
        double running = full[j][g.nx];
        for (std::size_t i = g.nx; i-- > 0;) {
            values[j * g.nx + i] += partial[j][i] + running;
            running += full[j][i];
        }
    }
}

}  // namespace

double IndicatorGrid::mass() const { return pairwise_sum(values) * dx * dy; }

const char* to_string(Stencil s)
{
    switch (s) {
    case Stencil::TV1: return "tv1";
    case Stencil::Smooth3: return "smooth3";
    case Stencil::Smooth5: return "smooth5";
    }
    return "unknown";
}

std::optional<Stencil> stencil_from_string(const std::string& name)
{
    for (Stencil s : {Stencil::TV1, Stencil::Smooth3, Stencil::Smooth5}) {
        if (name == to_string(s)) return s;
    }
    return std::nullopt;
}

IndicatorGrid rasterize(const Region& omega, std::size_t ny)
{
    if (ny < 8) throw ParameterError("ny must be at least 8");
    BoundingBox box = bounding_box(omega);
    if (!box.valid() || box.height() <= 0.0) throw ParameterError("cannot rasterize an empty region");
    double cell = box.height() / static_cast<double>(ny);
    auto nx = static_cast<std::size_t>(std::ceil(box.width() / cell - 1e-9));
    GridSpec spec{box.min - Point{2 * cell, 2 * cell}, cell, cell, nx + 4, ny + 4};
    return rasterize(omega, spec);
}

IndicatorGrid rasterize(const Region& omega, const GridSpec& spec)
{
    if (!(spec.dx > 0.0) || !(spec.dy > 0.0) || spec.nx == 0 || spec.ny == 0) throw ParameterError("invalid grid");
    IndicatorGrid g;
    g.nx = spec.nx;
    g.ny = spec.ny;
    g.dx = spec.dx;
    g.dy = spec.dy;
    g.origin = spec.origin;
    g.values.assign(g.nx * g.ny, 0.0);
    for (const Polygon& poly : omega.polygons) {
        rasterize_ring(poly.outer, spec, g.values);
        for (const Ring& h : poly.holes) rasterize_ring(h, spec, g.values);
    }
    double sign = pairwise_sum(g.values) < 0.0 ? -1.0 : 1.0;
    for (double& v : g.values) v = std::clamp(sign * v, 0.0, 1.0);
    return g;
}

double tv_perimeter(const IndicatorGrid& g, Stencil stencil)
{
    auto nx = static_cast<std::ptrdiff_t>(g.nx);
    auto ny = static_cast<std::ptrdiff_t>(g.ny);
    int half = stencil == Stencil::Smooth5 ? 2 : 1;
    std::ptrdiff_t lo = stencil == Stencil::TV1 ? -1 : -half;
    std::vector<double> norms;
    norms.reserve(static_cast<std::size_t>((nx + 2 * half) * (ny + 2 * half)));
    for (std::ptrdiff_t j = lo; j < ny + half; ++j) {
        for (std::ptrdiff_t i = lo; i < nx + half; ++i) {
            double gx = 0.0;
            double gy = 0.0;
            switch (stencil) {
            case Stencil::TV1:
                gx = (g.at(i + 1, j) - g.at(i, j)) / g.dx;
                gy = (g.at(i, j + 1) - g.at(i, j)) / g.dy;
                break;
            case Stencil::Smooth3:
                for (int k = -1; k <= 1; ++k) {
                    gx += g.at(i + 1, j + k) - g.at(i - 1, j + k);
                    gy += g.at(i + k, j + 1) - g.at(i + k, j - 1);
                }
                gx /= 6.0 * g.dx;
                gy /= 6.0 * g.dy;
                break;
            case Stencil::Smooth5:
                for (int k = -2; k <= 2; ++k) {
                    for (int m = 1; m <= 2; ++m) {
                        gx += m * (g.at(i + m, j + k) - g.at(i - m, j + k));
                        gy += m * (g.at(i + k, j + m) - g.at(i + k, j - m));
                    }
                }
                gx /= 50.0 * g.dx;
                gy /= 50.0 * g.dy;
                break;
            }
            norms.push_back(std::hypot(gx, gy));
        }
    }
    return pairwise_sum(norms) * g.dx * g.dy;
}

std::vector<TVStudyRow> tv_study(const Region& omega, const std::vector<std::size_t>& nys, double reference)
{
    std::vector<TVStudyRow> rows;
    for (std::size_t ny : nys) {
        IndicatorGrid g = rasterize(omega, ny);
        for (Stencil s : {Stencil::TV1, Stencil::Smooth3, Stencil::Smooth5}) {
            double est = tv_perimeter(g, s);
            rows.push_back({ny, s, est, std::abs(est - reference) / reference});
        }
    }
    return rows;
}

}  // namespace isoprofile

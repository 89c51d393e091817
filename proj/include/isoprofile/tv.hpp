#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "isoprofile/geometry.hpp"

namespace isoprofile {

/// Row-major coverage fractions; values[j * nx + i] covers
/// [origin.x + i dx, +dx] x [origin.y + j dy, +dy].
struct IndicatorGrid {
    std::vector<double> values;
    std::size_t nx = 0;
    std::size_t ny = 0;
    double dx = 0.0;
    double dy = 0.0;
    Point origin;

    double at(std::ptrdiff_t i, std::ptrdiff_t j) const
    {
        if (i < 0 || j < 0 || i >= static_cast<std::ptrdiff_t>(nx) || j >= static_cast<std::ptrdiff_t>(ny)) return 0.0;
        return values[static_cast<std::size_t>(j) * nx + static_cast<std::size_t>(i)];
    }
    double mass() const;
};

struct GridSpec {
    Point origin;
    double dx = 0.0;
    double dy = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
};

enum class Stencil { TV1, Smooth3, Smooth5 };

const char* to_string(Stencil s);
std::optional<Stencil> stencil_from_string(const std::string& name);

/// Square cells of height bbox_height / ny, bbox padded by 2 cells per side.
IndicatorGrid rasterize(const Region& omega, std::size_t ny);
/// Exact polygon-cell intersection area over cell area.
IndicatorGrid rasterize(const Region& omega, const GridSpec& spec);

/// Sum over cells of |grad u| dx dy with zero padding outside the grid.
/// tv1: forward differences. smooth3: [-1 0 1]/(6 dx) over 3 rows.
/// smooth5: [-2 -1 0 1 2]/(10 dx) averaged over 5 rows.
double tv_perimeter(const IndicatorGrid& grid, Stencil stencil);

struct TVStudyRow {
    std::size_t ny = 0;
    Stencil stencil = Stencil::TV1;
    double estimate = 0.0;
    double rel_error = 0.0;
};

std::vector<TVStudyRow> tv_study(const Region& omega, const std::vector<std::size_t>& nys, double reference);

}  // namespace isoprofile

#include "fixtures.hpp"

#include <cmath>
#include <numbers>

namespace fixtures {

using isoprofile::make_region;

Region unit_square() { return make_region({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

Region square2() { return make_region({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

Region rectangle4x2() { return make_region({{-2, -1}, {2, -1}, {2, 1}, {-2, 1}}); }

Region l_shape() { return make_region({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

Region triangle() { return make_region({{0, 0}, {1, 0}, {0, 1}}); }

Region hexagon() { return polygon_disk(1.0, 6); }

Region dumbbell()
{
    return make_region({{0, 0}, {2, 0}, {2, 0.8}, {3, 0.8}, {3, 0}, {5, 0},
                        {5, 2}, {3, 2}, {3, 1.2}, {2, 1.2}, {2, 2}, {0, 2}});
}

Region dumbbell_unequal()
{
    return make_region({{0, 0}, {2, 0}, {2, 0.8}, {3, 0.8}, {3, 0.2}, {4.6, 0.2},
                        {4.6, 1.8}, {3, 1.8}, {3, 1.2}, {2, 1.2}, {2, 2}, {0, 2}});
}

Region hourglass()
{
    return make_region({{0, 0}, {2, 0}, {2, 0.55}, {3, 0.55}, {3, 0.2}, {4.6, 0.2},
                        {4.6, 1.8}, {3, 1.8}, {3, 1.45}, {2, 1.45}, {2, 2}, {0, 2}});
}

Region two_neck()
{
    return make_region({{0, 0}, {2, 0}, {2, 0.8}, {3, 0.8}, {3, 0}, {5, 0}, {5, 0.6}, {6, 0.6},
                        {6, 0}, {8, 0}, {8, 2}, {6, 2}, {6, 1.4}, {5, 1.4}, {5, 2}, {3, 2},
                        {3, 1.2}, {2, 1.2}, {2, 2}, {0, 2}});
}

Region star()
{
    Ring ring;
    const int spikes = 6;
    for (int i = 0; i < 2 * spikes; ++i) {
        double a = std::numbers::pi * i / spikes + 0.1;
        double r = (i % 2 == 0) ? 1.0 : 0.7;
        ring.push_back({r * std::cos(a), r * std::sin(a)});
    }
    return make_region(ring);
}

Region disk64() { return polygon_disk(1.0, 64); }

Region wedge() { return make_region({{0, 0}, {4, -0.5}, {4, 0.5}}); }

Region sawtooth_pinholes()
{
    Ring outer{{0, 0}, {2, 0}, {2, 2}};
    const int teeth = 2000;
    for (int k = 1; k < 2 * teeth; ++k) {
        double x = 2.0 - k * (1.0 / teeth);
        outer.push_back({x, k % 2 == 1 ? 2.0 + 1e-5 : 2.0});
    }
    outer.push_back({0, 2});
    std::vector<Ring> holes;
    double h = std::sqrt(1e-9);
    for (double cx : {0.5, 1.0, 1.5}) holes.push_back({{cx, 1}, {cx, 1 + h}, {cx + h, 1 + h}, {cx + h, 1}});
    return make_region(std::move(outer), std::move(holes));
}

Region polygon_disk(double radius, int sides, double cx, double cy)
{
    Ring ring;
    for (int i = 0; i < sides; ++i) {
        double a = 2.0 * std::numbers::pi * i / sides;
        ring.push_back({cx + radius * std::cos(a), cy + radius * std::sin(a)});
    }
    return make_region(ring);
}

}  // namespace fixtures

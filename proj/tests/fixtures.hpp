#pragma once

#include "isoprofile/geometry.hpp"

namespace fixtures {

using isoprofile::Region;
using isoprofile::Ring;

Region unit_square();
Region square2();              // side 2 centered at the origin
Region rectangle4x2();         // [-2,2] x [-1,1]
Region l_shape();              // 2x2 with the upper-right unit square removed
Region triangle();             // (0,0),(1,0),(0,1)
Region hexagon();              // regular, side 1
Region dumbbell();             // two 2x2 squares joined by a 1x0.4 corridor
Region dumbbell_unequal();     // 2x2 and 1.6x1.6 squares, 1x0.4 corridor
Region hourglass();            // 2x2 and 1.6x1.6 squares, 1x0.9 corridor
Region two_neck();             // three 2x2 squares, corridors 0.4 and 0.8 wide
Region star();                 // six spikes, inner radius 0.7, outer radius 1
Region disk64();               // regular 64-gon, circumradius 1
Region wedge();                // thin isosceles triangle, apex at the origin
Region sawtooth_pinholes();    // [0,2]^2 with a fine sawtooth top and three 1e-9 pinholes
Region polygon_disk(double radius, int sides, double cx = 0.0, double cy = 0.0);

}  // namespace fixtures

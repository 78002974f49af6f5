#pragma once

#include "dendro/configuration.hpp"

#include <string>

namespace dendro {

// Viewport geometry: the unit disk is centered in a 512 x 512 canvas with
// radius 248 px, y axis pointing up.
inline constexpr double svg_size = 512.0;
inline constexpr double svg_scale = 248.0;

// Unit circle in black, disks as translucent blue circles, points as red
// dots; every entry is labeled with its 1-based index. Planar only.
std::string render_svg(const Configuration<double>& x);

}  // namespace dendro

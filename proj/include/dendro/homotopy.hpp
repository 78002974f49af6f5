#pragma once

#include "dendro/configuration.hpp"

namespace dendro {

// Clearance of the point at `slot`: the least distance to another point, to
// a disk, or to the boundary sphere. Strictly positive on valid input.
double epsilon(const Configuration<double>& y, std::size_t slot);

// Right inverse of the shift at `slot`: the point becomes a disk of radius
// epsilon / 2 centered on it.
Configuration<double> g_inverse(const Configuration<double>& y, std::size_t slot);

// Straight-line homotopy on the radius of the disk at `slot`, from
// g_inverse(shift_at(x, slot)) at t = 0 to x at t = 1.
Configuration<double> homotopy(const Configuration<double>& x, std::size_t slot, double t);

}  // namespace dendro

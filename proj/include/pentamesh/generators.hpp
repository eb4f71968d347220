#pragma once

#include "pentamesh/geometry.hpp"

#include <cstdint>
#include <vector>

namespace pentamesh {

// generalized spiral on the unit 2-sphere
std::vector<Point3> spiral_sphere(size_t n);

struct HypercylinderSampling {
  double R = 1.0;
  double L = 4.0;
  double h_sphere = 0.5;
  double h_time = 0.5;
  uint64_t seed = 1;
  bool rotate_levels = true; // random rotation per time level
  bool caps = true;          // interior shells on t = 0 and t = L
};

size_t sphere_count(double R, double h);

std::vector<Point4> generate_hypercylinder_points(const HypercylinderSampling &cfg);
std::vector<Point4> generate_hypercylinder_points(double R, double L, double h_sphere, double h_time,
                                                  uint64_t seed);

double hypercylinder_hypervolume(double R, double L);

// uniform in [lo, hi]^4
std::vector<Point4> uniform_points(size_t n, uint64_t seed, double lo = 0.0, double hi = 1.0);

} // namespace pentamesh

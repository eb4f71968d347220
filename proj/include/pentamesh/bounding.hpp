#pragma once

#include "pentamesh/geometry.hpp"

#include <array>
#include <vector>

namespace pentamesh {

class Mesh4;

struct SubdivisionTable {
  int n_b = 24;
  std::array<Point4, 16> corners;            // unit tesseract corner for each 1-based index
  std::vector<std::array<int, 5>> tuples;    // 1-based
  // 0-based, first two indices swapped where needed for positive orientation
  std::vector<std::array<int, 5>> normalized() const;
};

SubdivisionTable subdivision_table(int n_b);

struct BoundingBox4 {
  Point4 min = Point4::Zero();
  Point4 max = Point4::Zero();
  double margin = 1.0;

  static BoundingBox4 of(const std::vector<Point4> &pts, double margin = 1.0);
  double diagonal() const { return (max - min).norm(); }
  // the inflated axis-aligned tesseract actually used for the super mesh
  BoundingBox4 tesseract() const;
  bool strictly_contains(const Point4 &p) const;
};

Mesh4 build_bounding_mesh(const std::vector<Point4> &pts, int n_b = 24, double margin = 1.0);

} // namespace pentamesh

#include "pentamesh/bounding.hpp"
#include "pentamesh/mesh.hpp"
#include "pentamesh/predicates.hpp"

#include <stdexcept>

namespace pentamesh {

namespace {

const std::vector<std::array<int, 5>> kTable24{
    {1, 2, 3, 5, 9},    {2, 3, 4, 5, 9},    {2, 4, 5, 6, 9},    {3, 4, 5, 7, 9},    {4, 5, 6, 7, 9},
    {4, 6, 7, 8, 9},    {2, 4, 6, 9, 10},   {4, 6, 8, 9, 10},   {3, 4, 7, 9, 11},   {4, 7, 8, 9, 11},
    {4, 8, 9, 10, 11},  {4, 8, 10, 11, 12}, {5, 6, 7, 9, 13},   {6, 7, 8, 9, 13},   {6, 8, 9, 10, 13},
    {7, 8, 9, 11, 13},  {8, 9, 10, 11, 13}, {8, 10, 11, 12, 13}, {6, 8, 10, 13, 14}, {8, 10, 12, 13, 14},
    {7, 8, 11, 13, 15}, {8, 11, 12, 13, 15}, {8, 12, 13, 14, 15}, {8, 12, 14, 15, 16},
};

const std::vector<std::array<int, 5>> kTable22{
    {1, 2, 4, 5, 13},   {1, 2, 4, 9, 13},   {2, 11, 13, 14, 15}, {2, 7, 11, 13, 15}, {2, 4, 5, 7, 13},
    {2, 4, 9, 11, 13},  {4, 7, 11, 13, 15}, {4, 7, 13, 15, 16},  {2, 3, 7, 11, 13},  {4, 11, 13, 15, 16},
    {2, 7, 13, 14, 15}, {2, 3, 4, 7, 13},   {2, 3, 4, 11, 13},   {3, 4, 7, 11, 13},  {4, 5, 7, 8, 13},
    {4, 7, 8, 13, 16},  {4, 9, 11, 12, 13}, {4, 11, 12, 13, 16}, {2, 5, 6, 7, 13},   {2, 6, 7, 13, 14},
    {2, 9, 10, 11, 13}, {2, 10, 11, 13, 14},
};

const std::vector<std::array<int, 5>> kTable23{
    {1, 3, 4, 6, 9},    {1, 6, 8, 9, 13},   {3, 7, 8, 13, 15},  {1, 4, 6, 8, 9},    {3, 6, 7, 8, 13},
    {3, 6, 7, 13, 15},  {3, 4, 6, 8, 9},    {3, 6, 8, 9, 13},   {3, 10, 11, 13, 15}, {1, 2, 3, 6, 10},
    {3, 8, 9, 11, 13},  {3, 6, 10, 13, 15}, {1, 3, 6, 9, 10},   {3, 6, 9, 10, 13},  {8, 11, 12, 13, 15},
    {3, 4, 8, 9, 11},   {3, 9, 10, 11, 13}, {6, 10, 13, 14, 15}, {4, 8, 9, 11, 12}, {8, 9, 11, 12, 13},
    {8, 12, 13, 15, 16}, {1, 5, 6, 8, 13},  {3, 8, 11, 13, 15},
};

std::array<Point4, 16> unit_corners() {
  std::array<Point4, 16> c;
  const double xy[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
  for (int t = 0; t < 2; ++t)
    for (int i = 0; i < 8; ++i)
      c[t * 8 + i] = Point4(xy[i][0], xy[i][1], xy[i][2], t);
  return c;
}

// index i - 1 holds the corner whose coordinate bits are those of i - 1; the 24-table only tiles in this order
std::array<Point4, 16> binary_corners() {
  std::array<Point4, 16> c;
  for (int i = 0; i < 16; ++i)
    c[i] = Point4(i & 1, (i >> 1) & 1, (i >> 2) & 1, (i >> 3) & 1);
  return c;
}

} // namespace

SubdivisionTable subdivision_table(int n_b) {
  SubdivisionTable t;
  t.n_b = n_b;
  t.corners = unit_corners();
  switch (n_b) {
  case 24:
    t.corners = binary_corners();
    t.tuples = kTable24;
    break;
  case 23:
    t.tuples = kTable23;
    break;
  case 22:
    t.tuples = kTable22;
    break;
  default:
    throw std::invalid_argument("unsupported subdivision size " + std::to_string(n_b));
  }
  return t;
}

std::vector<std::array<int, 5>> SubdivisionTable::normalized() const {
  std::vector<std::array<int, 5>> out;
  out.reserve(tuples.size());
  for (auto tup : tuples) {
    for (int &i : tup)
      --i;
    const int s = orientation4(corners[tup[0]], corners[tup[1]], corners[tup[2]], corners[tup[3]], corners[tup[4]]).sign;
    if (s == 0)
      throw std::logic_error("degenerate subdivision tuple");
    if (s < 0)
      std::swap(tup[0], tup[1]);
    out.push_back(tup);
  }
  return out;
}

BoundingBox4 BoundingBox4::of(const std::vector<Point4> &pts, double margin) {
  if (pts.empty())
    throw std::invalid_argument("bounding box of an empty point set");
  BoundingBox4 b;
  b.min = pts.front();
  b.max = pts.front();
  for (const auto &p : pts) {
    b.min = b.min.cwiseMin(p);
    b.max = b.max.cwiseMax(p);
  }
  b.margin = margin;
  return b;
}

BoundingBox4 BoundingBox4::tesseract() const {
  const double diag = diagonal();
  const double pad = diag > 0.0 ? margin * diag : margin;
  const double half = 0.5 * (max - min).maxCoeff() + pad;
  const Point4 c = 0.5 * (min + max);
  BoundingBox4 t;
  t.min = c - Point4::Constant(half);
  t.max = c + Point4::Constant(half);
  t.margin = 0.0;
  return t;
}

bool BoundingBox4::strictly_contains(const Point4 &p) const {
  return (p.array() > min.array()).all() && (p.array() < max.array()).all();
}

Mesh4 build_bounding_mesh(const std::vector<Point4> &pts, int n_b, double margin) {
  if (pts.empty())
    throw std::invalid_argument("build_bounding_mesh: no points");
  if (!(margin > 0.0))
    throw std::invalid_argument("build_bounding_mesh: margin must be positive");
  const auto table = subdivision_table(n_b);
  const BoundingBox4 box = BoundingBox4::of(pts, margin).tesseract();
  const Point4 side = box.max - box.min;
  Mesh4 mesh;
  for (const auto &c : table.corners)
    mesh.add_vertex(box.min + c.cwiseProduct(side), true);
  for (const auto &t : table.normalized())
    mesh.add_element({t[0], t[1], t[2], t[3], t[4]});
  mesh.rebuild_adjacency();
  mesh.set_scale(box.diagonal());
  return mesh;
}

} // namespace pentamesh

#pragma once

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pentamesh {

// (x, t)
using Point2 = Eigen::Vector2d;

class RoughnessError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct QuadConfig2 {
  std::array<Point2, 4> u;
  std::array<double, 4> f{};
  double c_v = 1.0;
  // strictly convex and counter-clockwise
  bool valid() const;
};

struct CanonicalQuad {
  double p = 0.0, q = 0.0, r = 0.0, s = 0.0;
  double m() const { return r * q - p * s + s - q; }
  bool valid() const { return q > 0.0 && s > 0.0 && r * q - p * s > 0.0 && m() > 0.0; }
};

// u1 -> (0,0), u2 -> (1,0) after stretching t by c_v
CanonicalQuad map_to_canonical(const QuadConfig2 &cfg);

struct RelativeRoughness {
  double value = 0.0; // |H|^2 on the u1-u3 diagonal minus |G|^2 on the u2-u4 diagonal
  double A = 0.0, B = 0.0, C = 0.0;
  double magnitude = 0.0; // larger of the two roughness integrals being subtracted
  double product() const { return A * B * C; }
  // rel * max(|value|, |ABC|) plus a roundoff floor of 1e-14 * magnitude
  bool factorization_holds(double rel = 1e-9) const;
};

RelativeRoughness relative_roughness(const CanonicalQuad &cq, const std::array<double, 4> &f, double c_v);

// integral of c gx^2 + gt^2 / c for the linear interpolant on one triangle
double triangle_roughness(const Point2 &a, const Point2 &b, const Point2 &c, double fa, double fb, double fc,
                          double c_v);
// same difference from gradients and areas of the actual triangles
double relative_roughness_direct(const CanonicalQuad &cq, const std::array<double, 4> &f, double c_v);

// +1 when w lies outside the circle through tri after t -> c_v t, -1 inside, 0 on it
int incircle_m2(double c_v, const std::array<Point2, 3> &tri, const Point2 &w);
double incircle_m2_value(double c_v, const std::array<Point2, 3> &tri, const Point2 &w);

int orient2_exact(const Point2 &a, const Point2 &b, const Point2 &c);

using SpeedField2 = std::function<double(const Point2 &)>;

struct Triangulation2 {
  std::vector<Point2> points;
  std::vector<std::array<int, 3>> triangles; // counter-clockwise
  std::vector<std::pair<int, int>> edges() const;
};

// hull fan plus interior splits
Triangulation2 seed_triangulation(const std::vector<Point2> &points);

struct LopResult {
  Triangulation2 tri;
  size_t flips = 0;
  size_t sweeps = 0;
  std::vector<double> roughness; // total after each flip, starting with the seed
  bool monotone = true;
};

// c is sampled at the diagonal midpoint; a flip must also lower the local roughness
LopResult lop(const std::vector<Point2> &points, const std::vector<double> &values, const SpeedField2 &speed,
              size_t max_flips = 1000000);
LopResult lop(const std::vector<Point2> &points, const std::vector<double> &values, double c_v);

double total_roughness(const Triangulation2 &tri, const std::vector<double> &values, const SpeedField2 &speed);

// every triangle with an empty circumcircle after t -> c_v t; needs points in general position
Triangulation2 delaunay_brute_force(const std::vector<Point2> &points, double c_v = 1.0);

} // namespace pentamesh

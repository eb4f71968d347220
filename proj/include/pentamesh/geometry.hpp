#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pentamesh {

using Point4 = Eigen::Vector4d;
using Vector4 = Eigen::Vector4d;
using Matrix4 = Eigen::Matrix4d;
using Point3 = Eigen::Vector3d;

class MetricError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Symmetric positive definite 4x4 tensor. m(3,3) carries the squared speed.
class Metric4 {
public:
  Metric4() : m_(Matrix4::Identity()) {}
  explicit Metric4(const Matrix4 &m);

  static Metric4 identity() { return Metric4(); }
  static Metric4 diagonal(double a, double b, double c, double d);
  static Metric4 speed(double c) { return diagonal(1.0, 1.0, 1.0, c * c); }

  const Matrix4 &matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  double det() const { return m_.determinant(); }
  double sqrt_det() const;
  Matrix4 inverse() const { return m_.inverse(); }
  double norm2(const Vector4 &v) const { return v.dot(m_ * v); }

private:
  Matrix4 m_;
};

bool is_spd(const Matrix4 &m);

class MetricField {
public:
  enum class Kind { identity, constant, speed, table, custom };

  using Evaluator = std::function<Metric4(const Point4 &)>;

  MetricField();

  static MetricField identity();
  static MetricField constant(const Metric4 &m);
  // c(t) = c0 + sqrt(exp(-(t - center)^2)) / beta
  static MetricField speed(double c0 = 1.0, double beta = 0.1, double center = 2.0);
  static MetricField speed_function(std::function<double(double)> c);
  // piecewise-linear c(t) through sorted (t, c) nodes, clamped outside
  static MetricField speed_table(std::vector<std::pair<double, double>> nodes);
  static MetricField custom(Evaluator eval);

  Metric4 operator()(const Point4 &p) const { return eval_(p); }
  Kind kind() const { return kind_; }
  bool is_constant() const { return kind_ == Kind::identity || kind_ == Kind::constant; }

private:
  MetricField(Kind kind, Evaluator eval) : kind_(kind), eval_(std::move(eval)) {}
  Kind kind_;
  Evaluator eval_;
};

using Pentatope = std::array<int32_t, 5>;

struct TetFacet {
  std::array<int32_t, 4> v;
  std::array<int32_t, 4> key() const;
};

using FacetKey = std::array<int32_t, 4>;

struct FacetKeyHash {
  size_t operator()(const FacetKey &k) const noexcept {
    uint64_t h = 1469598103934665603ull;
    for (int32_t x : k) {
      h ^= static_cast<uint32_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h ^ (h >> 29));
  }
};

// local facet k omits vertex kFacetOpposite[k]
inline constexpr std::array<std::array<int, 4>, 5> kCanonicalFacets{{
    {0, 1, 2, 3},
    {0, 1, 4, 2},
    {0, 1, 3, 4},
    {1, 2, 3, 4},
    {2, 0, 3, 4},
}};
inline constexpr std::array<int, 5> kFacetOpposite{4, 3, 2, 0, 1};

std::array<TetFacet, 5> canonical_facets(const Pentatope &p);
FacetKey sorted_key(int32_t a, int32_t b, int32_t c, int32_t d);

Vector4 facet_normal(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d);

double hypervolume(const Point4 &p1, const Point4 &p2, const Point4 &p3, const Point4 &p4,
                   const Point4 &p5);
double hypervolume(const std::array<Point4, 5> &p);

std::array<Point4, 5> gather(const std::vector<Point4> &verts, const Pentatope &p);
Point4 centroid(const std::array<Point4, 5> &p);

double metric_length_pointwise(const Point4 &a, const Point4 &b, const Metric4 &m);
double metric_volume_pointwise(const std::array<Point4, 5> &p, const Metric4 &m);
double metric_length_quadrature(const Point4 &a, const Point4 &b, const MetricField &field,
                                int order = 4);
double metric_volume_quadrature(const std::array<Point4, 5> &p, const MetricField &field,
                                int degree = 4);

// regular pentatope with edge a, positively oriented
std::array<Point4, 5> regular_pentatope(double a = 1.0);

} // namespace pentamesh

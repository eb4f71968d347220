#include "pentamesh/geometry.hpp"
#include "pentamesh/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace pentamesh {

bool is_spd(const Matrix4 &m) {
  if (!m.allFinite() || m != m.transpose())
    return false;
  for (int k = 1; k <= 4; ++k)
    if (!(m.topLeftCorner(k, k).determinant() > 0.0))
      return false;
  return true;
}

Metric4::Metric4(const Matrix4 &m) : m_(m) {
  if (!is_spd(m_))
    throw MetricError("metric tensor is not symmetric positive definite");
}

Metric4 Metric4::diagonal(double a, double b, double c, double d) {
  Matrix4 m = Matrix4::Zero();
  m.diagonal() << a, b, c, d;
  return Metric4(m);
}

double Metric4::sqrt_det() const { return std::sqrt(det()); }

MetricField::MetricField() : MetricField(Kind::identity, [](const Point4 &) { return Metric4(); }) {}

MetricField MetricField::identity() { return MetricField(); }

MetricField MetricField::constant(const Metric4 &m) {
  return MetricField(Kind::constant, [m](const Point4 &) { return m; });
}

MetricField MetricField::speed(double c0, double beta, double center) {
  if (!(beta > 0.0))
    throw MetricError("speed field: beta must be positive");
  return MetricField(Kind::speed, [=](const Point4 &p) {
    const double dt = p[3] - center;
    const double c = c0 + std::sqrt(std::exp(-dt * dt)) / beta;
    return Metric4::speed(c);
  });
}

MetricField MetricField::speed_function(std::function<double(double)> c) {
  return MetricField(Kind::speed, [c = std::move(c)](const Point4 &p) { return Metric4::speed(c(p[3])); });
}

MetricField MetricField::speed_table(std::vector<std::pair<double, double>> nodes) {
  if (nodes.empty())
    throw MetricError("speed table is empty");
  std::sort(nodes.begin(), nodes.end());
  for (const auto &[t, c] : nodes)
    if (!(c > 0.0) || !std::isfinite(t))
      throw MetricError("speed table entries must be finite with positive speed");
  return MetricField(Kind::table, [nodes = std::move(nodes)](const Point4 &p) {
    const double t = p[3];
    if (t <= nodes.front().first)
      return Metric4::speed(nodes.front().second);
    if (t >= nodes.back().first)
      return Metric4::speed(nodes.back().second);
    auto hi = std::upper_bound(nodes.begin(), nodes.end(), std::make_pair(t, 0.0),
                               [](const auto &a, const auto &b) { return a.first < b.first; });
    auto lo = hi - 1;
    const double s = (t - lo->first) / (hi->first - lo->first);
    return Metric4::speed(lo->second + s * (hi->second - lo->second));
  });
}

MetricField MetricField::custom(Evaluator eval) { return MetricField(Kind::custom, std::move(eval)); }

FacetKey sorted_key(int32_t a, int32_t b, int32_t c, int32_t d) {
  FacetKey k{a, b, c, d};
  std::sort(k.begin(), k.end());
  return k;
}

std::array<int32_t, 4> TetFacet::key() const { return sorted_key(v[0], v[1], v[2], v[3]); }

std::array<TetFacet, 5> canonical_facets(const Pentatope &p) {
  std::array<TetFacet, 5> out;
  for (int k = 0; k < 5; ++k)
    for (int j = 0; j < 4; ++j)
      out[k].v[j] = p[kCanonicalFacets[k][j]];
  return out;
}

Vector4 facet_normal(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d) {
  Eigen::Matrix<double, 3, 4> r;
  r.row(0) = (b - a).transpose();
  r.row(1) = (c - a).transpose();
  r.row(2) = (d - a).transpose();
  Vector4 n;
  for (int j = 0; j < 4; ++j) {
    Eigen::Matrix3d minor;
    for (int col = 0, mc = 0; col < 4; ++col) {
      if (col == j)
        continue;
      minor.col(mc++) = r.col(col);
    }
    n[j] = ((j % 2) ? -1.0 : 1.0) * minor.determinant();
  }
  return n;
}

double hypervolume(const Point4 &p1, const Point4 &p2, const Point4 &p3, const Point4 &p4,
                   const Point4 &p5) {
  Matrix4 m;
  m.col(0) = p2 - p1;
  m.col(1) = p3 - p1;
  m.col(2) = p4 - p1;
  m.col(3) = p5 - p1;
  return m.determinant() / 24.0;
}

double hypervolume(const std::array<Point4, 5> &p) { return hypervolume(p[0], p[1], p[2], p[3], p[4]); }

std::array<Point4, 5> gather(const std::vector<Point4> &verts, const Pentatope &p) {
  return {verts[p[0]], verts[p[1]], verts[p[2]], verts[p[3]], verts[p[4]]};
}

Point4 centroid(const std::array<Point4, 5> &p) { return (p[0] + p[1] + p[2] + p[3] + p[4]) / 5.0; }

double metric_length_pointwise(const Point4 &a, const Point4 &b, const Metric4 &m) {
  const Vector4 d = b - a;
  return std::sqrt(std::max(0.0, m.norm2(d)));
}

double metric_volume_pointwise(const std::array<Point4, 5> &p, const Metric4 &m) {
  return std::abs(hypervolume(p)) * m.sqrt_det();
}

double metric_length_quadrature(const Point4 &a, const Point4 &b, const MetricField &field, int order) {
  const auto rule = quadrature::gauss_legendre(order);
  const Vector4 d = b - a;
  double sum = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Metric4 m = field(a + rule.nodes[i] * d);
    sum += rule.weights[i] * std::sqrt(std::max(0.0, m.norm2(d)));
  }
  return sum;
}

double metric_volume_quadrature(const std::array<Point4, 5> &p, const MetricField &field, int degree) {
  const int s = std::max(0, (degree) / 2);
  const auto rule = quadrature::grundmann_moeller(4, s);
  double sum = 0.0;
  for (size_t i = 0; i < rule.weights.size(); ++i) {
    Point4 x = Point4::Zero();
    for (int k = 0; k < 5; ++k)
      x += rule.bary[i][k] * p[k];
    sum += rule.weights[i] * field(x).sqrt_det();
  }
  return std::abs(hypervolume(p)) * sum;
}

std::array<Point4, 5> regular_pentatope(double a) {
  const double s3 = std::sqrt(3.0), s6 = std::sqrt(6.0), s10 = std::sqrt(10.0);
  std::array<Point4, 5> r{
      Point4(-a * s3 / 2.0, 0.0, 0.0, 0.0),
      Point4(0.0, -a / 2.0, 0.0, 0.0),
      Point4(0.0, a / 2.0, 0.0, 0.0),
      Point4(-a * s3 / 6.0, 0.0, a * s6 / 3.0, 0.0),
      Point4(-a * s3 / 6.0, 0.0, a * s6 / 12.0, a * s10 / 4.0),
  };
  if (hypervolume(r) < 0.0)
    std::swap(r[0], r[1]);
  return r;
}

} // namespace pentamesh

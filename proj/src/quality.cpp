#include "pentamesh/quality.hpp"

#include <cmath>
#include <stdexcept>

namespace pentamesh {

namespace {

const double k5_34 = std::pow(5.0, 0.75);

double sq(double x) { return x * x; }

} // namespace

EdgeSquares edge_squares(const std::array<Point4, 5> &p) {
  EdgeSquares l2;
  for (int i = 0; i < 10; ++i)
    l2[i] = (p[kEdgeOrder[i][0]] - p[kEdgeOrder[i][1]]).squaredNorm();
  return l2;
}

double theta(const EdgeSquares &l) {
  const double l1 = l[0], l2 = l[1], l3 = l[2], l4 = l[3], l5 = l[4];
  const double l6 = l[5], l7 = l[6], l8 = l[7], l9 = l[8], l10 = l[9];
  return 600.0 * sq(l1 - l2) + 900.0 * sq(l5) + 100.0 * sq(-2.0 * (l1 + l2) + l5) +
         75.0 * sq(l1 - l2 - 3.0 * l6 + 3.0 * l8) + 25.0 * sq(l1 + l2 - 3.0 * l3 + l5 - 3.0 * (l6 + l8)) +
         25.0 * sq(l1 + l2 - 6.0 * l3 - 2.0 * l5 + 3.0 * (l6 + l8)) +
         45.0 * sq(l1 - l2 + l6 - 4.0 * l7 - l8 + 4.0 * l9) +
         15.0 * sq(l1 + l2 + 2.0 * l3 - 8.0 * l4 - 2.0 * l5 - l6 + 4.0 * l7 - l8 + 4.0 * l9) +
         30.0 * sq(-l1 - l2 + l3 + 2.0 * l4 - l5 + l6 + 2.0 * l7 + l8 + 2.0 * l9 - 6.0 * l10) +
         9.0 * sq(l1 + l2 + l3 - 4.0 * l4 + l5 + l6 - 4.0 * l7 + l8 - 4.0 * (l9 + l10));
}

double eta_from_measures(int which, double v, const EdgeSquares &l2) {
  double sum = 0.0;
  for (double x : l2)
    sum += x;
  if (!(sum > 0.0))
    return 0.0;
  v = std::abs(v);
  switch (which) {
  case 1:
    return k5_34 * std::sqrt(384.0 * v) / sum;
  case 2: {
    const double t = theta(l2);
    return t > 0.0 ? 6.0 * sum / std::sqrt(t) : 0.0;
  }
  case 3: {
    const double t = theta(l2);
    return t > 0.0 ? 6.0 * k5_34 * std::sqrt(384.0 * v / t) : 0.0;
  }
  default:
    throw std::invalid_argument("quality heuristic must be 1, 2 or 3");
  }
}

double eta1(const std::array<Point4, 5> &p) { return eta_from_measures(1, hypervolume(p), edge_squares(p)); }
double eta2(const std::array<Point4, 5> &p) { return eta_from_measures(2, hypervolume(p), edge_squares(p)); }
double eta3(const std::array<Point4, 5> &p) { return eta_from_measures(3, hypervolume(p), edge_squares(p)); }

QualityVector quality_vector(const std::array<Point4, 5> &p) {
  const double v = hypervolume(p);
  const auto l2 = edge_squares(p);
  return {eta_from_measures(1, v, l2), eta_from_measures(2, v, l2), eta_from_measures(3, v, l2)};
}

double quality_metric(const std::array<Point4, 5> &p, const MetricField &field, QualityMode mode, int which,
                      int order) {
  EdgeSquares l2;
  double v;
  if (mode == QualityMode::pointwise) {
    const Metric4 m = field(centroid(p));
    for (int i = 0; i < 10; ++i)
      l2[i] = m.norm2(p[kEdgeOrder[i][1]] - p[kEdgeOrder[i][0]]);
    v = metric_volume_pointwise(p, m);
  } else {
    for (int i = 0; i < 10; ++i)
      l2[i] = sq(metric_length_quadrature(p[kEdgeOrder[i][0]], p[kEdgeOrder[i][1]], field, order));
    v = metric_volume_quadrature(p, field, order);
  }
  return eta_from_measures(which, v, l2);
}

double element_quality(const std::array<Point4, 5> &p, const MetricField &field, int which) {
  if (field.kind() == MetricField::Kind::identity)
    return eta_from_measures(which, hypervolume(p), edge_squares(p));
  return quality_metric(p, field, QualityMode::pointwise, which);
}

} // namespace pentamesh

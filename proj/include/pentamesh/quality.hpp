#pragma once

#include "pentamesh/geometry.hpp"

#include <array>

namespace pentamesh {

// squared edge lengths in order d12 d13 d14 d15 d23 d24 d25 d34 d35 d45
using EdgeSquares = std::array<double, 10>;

inline constexpr std::array<std::array<int, 2>, 10> kEdgeOrder{{
    {0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4},
}};

EdgeSquares edge_squares(const std::array<Point4, 5> &p);

double theta(const EdgeSquares &l2);

double eta1(const std::array<Point4, 5> &p);
double eta2(const std::array<Point4, 5> &p);
double eta3(const std::array<Point4, 5> &p);

// the same heuristics from an unsigned hypervolume and squared edge lengths
double eta_from_measures(int which, double v, const EdgeSquares &l2);

struct QualityVector {
  double eta1 = 0.0, eta2 = 0.0, eta3 = 0.0;
};

QualityVector quality_vector(const std::array<Point4, 5> &p);

enum class QualityMode { pointwise, quadrature };

double quality_metric(const std::array<Point4, 5> &p, const MetricField &field, QualityMode mode, int which,
                      int order = 4);

// quality under `field`, choosing the Euclidean formula when the field is the identity
double element_quality(const std::array<Point4, 5> &p, const MetricField &field, int which);

} // namespace pentamesh

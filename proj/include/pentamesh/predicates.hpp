#pragma once

#include "pentamesh/geometry.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <vector>

namespace pentamesh {

enum class Exactness : uint8_t { float_filter, extended, exact };

struct PredicateResult {
  int sign = 0;
  double value = 0.0;
  Exactness exactness = Exactness::float_filter;
};

// det of rows (a-e),(b-e),(c-e),(d-e); equals 24 * hypervolume(a..e)
PredicateResult orientation4(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d,
                             const Point4 &e);
PredicateResult orientation4(const std::array<Point4, 5> &p);
double orientation4_float(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d,
                          const Point4 &e);

PredicateResult orientation_m(const Metric4 &m, const std::array<Point4, 5> &p);

// positive: f strictly inside the circumhypersphere of a positively oriented a..e
PredicateResult inhypersphere4(const std::array<Point4, 5> &p, const Point4 &f);
PredicateResult inhypersphere_m(const Metric4 &m, const std::array<Point4, 5> &p, const Point4 &f);

mpq_class hypervolume_exact(const std::array<Point4, 5> &p);

// d-dimensional forms; d == 4 dispatches to the fixed-size kernels above
PredicateResult orientation_m_d(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts);
PredicateResult inhypersphere_m_d(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts);

enum class DecompositionKind { cholesky, sqrt };

struct MetricDecomposition {
  DecompositionKind kind = DecompositionKind::cholesky;
  Eigen::MatrixXd G; // M ~ G^T G
  double reconstruction_error = 0.0;
};

MetricDecomposition decompose_metric(const Eigen::MatrixXd &m, DecompositionKind kind);

std::vector<Eigen::VectorXd> scale_points_standard(const MetricDecomposition &g,
                                                   const std::vector<Eigen::VectorXd> &pts);
std::array<Point4, 5> scale_points_standard(const MetricDecomposition &g, const std::array<Point4, 5> &pts);
Point4 scale_point_standard(const MetricDecomposition &g, const Point4 &p);

// float-mode lifted expansions used by the comparison study; both share the cofactor code
double inhypersphere_standard_float(const Eigen::MatrixXd &g, const std::vector<Eigen::VectorXd> &pts);
double inhypersphere_alternative_float(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts);

// exact rational matrices, row major
struct RationalMatrix {
  int rows = 0, cols = 0;
  std::vector<mpq_class> a;
  RationalMatrix() = default;
  RationalMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, mpq_class(0)) {}
  mpq_class &operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const mpq_class &operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
};
using RationalVector = std::vector<mpq_class>;

mpq_class det_exact(RationalMatrix m);
RationalMatrix transpose_times(const RationalMatrix &g); // G^T G
// upper triangular G with M = G^T G; throws if a pivot is not a rational square
RationalMatrix rational_cholesky(const RationalMatrix &m);
mpq_class inhypersphere_standard_exact(const RationalMatrix &g, const std::vector<RationalVector> &pts);
mpq_class inhypersphere_alternative_exact(const RationalMatrix &m, const mpq_class &sqrt_det,
                                          const std::vector<RationalVector> &pts);

} // namespace pentamesh

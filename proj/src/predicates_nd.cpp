#include "pentamesh/predicates.hpp"

#include "kernels.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace pentamesh {

namespace {

int sgn_z(const mpz_class &v) { return sgn(v); }

void check_square(const Eigen::MatrixXd &m, int d) {
  if (m.rows() != d || m.cols() != d)
    throw std::invalid_argument("metric dimension does not match the points");
}

Metric4 metric4(const Eigen::MatrixXd &m) { return Metric4(Matrix4(m)); }

std::array<Point4, 5> first5(const std::vector<Eigen::VectorXd> &pts) {
  return {Point4(pts[0]), Point4(pts[1]), Point4(pts[2]), Point4(pts[3]), Point4(pts[4])};
}

std::vector<std::vector<mpz_class>> scaled_rows(const std::vector<std::vector<double>> &rows) {
  std::vector<double> flat;
  for (const auto &r : rows)
    flat.insert(flat.end(), r.begin(), r.end());
  std::vector<mpz_class> z;
  long ex = 0;
  detail::to_scaled_integers(flat.data(), flat.size(), z, ex);
  std::vector<std::vector<mpz_class>> out(rows.size());
  size_t k = 0;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j)
      out[i].push_back(z[k++]);
  return out;
}

// (d+1) x (d+1) cofactor expansion on the last column; minors by LU
double lifted_expansion(const Eigen::MatrixXd &diffs, const Eigen::VectorXd &q) {
  const int n = static_cast<int>(diffs.rows());
  const int d = static_cast<int>(diffs.cols());
  double r = 0.0;
  Eigen::MatrixXd minor(d, d);
  for (int i = 0; i < n; ++i) {
    for (int k = 0, mk = 0; k < n; ++k)
      if (k != i)
        minor.row(mk++) = diffs.row(k);
    const double term = q[i] * minor.partialPivLu().determinant();
    r += ((i + d) % 2 == 0) ? term : -term;
  }
  return r;
}

} // namespace

PredicateResult orientation_m_d(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts) {
  const int d = static_cast<int>(m.rows());
  if (d < 2 || static_cast<int>(pts.size()) != d + 1)
    throw std::invalid_argument("orientation_m_d needs d+1 points in d >= 2 dimensions");
  check_square(m, d);
  for (const auto &p : pts)
    if (p.size() != d)
      throw std::invalid_argument("point dimension mismatch");
  if (d == 4)
    return orientation_m(metric4(m), first5(pts));
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw MetricError("metric is not positive definite");
  Eigen::MatrixXd a(d, d);
  std::vector<std::vector<double>> raw(pts.size(), std::vector<double>(d));
  for (int i = 0; i < d + 1; ++i)
    for (int j = 0; j < d; ++j)
      raw[i][j] = pts[i][j];
  for (int i = 0; i < d; ++i)
    a.row(i) = (pts[i] - pts[d]).transpose();
  PredicateResult r;
  r.value = std::sqrt(m.determinant()) * a.partialPivLu().determinant();
  auto z = scaled_rows(raw);
  std::vector<std::vector<mpz_class>> rows(d, std::vector<mpz_class>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      rows[i][j] = z[i][j] - z[d][j];
  r.sign = sgn_z(detail::bareiss_det(rows));
  r.exactness = Exactness::exact;
  return r;
}

PredicateResult inhypersphere_m_d(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts) {
  const int d = static_cast<int>(m.rows());
  if (d < 2 || static_cast<int>(pts.size()) != d + 2)
    throw std::invalid_argument("inhypersphere_m_d needs d+2 points in d >= 2 dimensions");
  check_square(m, d);
  for (const auto &p : pts)
    if (p.size() != d)
      throw std::invalid_argument("point dimension mismatch");
  if (d == 4)
    return inhypersphere_m(metric4(m), first5(pts), Point4(pts[5]));
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success)
    throw MetricError("metric is not positive definite");
  PredicateResult r;
  r.value = inhypersphere_alternative_float(m, pts);

  std::vector<std::vector<double>> raw(d + 2, std::vector<double>(d));
  for (int i = 0; i < d + 2; ++i)
    for (int j = 0; j < d; ++j)
      raw[i][j] = pts[i][j];
  auto z = scaled_rows(raw);
  std::vector<std::vector<double>> mraw(d, std::vector<double>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      mraw[i][j] = m(i, j);
  auto mz = scaled_rows(mraw);
  std::vector<std::vector<mpz_class>> lifted(d + 1, std::vector<mpz_class>(d + 1));
  for (int i = 0; i <= d; ++i) {
    std::vector<mpz_class> diff(d);
    for (int j = 0; j < d; ++j) {
      diff[j] = z[i][j] - z[d + 1][j];
      lifted[i][j] = diff[j];
    }
    mpz_class q = 0;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        q += mz[j][k] * diff[j] * diff[k];
    lifted[i][d] = q;
  }
  r.sign = sgn_z(detail::bareiss_det(lifted));
  r.exactness = Exactness::exact;
  return r;
}

MetricDecomposition decompose_metric(const Eigen::MatrixXd &m, DecompositionKind kind) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("metric must be square");
  MetricDecomposition out;
  out.kind = kind;
  if (kind == DecompositionKind::cholesky) {
    Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
      throw MetricError("cholesky failed: metric is not positive definite");
    out.G = llt.matrixU();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.info() != Eigen::Success || es.eigenvalues().minCoeff() <= 0.0)
      throw MetricError("square root failed: metric is not positive definite");
    out.G = es.operatorSqrt();
  }
  out.reconstruction_error = (m - out.G.transpose() * out.G).norm();
  return out;
}

std::vector<Eigen::VectorXd> scale_points_standard(const MetricDecomposition &g,
                                                   const std::vector<Eigen::VectorXd> &pts) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(pts.size());
  for (const auto &p : pts)
    out.push_back(g.G * p);
  return out;
}

Point4 scale_point_standard(const MetricDecomposition &g, const Point4 &p) {
  if (g.G.rows() != 4 || g.G.cols() != 4)
    throw std::invalid_argument("decomposition is not 4x4");
  return Matrix4(g.G) * p;
}

std::array<Point4, 5> scale_points_standard(const MetricDecomposition &g, const std::array<Point4, 5> &pts) {
  std::array<Point4, 5> out;
  for (int i = 0; i < 5; ++i)
    out[i] = scale_point_standard(g, pts[i]);
  return out;
}

double inhypersphere_standard_float(const Eigen::MatrixXd &g, const std::vector<Eigen::VectorXd> &pts) {
  const int d = static_cast<int>(g.rows());
  const Eigen::VectorXd f = g * pts[d + 1];
  Eigen::MatrixXd diffs(d + 1, d);
  Eigen::VectorXd q(d + 1);
  for (int i = 0; i <= d; ++i) {
    const Eigen::VectorXd di = g * pts[i] - f;
    diffs.row(i) = di.transpose();
    q[i] = di.squaredNorm();
  }
  return lifted_expansion(diffs, q);
}

double inhypersphere_alternative_float(const Eigen::MatrixXd &m, const std::vector<Eigen::VectorXd> &pts) {
  const int d = static_cast<int>(m.rows());
  const Eigen::VectorXd &f = pts[d + 1];
  Eigen::MatrixXd diffs(d + 1, d);
  Eigen::VectorXd q(d + 1);
  for (int i = 0; i <= d; ++i) {
    const Eigen::VectorXd di = pts[i] - f;
    diffs.row(i) = di.transpose();
    q[i] = di.dot(m * di);
  }
  return std::sqrt(m.partialPivLu().determinant()) * lifted_expansion(diffs, q);
}

mpq_class det_exact(RationalMatrix m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("det_exact: matrix not square");
  const int n = m.rows;
  mpq_class det = 1;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    while (piv < n && m(piv, k) == 0)
      ++piv;
    if (piv == n)
      return 0;
    if (piv != k) {
      for (int j = 0; j < n; ++j)
        std::swap(m(k, j), m(piv, j));
      det = -det;
    }
    det *= m(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (m(i, k) == 0)
        continue;
      mpq_class f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j)
        m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

RationalMatrix transpose_times(const RationalMatrix &g) {
  RationalMatrix out(g.cols, g.cols);
  for (int i = 0; i < g.cols; ++i)
    for (int j = 0; j < g.cols; ++j) {
      mpq_class s = 0;
      for (int k = 0; k < g.rows; ++k)
        s += g(k, i) * g(k, j);
      out(i, j) = s;
    }
  return out;
}

namespace {

mpq_class rational_sqrt(const mpq_class &x) {
  if (x <= 0)
    throw MetricError("rational cholesky: non-positive pivot");
  const mpz_class &num = x.get_num();
  const mpz_class &den = x.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    throw MetricError("rational cholesky: pivot is not a rational square");
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

mpq_class lifted_det_exact(const std::vector<RationalVector> &diffs, const std::vector<mpq_class> &q) {
  const int n = static_cast<int>(diffs.size());
  RationalMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n - 1; ++j)
      a(i, j) = diffs[i][j];
    a(i, n - 1) = q[i];
  }
  return det_exact(std::move(a));
}

} // namespace

RationalMatrix rational_cholesky(const RationalMatrix &m) {
  if (m.rows != m.cols)
    throw std::invalid_argument("rational_cholesky: matrix not square");
  const int n = m.rows;
  RationalMatrix g(n, n);
  for (int k = 0; k < n; ++k) {
    mpq_class s = m(k, k);
    for (int i = 0; i < k; ++i)
      s -= g(i, k) * g(i, k);
    g(k, k) = rational_sqrt(s);
    for (int j = k + 1; j < n; ++j) {
      mpq_class t = m(k, j);
      for (int i = 0; i < k; ++i)
        t -= g(i, k) * g(i, j);
      g(k, j) = t / g(k, k);
    }
  }
  return g;
}

mpq_class inhypersphere_standard_exact(const RationalMatrix &g, const std::vector<RationalVector> &pts) {
  const int d = g.rows;
  auto apply = [&](const RationalVector &p) {
    RationalVector out(d, mpq_class(0));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        out[i] += g(i, j) * p[j];
    return out;
  };
  const RationalVector f = apply(pts[d + 1]);
  std::vector<RationalVector> diffs(d + 1);
  std::vector<mpq_class> q(d + 1);
  for (int i = 0; i <= d; ++i) {
    RationalVector gp = apply(pts[i]);
    mpq_class s = 0;
    for (int j = 0; j < d; ++j) {
      gp[j] -= f[j];
      s += gp[j] * gp[j];
    }
    diffs[i] = std::move(gp);
    q[i] = s;
  }
  return lifted_det_exact(diffs, q);
}

mpq_class inhypersphere_alternative_exact(const RationalMatrix &m, const mpq_class &sqrt_det,
                                          const std::vector<RationalVector> &pts) {
  const int d = m.rows;
  const RationalVector &f = pts[d + 1];
  std::vector<RationalVector> diffs(d + 1);
  std::vector<mpq_class> q(d + 1);
  for (int i = 0; i <= d; ++i) {
    RationalVector di(d);
    for (int j = 0; j < d; ++j)
      di[j] = pts[i][j] - f[j];
    mpq_class s = 0;
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        s += m(j, k) * di[j] * di[k];
    diffs[i] = std::move(di);
    q[i] = s;
  }
  return sqrt_det * lifted_det_exact(diffs, q);
}

} // namespace pentamesh

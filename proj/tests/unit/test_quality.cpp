#include "catch_amalgamated.hpp"

#include "pentamesh/quality.hpp"

#include <cmath>
#include <random>

using namespace pentamesh;
using Catch::Approx;

namespace {

std::array<Point4, 5> corner_simplex() {
  return {Point4(0, 0, 0, 0), Point4(1, 0, 0, 0), Point4(0, 1, 0, 0), Point4(0, 0, 1, 0), Point4(0, 0, 0, 1)};
}

std::array<Point4, 5> random_pentatope(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<Point4, 5> p;
  for (auto &x : p)
    x = Point4(u(rng), u(rng), u(rng), u(rng));
  return p;
}

// A = (T R^-1)^T (T R^-1) against the regular pentatope of unit edge
Matrix4 shape_matrix(const std::array<Point4, 5> &p) {
  const auto r = regular_pentatope(1.0);
  Matrix4 R, T;
  for (int i = 0; i < 4; ++i) {
    R.col(i) = r[i + 1] - r[0];
    T.col(i) = p[i + 1] - p[0];
  }
  const Matrix4 X = T * R.inverse();
  return X.transpose() * X;
}

Matrix4 random_rotation(std::mt19937_64 &rng) {
  std::normal_distribution<double> g;
  Matrix4 a;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      a(i, j) = g(rng);
  Eigen::HouseholderQR<Matrix4> qr(a);
  return qr.householderQ();
}

} // namespace

TEST_CASE("theta on equilateral edges", "[quality]") {
  for (double a : {0.5, 1.0, 2.0}) {
    EdgeSquares l2;
    l2.fill(a * a);
    CHECK(theta(l2) == Approx(3600.0 * std::pow(a, 4)));
  }
  EdgeSquares z{};
  CHECK(theta(z) == 0.0);
}

TEST_CASE("theta matches the matrix route", "[quality]") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_pentatope(rng);
    const double frob = shape_matrix(p).norm();
    CHECK(std::sqrt(theta(edge_squares(p))) / 30.0 == Approx(frob).epsilon(1e-9));
  }
}

TEST_CASE("heuristics match the matrix route", "[quality]") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    auto p = random_pentatope(rng);
    const Matrix4 A = shape_matrix(p);
    const double tr = A.trace();
    CHECK(eta1(p) == Approx(4.0 * std::pow(std::abs(A.determinant()), 0.25) / tr).epsilon(1e-9));
    CHECK(eta2(p) == Approx(tr / (2.0 * A.norm())).epsilon(1e-9));
  }
}

TEST_CASE("regular and corner pentatopes", "[quality]") {
  for (double a : {0.1, 1.0, 7.0}) {
    const auto r = regular_pentatope(a);
    CHECK(eta1(r) == Approx(1.0).epsilon(1e-12));
    CHECK(eta2(r) == Approx(1.0).epsilon(1e-12));
    CHECK(eta3(r) == Approx(1.0).epsilon(1e-12));
  }
  const auto c = corner_simplex();
  CHECK(eta1(c) == Approx(std::pow(5.0, 0.75) / 4.0).epsilon(1e-12));
  const Matrix4 A = shape_matrix(c);
  CHECK(eta2(c) == Approx(A.trace() / (2.0 * A.norm())).epsilon(1e-9));
}

TEST_CASE("degenerate pentatopes score zero", "[quality]") {
  auto flat = corner_simplex();
  flat[4] = Point4(0.2, 0.3, 0.1, 0.0);
  CHECK(eta1(flat) == 0.0);
  CHECK(eta3(flat) == 0.0);

  std::array<Point4, 5> point;
  point.fill(Point4(1, 2, 3, 4));
  const auto q = quality_vector(point);
  CHECK(q.eta1 == 0.0);
  CHECK(q.eta2 == 0.0);
  CHECK(q.eta3 == 0.0);

  double prev = 1.0;
  for (double h : {1e-1, 1e-2, 1e-3, 1e-4}) {
    auto p = corner_simplex();
    p[4] = Point4(0.2, 0.2, 0.2, h);
    CHECK(eta1(p) < prev);
    prev = eta1(p);
  }
  CHECK(prev < 1e-1);
}

TEST_CASE("bounds and the product identity", "[quality]") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto p = random_pentatope(rng);
    const auto q = quality_vector(p);
    CHECK((q.eta1 >= 0.0 && q.eta1 <= 1.0 + 1e-12));
    CHECK((q.eta2 >= 0.0 && q.eta2 <= 1.0 + 1e-12));
    CHECK((q.eta3 >= 0.0 && q.eta3 <= 1.0 + 1e-12));
    CHECK(q.eta2 >= q.eta3 - 1e-15);
    CHECK(std::abs(q.eta3 - q.eta1 * q.eta2) <= 1e-12 * std::max(q.eta3, 1e-300));
  }
}

TEST_CASE("invariance under similarity maps", "[quality]") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-5.0, 5.0), s(0.01, 100.0);
  for (int i = 0; i < 200; ++i) {
    const auto p = random_pentatope(rng);
    const Matrix4 Q = random_rotation(rng);
    const Point4 shift(u(rng), u(rng), u(rng), u(rng));
    const double k = s(rng);
    std::array<Point4, 5> img;
    for (int j = 0; j < 5; ++j)
      img[j] = k * (Q * p[j]) + shift;
    const auto a = quality_vector(p), b = quality_vector(img);
    CHECK(b.eta1 == Approx(a.eta1).epsilon(1e-9));
    CHECK(b.eta2 == Approx(a.eta2).epsilon(1e-9));
    CHECK(b.eta3 == Approx(a.eta3).epsilon(1e-9));
  }
}

TEST_CASE("metric quality pulls back to the stretched image", "[quality]") {
  const double c = 4.0;
  const MetricField field = MetricField::constant(Metric4::speed(c));
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_pentatope(rng);
    auto img = p;
    for (auto &x : img)
      x[3] *= c;
    for (int which = 1; which <= 3; ++which) {
      const double pw = quality_metric(p, field, QualityMode::pointwise, which);
      const double qd = quality_metric(p, field, QualityMode::quadrature, which);
      const double eu = eta_from_measures(which, hypervolume(img), edge_squares(img));
      CHECK(pw == Approx(eu).epsilon(1e-12));
      CHECK(qd == Approx(pw).epsilon(1e-12));
      CHECK(quality_metric(p, MetricField::identity(), QualityMode::pointwise, which) ==
            Approx(eta_from_measures(which, hypervolume(p), edge_squares(p))).epsilon(1e-14));
    }
  }
  CHECK_THROWS(eta_from_measures(4, 1.0, EdgeSquares{1, 1, 1, 1, 1, 1, 1, 1, 1, 1}));
}

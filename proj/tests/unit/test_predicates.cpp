#include "catch_amalgamated.hpp"

#include "pentamesh/predicates.hpp"

#include <random>

using namespace pentamesh;
using Catch::Approx;

namespace {

const Point4 e1(1, 0, 0, 0), e2(0, 1, 0, 0), e3(0, 0, 1, 0), e4(0, 0, 0, 1);

Metric4 random_spd(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix4 s;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      s(i, j) = u(rng);
  return Metric4(s.transpose() * s + 0.1 * Matrix4::Identity());
}

std::vector<Eigen::VectorXd> to_xd(const std::array<Point4, 5> &p, const Point4 &f) {
  std::vector<Eigen::VectorXd> out;
  for (const auto &x : p)
    out.emplace_back(x);
  out.emplace_back(f);
  return out;
}

} // namespace

TEST_CASE("orientation4 basic signs", "[predicates]") {
  const auto r = orientation4(e1, e2, e3, e4, Point4::Zero());
  CHECK(r.sign == 1);
  CHECK(r.value == Approx(1.0));
  CHECK(orientation4(e2, e1, e3, e4, Point4::Zero()).sign == -1);

  // all in t = 0
  const auto flat = orientation4(Point4(0, 0, 0, 0), Point4(1, 0, 0, 0), Point4(0, 1, 0, 0), Point4(0, 0, 1, 0),
                                 Point4(0.3, 0.2, 0.1, 0));
  CHECK(flat.sign == 0);
}

TEST_CASE("orientation4 resolves near-degenerate inputs exactly", "[predicates]") {
  // the fifth point sits on the hyperplane x + y + z + t = 1 up to one ulp
  const Point4 a(1, 0, 0, 0), b(0, 1, 0, 0), c(0, 0, 1, 0), d(0, 0, 0, 1);
  const Point4 on(0.25, 0.25, 0.25, 0.25);
  CHECK(orientation4(a, b, c, d, on).sign == 0);
  const Point4 above(0.25, 0.25, 0.25, std::nextafter(0.25, 1.0));
  const Point4 below(0.25, 0.25, 0.25, std::nextafter(0.25, 0.0));
  const int sa = orientation4(a, b, c, d, above).sign;
  const int sb = orientation4(a, b, c, d, below).sign;
  CHECK(sa != 0);
  CHECK(sb == -sa);
  CHECK(orientation4(a, b, c, d, above).exactness != Exactness::float_filter);
}

TEST_CASE("orientation under a metric", "[predicates]") {
  const std::array<Point4, 5> corner{Point4::Zero(), e1, e2, e3, e4};
  const auto r = orientation_m(Metric4::diagonal(1, 1, 1, 4), {e1, e2, e3, e4, Point4::Zero()});
  CHECK(r.sign == 1);
  CHECK(r.value == Approx(2.0));
  CHECK(orientation_m(Metric4::identity(), corner).sign == orientation4(corner).sign);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  int mismatches = 0;
  for (int i = 0; i < 1000; ++i) {
    std::array<Point4, 5> p;
    for (auto &x : p)
      x = Point4(u(rng), u(rng), u(rng), u(rng));
    if (orientation_m(random_spd(rng), p).sign != orientation4(p).sign)
      ++mismatches;
  }
  CHECK(mismatches == 0);
}

TEST_CASE("inhypersphere4", "[predicates]") {
  // positively oriented five points on the unit sphere
  std::array<Point4, 5> p{Point4(1, 0, 0, 0), Point4(-1, 0, 0, 0), e2, e3, e4};
  if (orientation4(p).sign < 0)
    std::swap(p[0], p[1]);
  CHECK(inhypersphere4(p, Point4::Zero()).sign == 1);
  CHECK(inhypersphere4(p, p[0]).sign == 0);
  CHECK(inhypersphere4(p, Point4(5, 5, 5, 5)).sign == -1);
  CHECK(inhypersphere4(p, Point4(0, 0, 0, -1)).sign == 0);
}

TEST_CASE("inhypersphere under a metric", "[predicates]") {
  std::array<Point4, 5> p{Point4(1, 0, 0, 0), Point4(-1, 0, 0, 0), e2, e3, Point4(0, 0, 0, 0.5)};
  if (orientation4(p).sign < 0)
    std::swap(p[0], p[1]);
  const Metric4 m = Metric4::diagonal(1, 1, 1, 4);
  CHECK(inhypersphere_m(m, p, Point4::Zero()).sign == 1);
  CHECK(inhypersphere_m(m, p, Point4(0, 0, 0, -0.5)).sign == 0);
  CHECK(inhypersphere_m(m, p, Point4(0, 0, 0, 0.6)).sign == -1);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Point4 f(u(rng), u(rng), u(rng), u(rng));
    CHECK(inhypersphere_m(Metric4::identity(), p, f).sign == inhypersphere4(p, f).sign);
  }
}

TEST_CASE("metric decompositions", "[predicates]") {
  const auto id = decompose_metric(Eigen::MatrixXd::Identity(4, 4), DecompositionKind::cholesky);
  CHECK(id.G.isApprox(Eigen::MatrixXd::Identity(4, 4)));
  CHECK(id.reconstruction_error == 0.0);

  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(4, 4);
  m(0, 0) = 4.0;
  for (auto kind : {DecompositionKind::cholesky, DecompositionKind::sqrt}) {
    const auto g = decompose_metric(m, kind);
    Eigen::MatrixXd want = Eigen::MatrixXd::Identity(4, 4);
    want(0, 0) = 2.0;
    CHECK((g.G - want).norm() < 1e-14);
  }

  Eigen::MatrixXd scale = Eigen::MatrixXd::Identity(4, 4);
  scale(3, 3) = 4.0;
  const auto g = decompose_metric(scale, DecompositionKind::cholesky);
  CHECK((scale_point_standard(g, Point4(0, 0, 0, 1)) - Point4(0, 0, 0, 2)).norm() == 0.0);
  CHECK((scale_point_standard(id, Point4(1, 2, 3, 4)) - Point4(1, 2, 3, 4)).norm() == 0.0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(3, 3);
  bad(1, 1) = -2.0;
  CHECK_THROWS(decompose_metric(bad, DecompositionKind::cholesky));
}

TEST_CASE("d-dimensional predicates", "[predicates]") {
  std::vector<Eigen::VectorXd> tri{Eigen::Vector2d(0, 0), Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1),
                                   Eigen::Vector2d(1.0 / 3, 1.0 / 3)};
  CHECK(inhypersphere_m_d(Eigen::MatrixXd::Identity(2, 2), tri).sign == 1);

  const double s = std::sqrt(2.0);
  std::vector<Eigen::VectorXd> tet{Eigen::Vector3d(1, 0, -1 / s), Eigen::Vector3d(-1, 0, -1 / s),
                                   Eigen::Vector3d(0, 1, 1 / s), Eigen::Vector3d(0, -1, 1 / s)};
  if (orientation_m_d(Eigen::MatrixXd::Identity(3, 3), tet).sign < 0)
    std::swap(tet[0], tet[1]);
  tet.push_back(Eigen::Vector3d(0, 0, 0));
  CHECK(inhypersphere_m_d(Eigen::MatrixXd::Identity(3, 3), tet).sign == 1);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Metric4 m = random_spd(rng);
    std::array<Point4, 5> p;
    for (auto &x : p)
      x = Point4(u(rng), u(rng), u(rng), u(rng));
    const Point4 f(u(rng), u(rng), u(rng), u(rng));
    const auto pts = to_xd(p, f);
    const std::vector<Eigen::VectorXd> five(pts.begin(), pts.begin() + 5);
    const auto o4 = orientation_m(m, p);
    const auto od = orientation_m_d(m.matrix(), five);
    CHECK(od.sign == o4.sign);
    CHECK(od.value == o4.value);
    if (o4.sign > 0) {
      const auto i4 = inhypersphere_m(m, p, f);
      const auto id = inhypersphere_m_d(m.matrix(), pts);
      CHECK(id.sign == i4.sign);
      CHECK(id.value == i4.value);
    }
  }
}

TEST_CASE("exact rational helpers", "[predicates]") {
  RationalMatrix m(2, 2);
  m(0, 0) = 4;
  m(0, 1) = 2;
  m(1, 0) = 2;
  m(1, 1) = 5;
  CHECK(det_exact(m) == 16);
  const RationalMatrix g = rational_cholesky(m);
  const RationalMatrix back = transpose_times(g);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      CHECK(back(i, j) == m(i, j));

  const std::array<Point4, 5> corner{Point4::Zero(), e1, e2, e3, e4};
  CHECK(hypervolume_exact(corner) == mpq_class(1, 24));
}

TEST_CASE("standard and alternative lifted forms agree exactly", "[predicates]") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> us(0, 40), up(0, 32);
  for (int d : {2, 3, 4}) {
    for (int t = 0; t < 20; ++t) {
      RationalMatrix s(d, d);
      for (auto &x : s.a)
        x = mpq_class(us(rng), 4);
      const mpq_class det = det_exact(s);
      if (det == 0)
        continue;
      std::vector<RationalVector> pts(d + 2, RationalVector(d));
      for (auto &p : pts)
        for (auto &x : p)
          x = mpq_class(up(rng), 32);
      const RationalMatrix m = transpose_times(s);
      if (det < 0)
        for (int j = 0; j < d; ++j)
          s(0, j) = -s(0, j);
      const mpq_class a = inhypersphere_standard_exact(s, pts);
      const mpq_class b = inhypersphere_alternative_exact(m, abs(det), pts);
      CHECK(a == b);
    }
  }
}

#include "pentamesh/roughness2d.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

namespace pentamesh {

namespace {

double cross(const Point2 &a, const Point2 &b, const Point2 &c) {
  return (b.x() - a.x()) * (c.y() - a.y()) - (b.y() - a.y()) * (c.x() - a.x());
}

int sgn(const mpq_class &v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

} // namespace

int orient2_exact(const Point2 &a, const Point2 &b, const Point2 &c) {
  const double d = cross(a, b, c);
  const double bound = 1e-14 * (std::abs((b.x() - a.x()) * (c.y() - a.y())) + std::abs((b.y() - a.y()) * (c.x() - a.x())));
  if (std::abs(d) > bound)
    return d > 0 ? 1 : -1;
  const mpq_class ax(a.x()), ay(a.y()), bx(b.x()), by(b.y()), cx(c.x()), cy(c.y());
  return sgn((bx - ax) * (cy - ay) - (by - ay) * (cx - ax));
}

bool QuadConfig2::valid() const {
  if (!(c_v > 0.0))
    return false;
  for (int i = 0; i < 4; ++i)
    if (orient2_exact(u[i], u[(i + 1) % 4], u[(i + 2) % 4]) <= 0)
      return false;
  return true;
}

CanonicalQuad map_to_canonical(const QuadConfig2 &cfg) {
  if (!(cfg.c_v > 0.0))
    throw RoughnessError("characteristic speed must be positive");
  auto metric = [&](const Point2 &v) { return Point2(v.x() - cfg.u[0].x(), cfg.c_v * (v.y() - cfg.u[0].y())); };
  const Point2 e = metric(cfg.u[1]);
  const double len = e.norm();
  if (!(len > 0.0))
    throw RoughnessError("u1 and u2 coincide");
  const double cs = e.x() / len, sn = e.y() / len;
  auto map = [&](const Point2 &v) {
    const Point2 w = metric(v);
    return Point2((cs * w.x() + sn * w.y()) / len, (-sn * w.x() + cs * w.y()) / len);
  };
  const Point2 u3 = map(cfg.u[2]), u4 = map(cfg.u[3]);
  return {u4.x(), u4.y(), u3.x(), u3.y()};
}

bool RelativeRoughness::factorization_holds(double rel) const {
  const double abc = product();
  return std::abs(value - abc) <= rel * std::max(std::abs(value), std::abs(abc)) + 1e-14 * magnitude;
}

RelativeRoughness relative_roughness(const CanonicalQuad &cq, const std::array<double, 4> &fin, double c_v) {
  if (!cq.valid())
    throw RoughnessError("degenerate canonical quadrilateral");
  if (!(c_v > 0.0))
    throw RoughnessError("characteristic speed must be positive");
  const double p = cq.p, q = cq.q, r = cq.r, s = cq.s, m = cq.m();
  // the interpolant is unchanged by a constant shift, so f1 is taken to zero
  const double f2 = fin[1] - fin[0], f3 = fin[2] - fin[0], f4 = fin[3] - fin[0];
  const double sc = std::sqrt(c_v);
  const double d = r * q - p * s;

  const double a1 = sc * f2, b1 = (f4 - p * f2) / (sc * q);
  const double a2 = sc * (q * (f3 - f2) - s * (f4 - f2)) / m;
  const double b2 = ((r - 1.0) * (f4 - f2) - (p - 1.0) * (f3 - f2)) / (sc * m);
  const double a1s = sc * f2, b1s = (f3 - r * f2) / (sc * s);
  const double a2s = sc * (q * f3 - s * f4) / d, b2s = (r * f4 - p * f3) / (sc * d);

  RelativeRoughness out;
  const double alt = 0.5 * s * (a1s * a1s + b1s * b1s) + 0.5 * d * (a2s * a2s + b2s * b2s);
  const double cur = 0.5 * q * (a1 * a1 + b1 * b1) + 0.5 * m * (a2 * a2 + b2 * b2);
  out.value = alt - cur;
  out.magnitude = std::max(alt, cur);
  out.A = 1.0 / (2.0 * c_v * m * s * d);
  const double bb = q * f3 + (p * s - r * q) * f2 - s * f4;
  out.B = bb * bb;
  out.C = (p * s * (1.0 - p) - c_v * c_v * q * q * s + q * (c_v * c_v * s * s + r * r - r)) / q;
  return out;
}

double triangle_roughness(const Point2 &a, const Point2 &b, const Point2 &c, double fa, double fb, double fc,
                          double c_v) {
  const double det = cross(a, b, c);
  if (det == 0.0)
    throw RoughnessError("degenerate triangle");
  const double ex1 = b.x() - a.x(), et1 = b.y() - a.y(), ex2 = c.x() - a.x(), et2 = c.y() - a.y();
  const double d1 = fb - fa, d2 = fc - fa;
  const double gx = (d1 * et2 - d2 * et1) / det;
  const double gt = (ex1 * d2 - ex2 * d1) / det;
  return 0.5 * std::abs(det) * (c_v * gx * gx + gt * gt / c_v);
}

double relative_roughness_direct(const CanonicalQuad &cq, const std::array<double, 4> &f, double c_v) {
  const Point2 u1(0, 0), u2(1, 0), u3(cq.r, cq.s), u4(cq.p, cq.q);
  const double h = triangle_roughness(u1, u2, u3, f[0], f[1], f[2], c_v) +
                   triangle_roughness(u1, u3, u4, f[0], f[2], f[3], c_v);
  const double g = triangle_roughness(u1, u2, u4, f[0], f[1], f[3], c_v) +
                   triangle_roughness(u2, u3, u4, f[1], f[2], f[3], c_v);
  return h - g;
}

int incircle_m2(double c_v, const std::array<Point2, 3> &tri, const Point2 &w) {
  const mpq_class c(c_v);
  auto lift = [&](const Point2 &v, mpq_class &x, mpq_class &t) {
    x = mpq_class(v.x()) - mpq_class(w.x());
    t = c * (mpq_class(v.y()) - mpq_class(w.y()));
  };
  mpq_class x[3], t[3];
  for (int i = 0; i < 3; ++i)
    lift(tri[i], x[i], t[i]);
  const mpq_class orient = (x[1] - x[0]) * (t[2] - t[0]) - (t[1] - t[0]) * (x[2] - x[0]);
  if (orient == 0)
    throw RoughnessError("collinear triangle");
  mpq_class l[3];
  for (int i = 0; i < 3; ++i)
    l[i] = x[i] * x[i] + t[i] * t[i];
  const mpq_class det = x[0] * (t[1] * l[2] - l[1] * t[2]) - t[0] * (x[1] * l[2] - l[1] * x[2]) +
                        l[0] * (x[1] * t[2] - t[1] * x[2]);
  // det * orient > 0 means inside
  return -sgn(det) * sgn(orient);
}

double incircle_m2_value(double c_v, const std::array<Point2, 3> &tri, const Point2 &w) {
  std::array<Point2, 3> m;
  for (int i = 0; i < 3; ++i)
    m[i] = Point2(tri[i].x(), c_v * tri[i].y());
  const Point2 wm(w.x(), c_v * w.y());
  const Point2 b = m[1] - m[0], c = m[2] - m[0];
  const double d = 2.0 * (b.x() * c.y() - b.y() * c.x());
  if (d == 0.0)
    throw RoughnessError("collinear triangle");
  const double bb = b.squaredNorm(), cc = c.squaredNorm();
  const Point2 o(m[0].x() + (c.y() * bb - b.y() * cc) / d, m[0].y() + (b.x() * cc - c.x() * bb) / d);
  return (o - wm).squaredNorm() - (o - m[0]).squaredNorm();
}

std::vector<std::pair<int, int>> Triangulation2::edges() const {
  std::vector<std::pair<int, int>> e;
  for (const auto &t : triangles)
    for (int i = 0; i < 3; ++i)
      e.emplace_back(std::min(t[i], t[(i + 1) % 3]), std::max(t[i], t[(i + 1) % 3]));
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  return e;
}

Triangulation2 seed_triangulation(const std::vector<Point2> &pts) {
  const int n = static_cast<int>(pts.size());
  if (n < 3)
    throw RoughnessError("need at least three points");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i)
    idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return pts[a].x() < pts[b].x() || (pts[a].x() == pts[b].x() && pts[a].y() < pts[b].y());
  });
  for (int i = 1; i < n; ++i)
    if (pts[idx[i]] == pts[idx[i - 1]])
      throw RoughnessError("duplicate points");
  // monotone chain hull, counter-clockwise, collinear points dropped
  std::vector<int> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && orient2_exact(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0)
      --k;
    hull[k++] = idx[i];
  }
  for (int i = n - 2, lo = k + 1; i >= 0; --i) {
    while (k >= lo && orient2_exact(pts[hull[k - 2]], pts[hull[k - 1]], pts[idx[i]]) <= 0)
      --k;
    hull[k++] = idx[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3)
    throw RoughnessError("points are collinear");

  Triangulation2 t;
  t.points = pts;
  for (size_t i = 1; i + 1 < hull.size(); ++i)
    t.triangles.push_back({hull[0], hull[i], hull[i + 1]});
  std::vector<char> on_hull(n, 0);
  for (int h : hull)
    on_hull[h] = 1;
  for (int v = 0; v < n; ++v) {
    if (on_hull[v])
      continue;
    bool placed = false;
    for (size_t ti = 0; ti < t.triangles.size() && !placed; ++ti) {
      const auto tr = t.triangles[ti];
      int o[3];
      for (int i = 0; i < 3; ++i)
        o[i] = orient2_exact(pts[tr[i]], pts[tr[(i + 1) % 3]], pts[v]);
      if (o[0] < 0 || o[1] < 0 || o[2] < 0)
        continue;
      const int zeros = (o[0] == 0) + (o[1] == 0) + (o[2] == 0);
      if (zeros == 0) {
        t.triangles[ti] = {tr[0], tr[1], v};
        t.triangles.push_back({tr[1], tr[2], v});
        t.triangles.push_back({tr[2], tr[0], v});
      } else {
        // on edge (a,b): split this triangle and its neighbor across the edge
        int e = o[0] == 0 ? 0 : (o[1] == 0 ? 1 : 2);
        const int a = tr[e], b = tr[(e + 1) % 3], c = tr[(e + 2) % 3];
        t.triangles[ti] = {a, v, c};
        t.triangles.push_back({v, b, c});
        for (size_t tj = 0; tj < t.triangles.size(); ++tj) {
          auto &u = t.triangles[tj];
          for (int i = 0; i < 3; ++i)
            if (u[i] == b && u[(i + 1) % 3] == a) {
              const int d = u[(i + 2) % 3];
              u = {b, v, d};
              t.triangles.push_back({v, a, d});
              tj = t.triangles.size();
              break;
            }
        }
      }
      placed = true;
    }
    if (!placed)
      throw RoughnessError("interior point not located");
  }
  return t;
}

double total_roughness(const Triangulation2 &tri, const std::vector<double> &f, const SpeedField2 &speed) {
  double s = 0.0;
  for (const auto &t : tri.triangles) {
    const Point2 &a = tri.points[t[0]], &b = tri.points[t[1]], &c = tri.points[t[2]];
    s += triangle_roughness(a, b, c, f[t[0]], f[t[1]], f[t[2]], speed((a + b + c) / 3.0));
  }
  return s;
}

namespace {

LopResult run_lop(const std::vector<Point2> &points, const std::vector<double> &values, const SpeedField2 &speed,
                  size_t max_flips, bool require_decrease) {
  if (values.size() != points.size())
    throw RoughnessError("one value per point required");
  LopResult res;
  res.tri = seed_triangulation(points);
  auto &tris = res.tri.triangles;
  res.roughness.push_back(total_roughness(res.tri, values, speed));

  bool changed = true;
  while (changed && res.flips < max_flips) {
    changed = false;
    ++res.sweeps;
    for (size_t ti = 0; ti < tris.size(); ++ti) {
      for (int e = 0; e < 3; ++e) {
        const int a = tris[ti][e], b = tris[ti][(e + 1) % 3], c = tris[ti][(e + 2) % 3];
        size_t tj = tris.size();
        int d = -1;
        for (size_t k = 0; k < tris.size(); ++k) {
          if (k == ti)
            continue;
          for (int i = 0; i < 3; ++i)
            if (tris[k][i] == b && tris[k][(i + 1) % 3] == a) {
              tj = k;
              d = tris[k][(i + 2) % 3];
            }
        }
        if (tj == tris.size())
          continue;
        const auto &P = res.tri.points;
        if (orient2_exact(P[c], P[d], P[a]) * orient2_exact(P[c], P[d], P[b]) >= 0)
          continue;
        const double cv = speed((P[a] + P[b]) / 2.0);
        if (incircle_m2(cv, {P[a], P[b], P[c]}, P[d]) >= 0)
          continue;
        if (require_decrease) {
          auto local = [&](int x, int y, int z) {
            return triangle_roughness(P[x], P[y], P[z], values[x], values[y], values[z],
                                      speed((P[x] + P[y] + P[z]) / 3.0));
          };
          if (!(local(c, a, d) + local(d, b, c) < local(a, b, c) + local(b, a, d)))
            continue;
        }
        tris[ti] = {c, a, d};
        tris[tj] = {d, b, c};
        ++res.flips;
        changed = true;
        const double r = total_roughness(res.tri, values, speed);
        if (r > res.roughness.back() * (1.0 + 1e-12) + 1e-300)
          res.monotone = false;
        res.roughness.push_back(r);
        e = 3;
        if (res.flips >= max_flips)
          break;
      }
      if (res.flips >= max_flips)
        break;
    }
  }
  return res;
}

} // namespace

LopResult lop(const std::vector<Point2> &points, const std::vector<double> &values, const SpeedField2 &speed,
              size_t max_flips) {
  return run_lop(points, values, speed, max_flips, true);
}

LopResult lop(const std::vector<Point2> &points, const std::vector<double> &values, double c_v) {
  return run_lop(points, values, [c_v](const Point2 &) { return c_v; }, 1000000, false);
}

Triangulation2 delaunay_brute_force(const std::vector<Point2> &pts, double c_v) {
  Triangulation2 t;
  t.points = pts;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const int o = orient2_exact(pts[i], pts[j], pts[k]);
        if (o == 0)
          continue;
        std::array<Point2, 3> tri{pts[i], pts[j], pts[k]};
        bool empty = true;
        for (int w = 0; w < n && empty; ++w)
          if (w != i && w != j && w != k && incircle_m2(c_v, tri, pts[w]) < 0)
            empty = false;
        if (empty)
          t.triangles.push_back(o > 0 ? std::array<int, 3>{i, j, k} : std::array<int, 3>{i, k, j});
      }
  return t;
}

} // namespace pentamesh

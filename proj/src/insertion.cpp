#include "pentamesh/insertion.hpp"
#include "pentamesh/bounding.hpp"
#include "pentamesh/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace pentamesh {

namespace {

using Quad = __float128;

std::array<Point4, 5> with_replaced(const std::array<Point4, 5> &pts, int slot, const Point4 &p) {
  auto out = pts;
  out[slot] = p;
  return out;
}

double local_tolerance(const std::array<Point4, 5> &pts, const Point4 &p) {
  double s = 0.0;
  for (const auto &v : pts)
    s = std::max(s, (v - p).cwiseAbs().maxCoeff());
  const double s2 = s * s;
  return 1e-13 * s2 * s2;
}

// all five replaced orientations non-negative, decided exactly
bool contains_exact(const Mesh4 &mesh, int32_t e, const Point4 &p) {
  const auto pts = mesh.points(e);
  for (int k = 0; k < 5; ++k)
    if (orientation4(with_replaced(pts, kFacetOpposite[k], p)).sign < 0)
      return false;
  return true;
}

std::array<Point4, 4> facet_points(const Mesh4 &mesh, int32_t e, int k) {
  const auto &el = mesh.element(e);
  const auto &f = kCanonicalFacets[k];
  return {mesh.vertex(el[f[0]]), mesh.vertex(el[f[1]]), mesh.vertex(el[f[2]]), mesh.vertex(el[f[3]])};
}

} // namespace

InsideResult inside_element(const Mesh4 &mesh, int32_t elem, const Point4 &p, double tol) {
  InsideResult r;
  const auto pts = mesh.points(elem);
  if (tol < 0.0)
    tol = local_tolerance(pts, p);
  bool all_pos = true, all_neg = true;
  double most_negative = 0.0;
  for (int k = 0; k < 5; ++k) {
    const auto q = with_replaced(pts, kFacetOpposite[k], p);
    const double o = orientation4_float(q[0], q[1], q[2], q[3], q[4]);
    r.orientations[k] = o;
    if (o < -tol)
      all_pos = false;
    if (o > tol)
      all_neg = false;
    if (o < most_negative) {
      most_negative = o;
      r.exit_facet = k;
    }
  }
  r.inside = all_pos || all_neg;
  if (r.inside)
    r.exit_facet = -1;
  return r;
}

WalkResult find_base_element(const Mesh4 &mesh, const Point4 &p, int32_t start) {
  WalkResult out;
  if (mesh.alive_count() == 0)
    throw GhostPointError("mesh has no elements");
  int32_t cur = start;
  if (!mesh.alive(cur))
    cur = mesh.last_created();
  if (!mesh.alive(cur)) {
    const auto all = mesh.alive_elements();
    cur = all.front();
  }
  const uint32_t s = mesh.next_stamp();
  mesh.stamp(cur, s);
  int32_t found = Mesh4::kNone;
  while (true) {
    const InsideResult r = inside_element(mesh, cur, p);
    if (r.inside) {
      found = cur;
      break;
    }
    std::array<int, 5> order{0, 1, 2, 3, 4};
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return r.orientations[a] < r.orientations[b]; });
    int32_t next = Mesh4::kNone;
    for (int k : order) {
      if (r.orientations[k] >= 0.0)
        break;
      const int32_t n = mesh.neighbor(cur, k);
      if (n != Mesh4::kNone && !mesh.stamped(n, s)) {
        next = n;
        break;
      }
    }
    if (next == Mesh4::kNone || out.stats.steps >= mesh.alive_count()) {
      out.stats.fallback_used = true;
      for (int32_t e : mesh.alive_elements())
        if (inside_element(mesh, e, p).inside) {
          found = e;
          break;
        }
      break;
    }
    mesh.stamp(next, s);
    cur = next;
    ++out.stats.steps;
  }

  if (found != Mesh4::kNone && contains_exact(mesh, found, p)) {
    out.element = found;
    return out;
  }
  if (found != Mesh4::kNone)
    for (int k = 0; k < 5; ++k) {
      const int32_t n = mesh.neighbor(found, k);
      if (n != Mesh4::kNone && contains_exact(mesh, n, p)) {
        out.element = n;
        return out;
      }
    }
  out.stats.fallback_used = true;
  for (int32_t e : mesh.alive_elements())
    if (contains_exact(mesh, e, p)) {
      out.element = e;
      return out;
    }
  throw GhostPointError("no element contains the point");
}

std::vector<BoundaryFacet> cavity_boundary(const Mesh4 &mesh, const std::vector<int32_t> &elements) {
  const uint32_t s = mesh.next_stamp();
  for (int32_t e : elements)
    mesh.stamp(e, s);
  std::vector<BoundaryFacet> out;
  for (int32_t e : elements)
    for (int k = 0; k < 5; ++k) {
      const int32_t n = mesh.neighbor(e, k);
      if (n == Mesh4::kNone || !mesh.stamped(n, s))
        out.push_back({e, k, n});
    }
  return out;
}

Cavity build_cavity(const Mesh4 &mesh, int32_t base, const Point4 &p, const Metric4 &m) {
  Cavity c;
  c.base = base;
  const uint32_t s = mesh.next_stamp();
  mesh.stamp(base, s);
  c.elements.push_back(base);
  for (size_t i = 0; i < c.elements.size(); ++i) {
    const int32_t e = c.elements[i];
    for (int k = 0; k < 5; ++k) {
      const int32_t n = mesh.neighbor(e, k);
      if (n == Mesh4::kNone || mesh.stamped(n, s))
        continue;
      mesh.stamp(n, s);
      if (inhypersphere_m(m, mesh.points(n), p).sign > 0)
        c.elements.push_back(n);
    }
  }
  c.boundary = cavity_boundary(mesh, c.elements);
  return c;
}

double visibility_q(const std::array<Point4, 4> &f, const Point4 &p, const Metric4 &m) {
  // inward normal is the negated cross product of the owner-ordered facet
  Quad u[3][4];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 4; ++j)
      u[i][j] = static_cast<Quad>(f[i + 1][j]) - static_cast<Quad>(f[0][j]);
  Quad n[4];
  for (int j = 0; j < 4; ++j) {
    int c[3], mc = 0;
    for (int col = 0; col < 4; ++col)
      if (col != j)
        c[mc++] = col;
    const Quad minor = u[0][c[0]] * (u[1][c[1]] * u[2][c[2]] - u[1][c[2]] * u[2][c[1]]) -
                       u[0][c[1]] * (u[1][c[0]] * u[2][c[2]] - u[1][c[2]] * u[2][c[0]]) +
                       u[0][c[2]] * (u[1][c[0]] * u[2][c[1]] - u[1][c[1]] * u[2][c[0]]);
    n[j] = (j % 2) ? minor : -minor;
  }
  Quad cp[4];
  for (int j = 0; j < 4; ++j) {
    const Quad cen = (static_cast<Quad>(f[0][j]) + f[1][j] + f[2][j] + f[3][j]) / 4;
    cp[j] = static_cast<Quad>(p[j]) - cen;
  }
  const Matrix4 minv = m.inverse();
  Quad num = 0, nn = 0, cc = 0;
  for (int i = 0; i < 4; ++i) {
    num += n[i] * cp[i];
    for (int j = 0; j < 4; ++j) {
      nn += n[i] * static_cast<Quad>(minv(i, j)) * n[j];
      cc += cp[i] * static_cast<Quad>(m(i, j)) * cp[j];
    }
  }
  if (nn <= 0 || cc <= 0)
    return 0.0;
  const double nd = static_cast<double>(num);
  return nd / (std::sqrt(static_cast<double>(nn)) * std::sqrt(static_cast<double>(cc)));
}

Cavity enforce_visibility(const Mesh4 &mesh, Cavity cavity, const Point4 &p, const Metric4 &m, double q_tol,
                          VisibilityStats *stats) {
  VisibilityStats local;
  // elements whose closure holds p can never be dropped
  std::vector<int32_t> core{cavity.base};
  {
    const uint32_t s = mesh.next_stamp();
    mesh.stamp(cavity.base, s);
    for (size_t i = 0; i < core.size(); ++i) {
      const auto pts = mesh.points(core[i]);
      for (int k = 0; k < 5; ++k) {
        const int32_t n = mesh.neighbor(core[i], k);
        if (n == Mesh4::kNone || mesh.stamped(n, s))
          continue;
        if (orientation4(with_replaced(pts, kFacetOpposite[k], p)).sign == 0) {
          mesh.stamp(n, s);
          core.push_back(n);
        }
      }
    }
  }
  std::sort(core.begin(), core.end());

  while (true) {
    cavity.boundary = cavity_boundary(mesh, cavity.elements);
    std::vector<int32_t> bad;
    for (const auto &bf : cavity.boundary) {
      const auto f = facet_points(mesh, bf.owner, bf.facet);
      const bool in_core = std::binary_search(core.begin(), core.end(), bf.owner);
      bool invisible = orientation4(f[0], f[1], f[2], f[3], p).sign <= 0;
      if (!invisible && !in_core)
        invisible = visibility_q(f, p, m) <= q_tol;
      if (invisible)
        bad.push_back(bf.owner);
    }
    if (bad.empty())
      break;
    ++local.rounds;
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    for (int32_t b : bad)
      if (std::binary_search(core.begin(), core.end(), b))
        throw CavityError("visibility repair would remove an element containing the point");
    local.removed += bad.size();
    // drop the invisible owners, then keep the part still attached to the base
    const uint32_t s = mesh.next_stamp();
    for (int32_t e : cavity.elements)
      if (!std::binary_search(bad.begin(), bad.end(), e))
        mesh.stamp(e, s);
    const uint32_t keep = mesh.next_stamp();
    std::vector<int32_t> kept{cavity.base};
    mesh.stamp(cavity.base, keep);
    for (size_t i = 0; i < kept.size(); ++i)
      for (int k = 0; k < 5; ++k) {
        const int32_t n = mesh.neighbor(kept[i], k);
        if (n != Mesh4::kNone && mesh.stamped(n, s)) {
          mesh.stamp(n, keep);
          kept.push_back(n);
        }
      }
    local.removed += cavity.elements.size() - bad.size() - kept.size();
    cavity.elements = std::move(kept);
  }
  if (stats)
    *stats = local;
  return cavity;
}

InsertionReport insert_point(Mesh4 &mesh, const Point4 &p, const MetricField &field, const InsertOptions &opts) {
  if (!p.allFinite())
    throw std::invalid_argument("insert_point: non-finite coordinates");
  InsertionReport rep;
  const WalkResult w = find_base_element(mesh, p, opts.start);
  rep.base = w.element;
  rep.walk = w.stats;
  const Metric4 m = field(p);
  Cavity c = build_cavity(mesh, w.element, p, m);
  rep.cavity_initial = c.elements.size();

  const double snap = opts.snap * mesh.scale();
  for (int32_t e : c.elements)
    for (int32_t v : mesh.element(e))
      if ((mesh.vertex(v) - p).norm() <= snap)
        throw DuplicateVertexError(v);

  VisibilityStats vs;
  c = enforce_visibility(mesh, std::move(c), p, m, opts.q_tol, &vs);
  rep.visibility_removed = vs.removed;

  const int32_t vid = mesh.add_vertex(p);
  std::vector<Pentatope> added;
  added.reserve(c.boundary.size());
  for (const auto &bf : c.boundary) {
    const auto &el = mesh.element(bf.owner);
    const auto &f = kCanonicalFacets[bf.facet];
    added.push_back({el[f[0]], el[f[1]], el[f[2]], el[f[3]], vid});
  }
  mesh.replace(c.elements, added);
  rep.vertex = vid;
  rep.created = added.size();
  return rep;
}

Mesh4 triangulate(const std::vector<Point4> &pts, const MetricField &field, const TriangulateOptions &opts,
                  TriangulationStats *stats) {
  Mesh4 mesh = build_bounding_mesh(pts, opts.n_b, opts.margin);
  std::vector<size_t> order(pts.size());
  std::iota(order.begin(), order.end(), size_t{0});
  if (opts.shuffle) {
    std::mt19937_64 rng(opts.seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  TriangulationStats st;
  InsertOptions io;
  io.q_tol = opts.q_tol;
  for (size_t i : order) {
    try {
      const auto r = insert_point(mesh, pts[i], field, io);
      ++st.inserted;
      st.walk_steps += r.walk.steps;
      st.walk_fallbacks += r.walk.fallback_used ? 1 : 0;
      st.visibility_removed += r.visibility_removed;
    } catch (const DuplicateVertexError &) {
      if (!opts.skip_duplicates)
        throw;
      ++st.duplicates_skipped;
    }
  }
  if (opts.remove_super)
    mesh.remove_super_elements();
  if (stats)
    *stats = st;
  return mesh;
}

namespace {

struct Circumsphere {
  Point4 center;
  double r2;
  bool ok;
};

Circumsphere metric_circumsphere(const std::array<Point4, 5> &p, const Matrix4 &m) {
  Matrix4 a;
  Vector4 b;
  for (int i = 0; i < 4; ++i) {
    const Vector4 d = p[i + 1] - p[0];
    a.row(i) = 2.0 * (m * d).transpose();
    b[i] = p[i + 1].dot(m * p[i + 1]) - p[0].dot(m * p[0]);
  }
  Eigen::FullPivLU<Matrix4> lu(a);
  if (!lu.isInvertible() || lu.rcond() < 1e-8)
    return {Point4::Zero(), 0.0, false};
  const Point4 c = lu.solve(b);
  const Vector4 d = p[0] - c;
  return {c, d.dot(m * d), c.allFinite()};
}

} // namespace

DelaunayAudit audit_delaunay(const Mesh4 &mesh, const MetricField &field, double tol) {
  DelaunayAudit out;
  const auto elems = mesh.alive_elements();
  std::vector<char> used(mesh.vertex_count(), 0);
  for (int32_t e : elems)
    for (int32_t v : mesh.element(e))
      used[v] = 1;
  auto check = [&](int32_t v, int32_t e, const Metric4 &m) {
    const auto r = inhypersphere_m(m, mesh.points(e), mesh.vertex(v));
    if (r.sign > 0 && !(tol > 0.0 && r.value <= tol))
      out.violations.push_back({v, e});
  };
  auto has_vertex = [&](int32_t e, int32_t v) {
    const auto &el = mesh.element(e);
    return std::find(el.begin(), el.end(), v) != el.end();
  };
  if (field.is_constant()) {
    const Metric4 m = field(Point4::Zero());
    std::vector<Circumsphere> spheres;
    spheres.reserve(elems.size());
    for (int32_t e : elems)
      spheres.push_back(metric_circumsphere(mesh.points(e), m.matrix()));
    for (size_t i = 0; i < elems.size(); ++i)
      for (size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (!used[v] || has_vertex(elems[i], static_cast<int32_t>(v)))
          continue;
        ++out.checked;
        const auto &s = spheres[i];
        if (s.ok) {
          const Vector4 d = mesh.vertex(static_cast<int32_t>(v)) - s.center;
          if (d.dot(m.matrix() * d) > s.r2 * (1.0 + 1e-6) + 1e-300)
            continue;
        }
        check(static_cast<int32_t>(v), elems[i], m);
      }
    return out;
  }
  for (size_t v = 0; v < mesh.vertex_count(); ++v) {
    if (!used[v])
      continue;
    const Metric4 m = field(mesh.vertex(static_cast<int32_t>(v)));
    for (int32_t e : elems)
      if (!has_vertex(e, static_cast<int32_t>(v))) {
        ++out.checked;
        check(static_cast<int32_t>(v), e, m);
      }
  }
  return out;
}

} // namespace pentamesh

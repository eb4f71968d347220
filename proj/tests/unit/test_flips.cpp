#include "catch_amalgamated.hpp"

#include "pentamesh/flips.hpp"
#include "pentamesh/generators.hpp"
#include "pentamesh/insertion.hpp"
#include "pentamesh/predicates.hpp"
#include "pentamesh/quality.hpp"

#include <algorithm>
#include <map>
#include <set>

using namespace pentamesh;

namespace {

using Multiset = std::map<std::array<int, 4>, int>;

Multiset boundary(const std::vector<std::array<int, 5>> &stage) {
  Multiset count;
  for (const auto &t : stage) {
    const Pentatope p{t[0], t[1], t[2], t[3], t[4]};
    for (const auto &f : canonical_facets(p))
      ++count[f.key()];
  }
  Multiset out;
  for (const auto &[k, c] : count)
    if (c == 1)
      out[k] = 1;
  return out;
}

// stage b is stage a under some relabeling
bool relabel_equal(std::vector<std::array<int, 5>> a, std::vector<std::array<int, 5>> b) {
  if (a.size() != b.size())
    return false;
  int n = 0;
  for (const auto &t : a)
    for (int x : t)
      n = std::max(n, x);
  auto canon = [](std::vector<std::array<int, 5>> v) {
    for (auto &t : v)
      std::sort(t.begin(), t.end());
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto target = canon(b);
  std::vector<int> perm(n + 1);
  for (int i = 0; i <= n; ++i)
    perm[i] = i;
  do {
    auto m = a;
    for (auto &t : m)
      for (int &x : t)
        x = perm[x];
    if (canon(m) == target)
      return true;
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return false;
}

Mesh4 mesh_of(const std::vector<Point4> &pts, const std::vector<Pentatope> &els) {
  Mesh4 m;
  for (const auto &p : pts)
    m.add_vertex(p);
  for (auto e : els) {
    if (hypervolume(gather(pts, e)) < 0)
      std::swap(e[0], e[1]);
    m.add_element(e);
  }
  m.rebuild_adjacency();
  return m;
}

std::set<std::array<int32_t, 5>> sorted_elements(const Mesh4 &m) {
  std::set<std::array<int32_t, 5>> out;
  for (int32_t e : m.alive_elements()) {
    auto el = m.element(e);
    std::sort(el.begin(), el.end());
    out.insert(el);
  }
  return out;
}

std::optional<FlipCandidate> first_valid(const Mesh4 &m, FlipKind kind) {
  for (int32_t e : m.alive_elements())
    for (const auto &c : find_candidates(m, e))
      if (c.kind == kind && validate_flip(m, c, true).valid)
        return c;
  return std::nullopt;
}

bool all_positive(const Mesh4 &m) {
  for (int32_t e : m.alive_elements())
    if (hypervolume_exact(m.points(e)) <= 0)
      return false;
  return true;
}

} // namespace

TEST_CASE("flip names", "[flips]") {
  CHECK(all_flip_kinds().size() == static_cast<size_t>(kFlipKindCount));
  for (FlipKind k : all_flip_kinds())
    CHECK(flip_from_name(flip_name(k)) == k);
  CHECK(flip_name(FlipKind::F8_8v2) == "F8_8v2");
  CHECK_FALSE(flip_from_name("F7_7").has_value());
}

TEST_CASE("stage tables", "[flips]") {
  const auto &t15 = flip_table(FlipKind::F1_5);
  CHECK(t15.stage1 == std::vector<std::array<int, 5>>{{1, 2, 3, 4, 5}});
  CHECK(t15.stage2 ==
        std::vector<std::array<int, 5>>{{1, 2, 3, 4, 6}, {2, 3, 4, 5, 6}, {1, 3, 4, 5, 6}, {1, 2, 4, 5, 6}, {1, 2, 3, 5, 6}});
  CHECK(t15.new_label == 6);
  CHECK(t15.rule == NewVertexRule::interior_point);

  const auto &t33 = flip_table(FlipKind::F3_3);
  CHECK(t33.stage1 == std::vector<std::array<int, 5>>{{1, 2, 3, 4, 5}, {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}});
  CHECK(t33.stage2 == std::vector<std::array<int, 5>>{{1, 2, 3, 4, 6}, {2, 3, 4, 5, 6}, {1, 2, 3, 5, 6}});
  CHECK_FALSE(t33.inserts_point());

  const auto &t816 = flip_table(FlipKind::F8_16);
  CHECK(t816.stage1.size() == 8);
  CHECK(t816.stage2.size() == 16);
  CHECK(flip_table(FlipKind::F4_8).rule == NewVertexRule::midpoint_of_edge);
}

TEST_CASE("stage boundaries match and reverses swap", "[flips]") {
  for (FlipKind k : all_flip_kinds()) {
    const auto &t = flip_table(k);
    INFO(flip_name(k));
    CHECK(boundary(t.stage1) == boundary(t.stage2));
    const auto &r = flip_table(t.reverse);
    CHECK(r.reverse == k);
    if (t.reverse == k) {
      CHECK(relabel_equal(t.stage1, t.stage2));
    } else {
      CHECK(r.stage1 == t.stage2);
      CHECK(r.stage2 == t.stage1);
    }
  }
  CHECK(primary_flip_kinds().size() == 15);
}

TEST_CASE("vertex counts", "[flips]") {
  CHECK(flip_vertex_count(4, 1) == 5);
  CHECK(flip_vertex_count(4, 2) == 6);
  CHECK(flip_vertex_count(3, 4) == 5);
  CHECK_THROWS(flip_vertex_count(0, 1));
}

TEST_CASE("isolated element offers only the 1-5 split", "[flips]") {
  Mesh4 m = mesh_of({Point4(0, 0, 0, 0), Point4(1, 0, 0, 0), Point4(0, 1, 0, 0), Point4(0, 0, 1, 0), Point4(0, 0, 0, 1)},
                    {{0, 1, 2, 3, 4}});
  const auto cands = find_candidates(m, 0);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].kind == FlipKind::F1_5);
  CandidateOptions none;
  none.point_inserting = false;
  CHECK(find_candidates(m, 0, none).empty());

  const auto before = sorted_elements(m);
  const auto rep = apply_flip(m, cands[0]);
  CHECK(m.alive_count() == 5);
  CHECK(m.total_hypervolume_exact() == mpq_class(1, 24));
  CHECK(rep.new_vertex >= 0);
  auto back = first_valid(m, FlipKind::F5_1);
  REQUIRE(back.has_value());
  const auto rep2 = apply_flip(m, *back);
  CHECK(rep2.removed_vertex == rep.new_vertex);
  CHECK(sorted_elements(m) == before);
  CHECK(m.check_invariants().ok);
}

TEST_CASE("2-4 across a convex and a reflex facet", "[flips]") {
  const std::vector<Point4> base{Point4(1, 0, 0, 0), Point4(0, 1, 0, 0), Point4(0, 0, 1, 0), Point4(0, 0, 0, 1),
                                 Point4(0, 0, 0, 0)};
  auto convex = base;
  convex.push_back(Point4(0.3, 0.3, 0.3, 0.3));
  Mesh4 a = mesh_of(convex, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}});
  auto c = first_valid(a, FlipKind::F2_4);
  REQUIRE(c.has_value());
  apply_flip(a, *c);
  CHECK(a.alive_count() == 4);
  CHECK(a.total_hypervolume_exact() == hypervolume_exact({convex[0], convex[1], convex[2], convex[3], convex[4]}) +
                                           abs(hypervolume_exact({convex[0], convex[1], convex[2], convex[3], convex[5]})));
  CHECK(all_positive(a));

  auto reflex = base;
  reflex.push_back(Point4(1, 1, 1, -0.5));
  Mesh4 b = mesh_of(reflex, {{0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}});
  bool saw = false;
  for (int32_t e : b.alive_elements())
    for (const auto &cand : find_candidates(b, e))
      if (cand.kind == FlipKind::F2_4) {
        saw = true;
        const auto v = validate_flip(b, cand, true);
        CHECK_FALSE(v.valid);
        CHECK_FALSE(v.reason.empty());
        CHECK_THROWS_AS(apply_flip(b, cand), FlipError);
      }
  CHECK(saw);
}

TEST_CASE("3-3 on a join of two triangles", "[flips]") {
  // triangle in the xy plane joined with a triangle in the zt plane
  const std::vector<Point4> pts{Point4(1, 0.05, 0, 0),   Point4(-0.5, 0.8, 0, 0),  Point4(-0.45, -0.85, 0, 0),
                                Point4(0, 0, 1.1, 0.02), Point4(0, 0, -0.5, 0.9), Point4(0, 0, -0.55, -0.8)};
  Mesh4 m = mesh_of(pts, {{0, 1, 2, 3, 4}, {0, 1, 2, 4, 5}, {0, 1, 2, 5, 3}});
  const auto vol = m.total_hypervolume_exact();
  const size_t facets_before = [&] {
    std::set<FacetKey> s;
    for (int32_t e : m.alive_elements())
      for (int k = 0; k < 5; ++k)
        s.insert(m.facet_key(e, k));
    return s.size();
  }();
  auto c = first_valid(m, FlipKind::F3_3);
  REQUIRE(c.has_value());
  apply_flip(m, *c);
  CHECK(m.alive_count() == 3);
  CHECK(m.total_hypervolume_exact() == vol);
  std::set<FacetKey> s;
  for (int32_t e : m.alive_elements())
    for (int k = 0; k < 5; ++k)
      s.insert(m.facet_key(e, k));
  CHECK(s.size() == facets_before);
  // each new element holds the zt triangle
  for (int32_t e : m.alive_elements()) {
    const auto &el = m.element(e);
    for (int32_t v : {3, 4, 5})
      CHECK(std::find(el.begin(), el.end(), v) != el.end());
  }
}

TEST_CASE("every primary kind applies on a random mesh", "[flips]") {
  const Mesh4 start = triangulate(uniform_points(80, 3), MetricField::identity());
  for (FlipKind k : primary_flip_kinds()) {
    INFO(flip_name(k));
    Mesh4 m = start;
    auto c = first_valid(m, k);
    REQUIRE(c.has_value());
    const auto vol = m.total_hypervolume_exact();
    const size_t nv = m.vertex_count(), ne = m.alive_count();
    const auto &t = flip_table(k);
    const auto rep = apply_flip(m, *c);
    CHECK(m.total_hypervolume_exact() == vol);
    CHECK(all_positive(m));
    CHECK(m.alive_count() == ne - t.stage1.size() + t.stage2.size());
    CHECK(m.check_invariants().ok);
    if (t.inserts_point()) {
      CHECK(m.vertex_count() == nv + 1);
      CHECK(rep.new_vertex >= 0);
    }
  }
}

TEST_CASE("4-8 inserts the edge midpoint", "[flips]") {
  Mesh4 m = triangulate(uniform_points(80, 3), MetricField::identity());
  auto c = first_valid(m, FlipKind::F4_8);
  REQUIRE(c.has_value());
  REQUIRE(c->new_point.has_value());
  const auto &t = flip_table(FlipKind::F4_8);
  REQUIRE(t.shared.size() == 2);
  const Point4 mid = 0.5 * (m.vertex(c->labels[t.shared[0] - 1]) + m.vertex(c->labels[t.shared[1] - 1]));
  CHECK((*c->new_point - mid).norm() == 0.0);
}

TEST_CASE("improvement", "[flips]") {
  SECTION("a lone regular pentatope is left alone") {
    const auto r = regular_pentatope(1.0);
    Mesh4 m = mesh_of({r.begin(), r.end()}, {{0, 1, 2, 3, 4}});
    const auto rep = improve_quality(m, 1, MetricField::identity());
    CHECK(rep.flips == 0);
    CHECK(m.alive_count() == 1);
  }
  SECTION("a 50-point cloud improves") {
    Mesh4 m = triangulate(uniform_points(50, 7919 + 50), MetricField::identity());
    const auto rep = improve_quality(m, 1, MetricField::identity());
    CHECK(rep.flips > 0);
    CHECK(rep.monotone);
    CHECK(rep.hypervolume_exact_before == rep.hypervolume_exact_after);
    REQUIRE(rep.amq.size() == 4);
    for (const auto &a : rep.amq)
      CHECK(a.final >= a.initial);
    CHECK(rep.min_quality_after >= rep.min_quality_before);
    CHECK(m.check_invariants().ok);
  }
  SECTION("average minimum quality") {
    CHECK(average_minimum_quality({0.5, 0.1, 0.9, 0.3}, 0.5) == Catch::Approx(0.2));
    CHECK(average_minimum_quality({0.5, 0.1, 0.9, 0.3}, 0.01) == Catch::Approx(0.1));
  }
}

#include "pentamesh/bounding.hpp"
#include "pentamesh/flips.hpp"
#include "pentamesh/generators.hpp"
#include "pentamesh/insertion.hpp"
#include "pentamesh/predicates.hpp"
#include "pentamesh/quality.hpp"
#include "pentamesh/roughness2d.hpp"
#include "pentamesh/studies.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace pentamesh;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void run(int id, const char *name, double budget_s, const std::function<Outcome()> &body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception &e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s > budget_s) {
    o.pass = false;
    o.detail += " (over time budget)";
  }
  failures += !o.pass;
  std::printf("%s %d %s [%.2fs / %.0fs] %s\n", o.pass ? "PASS" : "FAIL", id, name, s, budget_s, o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char *f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char *f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::array<Point4, 5> tuple_points(const SubdivisionTable &t, const std::array<int, 5> &tu) {
  return {t.corners[tu[0]], t.corners[tu[1]], t.corners[tu[2]], t.corners[tu[3]], t.corners[tu[4]]};
}

Outcome partition() {
  for (int n : {22, 23, 24}) {
    const auto t = subdivision_table(n);
    mpq_class total = 0;
    for (const auto &tu : t.normalized()) {
      const mpq_class v = hypervolume_exact(tuple_points(t, tu));
      if (v <= 0)
        return {false, fmt("n_b=%d has a non-positive element", n)};
      if (n == 24 && v != mpq_class(1, 24))
        return {false, "n_b=24 element volume differs from 1/24"};
      total += v;
    }
    if (total != 1)
      return {false, fmt("n_b=%d sums to %s", n, total.get_str().c_str())};
  }
  return {true, "22/23/24 sum to exactly 1"};
}

Outcome table_delaunay() {
  size_t zeros = 0;
  for (int n : {22, 23, 24}) {
    const auto t = subdivision_table(n);
    for (const auto &tu : t.normalized()) {
      const auto p = tuple_points(t, tu);
      for (const auto &c : t.corners) {
        const int s = inhypersphere4(p, c).sign;
        if (s > 0)
          return {false, fmt("n_b=%d: corner strictly inside a circumsphere", n)};
        zeros += (s == 0);
      }
    }
  }
  return {true, fmt("no strict violations, %zu cospherical corners", zeros)};
}

Outcome audit() {
  size_t checked = 0, elements = 0;
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    const Mesh4 m = triangulate(uniform_points(200, seed), MetricField::identity());
    const auto a = audit_delaunay(m, MetricField::identity());
    if (!a.ok())
      return {false, fmt("seed %llu: %zu violations", static_cast<unsigned long long>(seed), a.violations.size())};
    checked += a.checked;
    elements += m.alive_count();
  }
  return {true, fmt("20 seeds, %zu elements, %zu vertex-element checks", elements, checked)};
}

Outcome convergence() {
  std::string detail;
  bool ok = true;
  for (bool aniso : {false, true}) {
    ConvergenceConfig cfg;
    cfg.anisotropic = aniso;
    const auto r = convergence_study(cfg);
    const bool in = r.slope >= 1.6 && r.slope <= 2.4;
    ok = ok && in;
    detail += fmt("%s slope %.3f (max %zu pentatopes); ", aniso ? "anisotropic" : "isotropic", r.slope,
                  r.rows.back().n_pentatopes);
  }
  return {ok, detail};
}

Outcome predicates() {
  const auto ex = exact_predicate_comparison(4, 1000, 1);
  if (ex.zero_differences != ex.trials || ex.trials != 1000)
    return {false, fmt("exact: %d of %d trials identical", ex.zero_differences, ex.trials)};
  PredicateStudyConfig cfg;
  cfg.dims = {2, 10};
  cfg.trials = 100;
  const auto rows = predicate_comparison_study(cfg);
  double d2[2] = {}, d10[2] = {};
  for (const auto &r : rows)
    (r.d == 2 ? d2 : d10)[r.kind == DecompositionKind::cholesky ? 0 : 1] = r.mean_difference;
  const bool ok = d10[0] > d2[0] && d10[1] > d2[1];
  return {ok, fmt("exact 1000/1000 zero; cholesky %.2e -> %.2e, sqrt %.2e -> %.2e", d2[0], d10[0], d2[1], d10[1])};
}

Matrix4 shape_matrix(const std::array<Point4, 5> &p, const std::array<Point4, 5> &r) {
  Matrix4 R, T;
  for (int i = 0; i < 4; ++i) {
    R.col(i) = r[i + 1] - r[0];
    T.col(i) = p[i + 1] - p[0];
  }
  const Matrix4 X = T * R.inverse();
  return X.transpose() * X;
}

double rel(double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); }

Outcome quality_suite() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(-1.0, 1.0), sc(0.01, 100.0);
  std::normal_distribution<double> g;
  const auto reg = regular_pentatope(1.0);
  double worst_inv = 0, worst_prod = 0, worst_theta = 0;
  for (int i = 0; i < 10000; ++i) {
    std::array<Point4, 5> p;
    for (auto &x : p)
      x = Point4(u(rng), u(rng), u(rng), u(rng));
    const auto q = quality_vector(p);
    for (double e : {q.eta1, q.eta2, q.eta3})
      if (!(e >= 0.0 && e <= 1.0 + 1e-12))
        return {false, fmt("heuristic out of range: %.17g", e)};
    if (q.eta2 < q.eta3)
      return {false, "eta2 < eta3"};
    worst_prod = std::max(worst_prod, rel(q.eta3, q.eta1 * q.eta2));

    Matrix4 a;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        a(r, c) = g(rng);
    const Matrix4 Q = Eigen::HouseholderQR<Matrix4>(a).householderQ();
    const Point4 shift(u(rng), u(rng), u(rng), u(rng));
    const double k = sc(rng);
    std::array<Point4, 5> img;
    for (int j = 0; j < 5; ++j)
      img[j] = k * (Q * p[j]) + 5.0 * shift;
    const auto qi = quality_vector(img);
    worst_inv = std::max({worst_inv, rel(q.eta1, qi.eta1), rel(q.eta2, qi.eta2), rel(q.eta3, qi.eta3)});

    worst_theta = std::max(worst_theta, rel(std::sqrt(theta(edge_squares(p))) / 30.0, shape_matrix(p, reg).norm()));
  }
  const auto qr = quality_vector(regular_pentatope(2.5));
  const double reg_err = std::max({std::abs(qr.eta1 - 1), std::abs(qr.eta2 - 1), std::abs(qr.eta3 - 1)});
  const bool ok = worst_prod <= 1e-12 && worst_inv <= 1e-9 && worst_theta <= 1e-9 && reg_err <= 1e-12;
  return {ok, fmt("product %.1e, invariance %.1e, theta %.1e, regular %.1e", worst_prod, worst_inv, worst_theta,
                  reg_err)};
}

std::map<std::array<int, 4>, int> boundary(const std::vector<std::array<int, 5>> &stage) {
  std::map<std::array<int, 4>, int> count, out;
  for (const auto &t : stage)
    for (const auto &f : canonical_facets(Pentatope{t[0], t[1], t[2], t[3], t[4]}))
      ++count[f.key()];
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

bool check_applied(const Mesh4 &m, const mpq_class &vol, const std::vector<int32_t> &created) {
  if (m.total_hypervolume_exact() != vol)
    return false;
  for (int32_t e : created)
    if (hypervolume_exact(m.points(e)) <= 0)
      return false;
  return true;
}

Outcome flips() {
  for (FlipKind k : all_flip_kinds()) {
    const auto &t = flip_table(k);
    if (boundary(t.stage1) != boundary(t.stage2))
      return {false, std::string(flip_name(k)) + " boundary mismatch"};
    const auto &r = flip_table(t.reverse);
    const bool swapped = t.reverse == k ? relabel_equal(t.stage1, t.stage2) : r.stage1 == t.stage2 && r.stage2 == t.stage1;
    if (r.reverse != k || !swapped)
      return {false, std::string(flip_name(k)) + " reverse mismatch"};
  }
  std::map<FlipKind, int> instances;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    const Mesh4 start = triangulate(uniform_points(80, 100 + seed), MetricField::identity());
    for (FlipKind k : all_flip_kinds()) {
      const auto &t = flip_table(k);
      Mesh4 m = start;
      // removing kinds are reached by first inserting the point they remove
      std::vector<int32_t> starters = m.alive_elements();
      if (t.removes_point()) {
        std::optional<FlipCandidate> ins;
        for (int32_t e : starters) {
          for (const auto &c : find_candidates(m, e))
            if (c.kind == t.reverse && validate_flip(m, c, true).valid) {
              ins = c;
              break;
            }
          if (ins)
            break;
        }
        if (!ins)
          continue;
        const auto vol = m.total_hypervolume_exact();
        const auto rep = apply_flip(m, *ins);
        if (!check_applied(m, vol, rep.created))
          return {false, std::string(flip_name(t.reverse)) + " broke volume or orientation"};
        starters = rep.created;
      }
      for (int32_t e : starters) {
        if (!m.alive(e))
          continue;
        bool done = false;
        for (const auto &c : find_candidates(m, e)) {
          if (c.kind != k || !validate_flip(m, c, true).valid)
            continue;
          const auto vol = m.total_hypervolume_exact();
          const auto rep = apply_flip(m, c);
          if (!check_applied(m, vol, rep.created))
            return {false, std::string(flip_name(k)) + " broke volume or orientation"};
          ++instances[k];
          done = true;
          break;
        }
        if (done)
          break;
      }
    }
  }
  std::string missing;
  for (FlipKind k : all_flip_kinds())
    if (!instances.count(k))
      missing += std::string(flip_name(k)) + " ";
  if (!missing.empty())
    return {false, "no valid instance found for " + missing};
  return {true, fmt("%d kinds static-checked; every kind applied on random meshes", kFlipKindCount)};
}

Outcome improvement() {
  QualityStudyConfig cfg;
  const auto rows = quality_study(cfg);
  int strict = 0;
  std::string detail;
  for (const auto &r : rows) {
    const auto &rep = r.report;
    if (rep.hypervolume_exact_before != rep.hypervolume_exact_after)
      return {false, fmt("n=%zu hypervolume changed", r.n_points)};
    bool all_strict = true;
    for (const auto &a : rep.amq) {
      if (a.final < a.initial)
        return {false, fmt("n=%zu AMQ %.0f%% decreased", r.n_points, 100 * a.fraction)};
      all_strict = all_strict && a.final > a.initial;
    }
    strict += all_strict;
    detail += fmt("n=%zu: %zu flips, AMQ20 %.3f->%.3f; ", r.n_points, rep.flips, rep.amq[3].initial, rep.amq[3].final);
  }
  return {strict >= 4, fmt("%d/6 strictly improved; ", strict) + detail};
}

Outcome roughness() {
  const auto trials = roughness_trials(10000, 9);
  double worst_neg = 0, worst_fact = 0;
  for (const auto &t : trials) {
    if (t.r.C >= 0)
      worst_neg = std::min(worst_neg, t.r.value);
    const double direct = relative_roughness_direct(t.cq, t.f, t.c_v);
    const double p = t.r.product();
    // roundoff floor from cancelling two O(magnitude) integrals
    const double scale = std::max({std::abs(direct), std::abs(p), 1e-5 * t.r.magnitude, 1e-300});
    worst_fact = std::max(worst_fact, std::abs(direct - p) / scale);
  }
  if (worst_neg < -1e-12)
    return {false, fmt("value %.3e with C >= 0", worst_neg)};
  if (worst_fact > 1e-9)
    return {false, fmt("factorization error %.3e", worst_fact)};
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0), uc(0.2, 5.0);
  for (int seed = 0; seed < 50; ++seed) {
    const double c = seed == 0 ? 1.0 : uc(rng);
    std::vector<Point2> pts(30);
    std::vector<double> f(30);
    for (size_t i = 0; i < pts.size(); ++i) {
      pts[i] = Point2(u(rng), u(rng));
      f[i] = u(rng);
    }
    auto a = lop(pts, f, c).tri.edges();
    std::vector<Point2> scaled = pts;
    for (auto &p : scaled)
      p[1] *= c;
    auto b = delaunay_brute_force(scaled, 1.0).edges();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      return {false, fmt("LOP differs from Delaunay on set %d (c=%.3f)", seed, c)};
  }
  return {true, fmt("min value %.1e with C>=0, factorization %.1e, 50/50 LOP sets match", worst_neg, worst_fact)};
}

} // namespace

int main() {
  run(1, "tesseract partition", 1, partition);
  run(2, "subdivision Delaunay", 5, table_delaunay);
  run(3, "Delaunay audit", 120, audit);
  run(4, "convergence order", 600, convergence);
  run(5, "predicate equivalence", 120, predicates);
  run(6, "quality heuristics", 60, quality_suite);
  run(7, "flip tables", 60, flips);
  run(8, "quality improvement", 300, improvement);
  run(9, "roughness", 120, roughness);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

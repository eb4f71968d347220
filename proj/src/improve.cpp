#include "pentamesh/flips.hpp"
#include "pentamesh/quality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace pentamesh {

double average_minimum_quality(std::vector<double> q, double fraction) {
  if (q.empty())
    return 0.0;
  size_t k = static_cast<size_t>(std::llround(fraction * static_cast<double>(q.size())));
  k = std::clamp<size_t>(k, 1, q.size());
  std::nth_element(q.begin(), q.begin() + (k - 1), q.end());
  std::sort(q.begin(), q.begin() + k);
  double s = 0.0;
  for (size_t i = 0; i < k; ++i)
    s += q[i];
  return s / static_cast<double>(k);
}

namespace {

constexpr std::array<double, 4> kFractions{0.01, 0.05, 0.10, 0.20};

std::vector<double> all_qualities(const Mesh4 &mesh, int heuristic, const MetricField &field) {
  std::vector<double> q;
  for (int32_t e : mesh.alive_elements())
    q.push_back(element_quality(mesh.points(e), field, heuristic));
  return q;
}

} // namespace

ImprovementReport improve_quality(Mesh4 &mesh, int heuristic, const MetricField &field, const ImproveOptions &opts) {
  if (heuristic < 1 || heuristic > 3)
    throw std::invalid_argument("quality heuristic must be 1, 2 or 3");
  ImprovementReport rep;
  rep.elements_before = mesh.alive_count();
  size_t live_vertices = 0;
  for (size_t v = 0; v < mesh.vertex_count(); ++v)
    live_vertices += mesh.vertex_alive(static_cast<int32_t>(v)) ? 1 : 0;
  rep.vertices_before = live_vertices;
  rep.hypervolume_before = mesh.total_hypervolume();
  rep.hypervolume_exact_before = mesh.total_hypervolume_exact();

  std::vector<double> q(mesh.slot_count(), 0.0);
  std::vector<uint8_t> frozen(mesh.slot_count(), 0), tried(mesh.slot_count(), 0);
  using Entry = std::pair<double, int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (int32_t e : mesh.alive_elements()) {
    q[e] = element_quality(mesh.points(e), field, heuristic);
    heap.emplace(q[e], e);
  }
  const auto initial = all_qualities(mesh, heuristic, field);
  rep.min_quality_before = initial.empty() ? 0.0 : *std::min_element(initial.begin(), initial.end());

  const CandidateOptions copts{opts.point_inserting, opts.point_removing};
  while (!heap.empty()) {
    if (opts.max_flips && rep.flips >= opts.max_flips)
      break;
    const auto [qe, e] = heap.top();
    heap.pop();
    if (!mesh.alive(e) || frozen[e] || tried[e] || q[e] != qe)
      continue;
    tried[e] = 1;
    ++rep.starters;

    const auto cands = find_candidates(mesh, e, copts);
    int best = -1;
    double best_gain = 0.0;
    int32_t best_low = 0;
    std::vector<double> best_after;
    std::vector<double> after;
    for (size_t i = 0; i < cands.size(); ++i) {
      const auto &c = cands[i];
      bool skip = false;
      double before = std::numeric_limits<double>::infinity();
      for (int32_t x : c.elements) {
        if (frozen[x]) {
          skip = true;
          break;
        }
        before = std::min(before, q[x]);
      }
      if (skip)
        continue;
      const FlipValidation v = validate_flip(mesh, c);
      if (!v.valid)
        continue;
      after.clear();
      double amin = std::numeric_limits<double>::infinity();
      for (const auto &el : v.stage2) {
        std::array<Point4, 5> pts;
        for (int j = 0; j < 5; ++j)
          pts[j] = el[j] == kNewVertex ? *c.new_point : mesh.vertex(el[j]);
        const double qq = element_quality(pts, field, heuristic);
        after.push_back(qq);
        amin = std::min(amin, qq);
      }
      if (!(amin > before))
        continue;
      const double gain = amin - before;
      const int32_t low = *std::min_element(c.elements.begin(), c.elements.end());
      bool better = best < 0 || gain > best_gain;
      if (!better && gain == best_gain) {
        const auto bk = static_cast<int>(cands[best].kind), ck = static_cast<int>(c.kind);
        better = ck < bk || (ck == bk && low < best_low);
      }
      if (better) {
        best = static_cast<int>(i);
        best_gain = gain;
        best_low = low;
        best_after = after;
      }
    }
    if (best < 0)
      continue;

    const FlipReport fr = apply_flip(mesh, cands[best]);
    ++rep.flips;
    ++rep.histogram[fr.kind];
    if (mesh.slot_count() > q.size()) {
      q.resize(mesh.slot_count(), 0.0);
      frozen.resize(mesh.slot_count(), 0);
      tried.resize(mesh.slot_count(), 0);
    }
    double created_min = std::numeric_limits<double>::infinity();
    for (int32_t c : fr.created) {
      q[c] = element_quality(mesh.points(c), field, heuristic);
      frozen[c] = 1;
      created_min = std::min(created_min, q[c]);
    }
    double before = std::numeric_limits<double>::infinity();
    for (double b : best_after)
      before = std::min(before, b);
    if (!(created_min >= before - 1e-12 * std::abs(before)))
      rep.monotone = false;
  }

  rep.elements_after = mesh.alive_count();
  live_vertices = 0;
  for (size_t v = 0; v < mesh.vertex_count(); ++v)
    live_vertices += mesh.vertex_alive(static_cast<int32_t>(v)) ? 1 : 0;
  rep.vertices_after = live_vertices;
  rep.hypervolume_after = mesh.total_hypervolume();
  rep.hypervolume_exact_after = mesh.total_hypervolume_exact();
  const auto final_q = all_qualities(mesh, heuristic, field);
  rep.min_quality_after = final_q.empty() ? 0.0 : *std::min_element(final_q.begin(), final_q.end());
  for (double f : kFractions)
    rep.amq.push_back({f, average_minimum_quality(initial, f), average_minimum_quality(final_q, f)});
  return rep;
}

} // namespace pentamesh

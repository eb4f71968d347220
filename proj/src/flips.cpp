#include "pentamesh/flips.hpp"
#include "pentamesh/predicates.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

namespace pentamesh {

namespace {

struct RawTable {
  FlipKind kind;
  FlipKind reverse;
  const char *name;
  std::vector<const char *> stage1, stage2;
};

const std::vector<const char *> k6Stage1{"12345", "12456", "13456", "23457", "24567", "34567"};
const std::vector<const char *> k88Left{"12567", "23567", "34567", "14567", "12568", "23568", "34568", "14568"};
const std::vector<const char *> k88Mid{"12457", "23457", "12467", "23467", "12458", "23458", "12468", "23468"};
const std::vector<const char *> k88Right{"12357", "13457", "12367", "13467", "12358", "13458", "12368", "13468"};

const std::vector<RawTable> &forward_tables() {
  static const std::vector<RawTable> t{
      {FlipKind::F1_5, FlipKind::F5_1, "F1_5", {"12345"}, {"12346", "23456", "13456", "12456", "12356"}},
      {FlipKind::F2_4, FlipKind::F4_2, "F2_4", {"12345", "12356"}, {"12346", "12456", "23456", "13456"}},
      {FlipKind::F3_3, FlipKind::F3_3, "F3_3", {"12345", "12456", "13456"}, {"12346", "23456", "12356"}},
      {FlipKind::F4_8, FlipKind::F8_4, "F4_8", {"12345", "12456", "23456", "12346"},
       {"13457", "12357", "14567", "12567", "34567", "23567", "13467", "12367"}},
      {FlipKind::F3_9, FlipKind::F9_3, "F3_9", {"12345", "12456", "23456"},
       {"12347", "13457", "12357", "14567", "12567", "12467", "34567", "23567", "23467"}},
      {FlipKind::F6_6, FlipKind::F6_6, "F6_6", k6Stage1, {"12347", "12467", "13467", "12357", "12567", "13567"}},
      {FlipKind::F6_12a, FlipKind::F12_6a, "F6_12a", k6Stage1,
       {"12348", "12468", "13468", "12358", "12568", "13568", "23478", "24678", "34678", "23578", "25678",
        "35678"}},
      {FlipKind::F2_8, FlipKind::F8_2, "F2_8", {"12345", "12356"},
       {"12347", "23457", "13457", "12457", "23567", "13567", "12567", "12367"}},
      {FlipKind::F4_6, FlipKind::F6_4, "F4_6", {"12345", "23456", "12347", "23467"},
       {"12367", "13467", "12456", "13456", "12356", "12467"}},
      {FlipKind::F8_8v1, FlipKind::F8_8v1, "F8_8v1", k88Left, k88Mid},
      {FlipKind::F8_8v2, FlipKind::F8_8v2, "F8_8v2", k88Left, k88Right},
      {FlipKind::F8_8v3, FlipKind::F8_8v3, "F8_8v3", k88Mid, k88Right},
      {FlipKind::F4_12, FlipKind::F12_4, "F4_12", {"12346", "12356", "12347", "12357"},
       {"23468", "13468", "12468", "23568", "13568", "12568", "23478", "13478", "12478", "23578", "13578",
        "12578"}},
      {FlipKind::F6_12b, FlipKind::F12_6b, "F6_12b", {"12456", "23456", "13456", "12457", "23457", "13457"},
       {"12568", "12468", "23568", "23468", "13568", "13468", "12578", "12478", "23578", "23478", "13578",
        "13478"}},
      {FlipKind::F8_16, FlipKind::F16_8, "F8_16", k88Mid,
       {"23679", "14579", "12579", "34579", "23579", "14679", "12679", "34679", "14589", "12589", "34589",
        "23589", "14689", "12689", "34689", "23689"}},
  };
  return t;
}

constexpr std::array<std::string_view, kFlipKindCount> kNames{
    "F1_5",   "F5_1",   "F2_4",   "F4_2",   "F3_3",   "F4_8",   "F8_4",   "F3_9",  "F9_3",
    "F6_6",   "F6_12a", "F12_6a", "F2_8",   "F8_2",   "F4_6",   "F6_4",   "F8_8v1", "F8_8v2",
    "F8_8v3", "F4_12",  "F12_4",  "F6_12b", "F12_6b", "F8_16",  "F16_8",
};

std::array<int, 5> parse_tuple(const char *s) {
  std::array<int, 5> t{};
  for (int i = 0; i < 5; ++i)
    t[i] = s[i] - '0';
  return t;
}

using Mask = uint16_t;

Mask mask_of(const std::array<int, 5> &t) {
  Mask m = 0;
  for (int l : t)
    m |= static_cast<Mask>(1u << l);
  return m;
}

int popcount(Mask m) { return __builtin_popcount(m); }

// precomputed search data per kind
struct Plan {
  struct Step {
    int tuple;      // stage1 tuple to match
    int from;       // already matched tuple sharing a facet
    std::array<int, 4> facet; // shared labels
    int extra;      // remaining label of `tuple`
  };
  std::vector<int> representatives;          // stage1 tuple orbits under the table symmetries
  std::vector<std::vector<Step>> steps;      // indexed by starting tuple
  std::vector<std::vector<int>> vanishing;   // label sets (size 1..3) of stage1 faces absent from stage2
  bool connected = true;
};

void build_table(FlipTable &t) {
  std::set<int> l1, l2;
  for (const auto &tup : t.stage1)
    l1.insert(tup.begin(), tup.end());
  for (const auto &tup : t.stage2)
    l2.insert(tup.begin(), tup.end());
  t.vertex_count = static_cast<int>(l1.size());
  for (int l : l2)
    if (!l1.count(l))
      t.new_label = l;
  for (int l : l1)
    if (!l2.count(l))
      t.removed_label = l;
  Mask common = 0xFFFF;
  for (const auto &tup : t.stage1)
    common &= mask_of(tup);
  for (int l = 1; l <= 9; ++l)
    if (common & (1u << l))
      t.shared.push_back(l);
  if (t.new_label) {
    switch (t.shared.size()) {
    case 2:
      t.rule = NewVertexRule::midpoint_of_edge;
      break;
    case 3:
      t.rule = NewVertexRule::centroid_of_triangle;
      break;
    case 4:
      t.rule = NewVertexRule::centroid_of_tet;
      break;
    default:
      t.rule = NewVertexRule::interior_point;
    }
  }
}

struct Catalog {
  std::array<FlipTable, kFlipKindCount> tables;
  std::array<Plan, kFlipKindCount> plans;
};

std::vector<Mask> sorted_masks(const std::vector<std::array<int, 5>> &tuples) {
  std::vector<Mask> m;
  for (const auto &t : tuples)
    m.push_back(mask_of(t));
  std::sort(m.begin(), m.end());
  return m;
}

Mask permute(Mask m, const std::array<int, 10> &perm) {
  Mask out = 0;
  for (int l = 1; l <= 9; ++l)
    if (m & (1u << l))
      out |= static_cast<Mask>(1u << perm[l]);
  return out;
}

Plan make_plan(const FlipTable &t) {
  Plan p;
  const size_t n = t.stage1.size();
  const auto s1 = sorted_masks(t.stage1);
  const auto s2 = sorted_masks(t.stage2);

  // label symmetries preserving both stages; inserted and removed labels stay fixed
  std::vector<int> movable;
  std::set<int> labels;
  for (const auto &tup : t.stage1)
    labels.insert(tup.begin(), tup.end());
  for (int l : labels)
    if (l != t.removed_label)
      movable.push_back(l);
  std::vector<int> orbit(n);
  std::iota(orbit.begin(), orbit.end(), 0);
  std::vector<int> images = movable;
  std::sort(images.begin(), images.end());
  do {
    std::array<int, 10> perm;
    std::iota(perm.begin(), perm.end(), 0);
    for (size_t i = 0; i < movable.size(); ++i)
      perm[movable[i]] = images[i];
    std::vector<Mask> m1, m2;
    for (Mask m : s1)
      m1.push_back(permute(m, perm));
    std::sort(m1.begin(), m1.end());
    if (m1 != s1)
      continue;
    for (Mask m : s2)
      m2.push_back(permute(m, perm));
    std::sort(m2.begin(), m2.end());
    if (m2 != s2)
      continue;
    for (size_t i = 0; i < n; ++i) {
      const Mask img = permute(mask_of(t.stage1[i]), perm);
      for (size_t j = 0; j < n; ++j)
        if (mask_of(t.stage1[j]) == img)
          orbit[j] = std::min(orbit[j], orbit[i]);
    }
  } while (std::next_permutation(images.begin(), images.end()));
  // propagate minima until stable
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < n; ++i)
      if (orbit[orbit[i]] < orbit[i]) {
        orbit[i] = orbit[orbit[i]];
        changed = true;
      }
  }
  for (size_t i = 0; i < n; ++i)
    if (orbit[i] == static_cast<int>(i))
      p.representatives.push_back(static_cast<int>(i));

  p.steps.resize(n);
  for (size_t start = 0; start < n; ++start) {
    std::vector<char> done(n, 0);
    done[start] = 1;
    std::vector<int> order{static_cast<int>(start)};
    for (size_t i = 0; i < order.size(); ++i) {
      const int u = order[i];
      const Mask mu = mask_of(t.stage1[u]);
      for (size_t v = 0; v < n; ++v) {
        if (done[v])
          continue;
        const Mask mv = mask_of(t.stage1[v]);
        const Mask sh = mu & mv;
        if (popcount(sh) != 4)
          continue;
        Plan::Step st;
        st.tuple = static_cast<int>(v);
        st.from = u;
        int k = 0;
        for (int l = 1; l <= 9; ++l)
          if (sh & (1u << l))
            st.facet[k++] = l;
        const Mask ex = mv & ~sh;
        for (int l = 1; l <= 9; ++l)
          if (ex & (1u << l))
            st.extra = l;
        done[v] = 1;
        order.push_back(static_cast<int>(v));
        p.steps[start].push_back(st);
      }
    }
    if (order.size() != n)
      p.connected = false;
  }

  // faces of dimension 0..2 in stage1 that stage2 does not keep
  std::set<Mask> f1, f2;
  auto faces = [](const std::vector<std::array<int, 5>> &tuples, std::set<Mask> &out) {
    for (const auto &tup : tuples)
      for (int sub = 1; sub < 32; ++sub) {
        const int k = __builtin_popcount(sub);
        if (k > 3)
          continue;
        Mask m = 0;
        for (int i = 0; i < 5; ++i)
          if (sub & (1 << i))
            m |= static_cast<Mask>(1u << tup[i]);
        out.insert(m);
      }
  };
  faces(t.stage1, f1);
  faces(t.stage2, f2);
  for (Mask m : f1)
    if (!f2.count(m)) {
      std::vector<int> ls;
      for (int l = 1; l <= 9; ++l)
        if (m & (1u << l))
          ls.push_back(l);
      p.vanishing.push_back(ls);
    }
  return p;
}

const Catalog &catalog() {
  static const Catalog c = [] {
    Catalog cat;
    for (const auto &raw : forward_tables()) {
      FlipTable f;
      f.kind = raw.kind;
      f.reverse = raw.reverse;
      for (const char *s : raw.stage1)
        f.stage1.push_back(parse_tuple(s));
      for (const char *s : raw.stage2)
        f.stage2.push_back(parse_tuple(s));
      build_table(f);
      cat.tables[static_cast<int>(f.kind)] = f;
      if (raw.reverse != raw.kind) {
        FlipTable r;
        r.kind = raw.reverse;
        r.reverse = raw.kind;
        r.stage1 = f.stage2;
        r.stage2 = f.stage1;
        build_table(r);
        cat.tables[static_cast<int>(r.kind)] = r;
      }
    }
    for (int k = 0; k < kFlipKindCount; ++k)
      cat.plans[k] = make_plan(cat.tables[k]);
    return cat;
  }();
  return c;
}

} // namespace

std::string_view flip_name(FlipKind k) { return kNames[static_cast<int>(k)]; }

std::optional<FlipKind> flip_from_name(std::string_view name) {
  for (int i = 0; i < kFlipKindCount; ++i)
    if (kNames[i] == name)
      return static_cast<FlipKind>(i);
  return std::nullopt;
}

const std::vector<FlipKind> &all_flip_kinds() {
  static const std::vector<FlipKind> k = [] {
    std::vector<FlipKind> v;
    for (int i = 0; i < kFlipKindCount; ++i)
      v.push_back(static_cast<FlipKind>(i));
    return v;
  }();
  return k;
}

const std::vector<FlipKind> &primary_flip_kinds() {
  static const std::vector<FlipKind> k = [] {
    std::vector<FlipKind> v;
    for (const auto &raw : forward_tables())
      v.push_back(raw.kind);
    return v;
  }();
  return k;
}

const FlipTable &flip_table(FlipKind k) { return catalog().tables[static_cast<int>(k)]; }

int flip_vertex_count(int d, int k) {
  if (d < 1 || k < 1)
    throw std::invalid_argument("flip_vertex_count: d and k must be positive");
  return k == 1 ? d + 1 : d + 2;
}

namespace {

bool element_has(const Pentatope &el, int32_t v) { return std::find(el.begin(), el.end(), v) != el.end(); }

// elements holding all vertices of `face`
bool face_star_within(const Mesh4 &mesh, const std::vector<int32_t> &face, const std::vector<int32_t> &allowed) {
  for (int32_t e : mesh.vertex_star(face[0])) {
    const auto &el = mesh.element(e);
    bool all = true;
    for (size_t i = 1; i < face.size() && all; ++i)
      all = element_has(el, face[i]);
    if (all && std::find(allowed.begin(), allowed.end(), e) == allowed.end())
      return false;
  }
  return true;
}

void match_kind(const Mesh4 &mesh, int32_t starter, FlipKind kind, std::vector<FlipCandidate> &out,
                std::set<std::pair<int, std::vector<Mask>>> &seen_unused,
                std::set<std::vector<int64_t>> &seen) {
  (void)seen_unused;
  const auto &cat = catalog();
  const FlipTable &t = cat.tables[static_cast<int>(kind)];
  const Plan &plan = cat.plans[static_cast<int>(kind)];
  if (!plan.connected)
    return;
  const size_t n = t.stage1.size();
  const Pentatope &sv = mesh.element(starter);

  for (int rep : plan.representatives) {
    const auto &tup = t.stage1[rep];
    std::array<int, 5> perm{0, 1, 2, 3, 4};
    do {
      std::array<int32_t, 10> assign;
      assign.fill(Mesh4::kNone);
      for (int i = 0; i < 5; ++i)
        assign[tup[i]] = sv[perm[i]];
      std::vector<int32_t> matched(n, Mesh4::kNone);
      matched[rep] = starter;
      bool ok = true;
      for (const auto &st : plan.steps[rep]) {
        const int32_t from = matched[st.from];
        const FacetKey key = sorted_key(assign[st.facet[0]], assign[st.facet[1]], assign[st.facet[2]],
                                        assign[st.facet[3]]);
        const int lf = mesh.local_facet(from, key);
        if (lf < 0) {
          ok = false;
          break;
        }
        const int32_t nb = mesh.neighbor(from, lf);
        if (nb == Mesh4::kNone || std::find(matched.begin(), matched.end(), nb) != matched.end()) {
          ok = false;
          break;
        }
        const auto &ne = mesh.element(nb);
        int32_t w = Mesh4::kNone;
        for (int32_t v : ne)
          if (!std::binary_search(key.begin(), key.end(), v))
            w = v;
        if (assign[st.extra] != Mesh4::kNone) {
          if (assign[st.extra] != w) {
            ok = false;
            break;
          }
        } else {
          for (int l = 1; l <= 9; ++l)
            if (assign[l] == w) {
              ok = false;
              break;
            }
          if (!ok)
            break;
          assign[st.extra] = w;
        }
        matched[st.tuple] = nb;
      }
      if (!ok)
        continue;

      FlipCandidate c;
      c.kind = kind;
      c.elements = matched;
      const int nl = std::max(t.vertex_count, t.new_label);
      c.labels.assign(nl, Mesh4::kNone);
      for (int l = 1; l <= nl; ++l)
        c.labels[l - 1] = (l == t.new_label) ? kNewVertex : assign[l];

      // stage2 vertex sets identify the candidate
      std::vector<int64_t> key{static_cast<int64_t>(kind)};
      std::vector<std::vector<int32_t>> s2;
      for (const auto &tp : t.stage2) {
        std::vector<int32_t> vs;
        for (int l : tp)
          vs.push_back(c.labels[l - 1]);
        std::sort(vs.begin(), vs.end());
        s2.push_back(vs);
      }
      std::sort(s2.begin(), s2.end());
      for (const auto &vs : s2)
        key.insert(key.end(), vs.begin(), vs.end());
      if (!seen.insert(key).second)
        continue;

      bool conforming = true;
      for (const auto &face : plan.vanishing) {
        std::vector<int32_t> fv;
        for (int l : face)
          fv.push_back(assign[l]);
        if (!face_star_within(mesh, fv, matched)) {
          conforming = false;
          break;
        }
      }
      if (!conforming)
        continue;

      if (t.inserts_point()) {
        Point4 np = Point4::Zero();
        for (int l : t.shared)
          np += mesh.vertex(assign[l]);
        c.new_point = np / static_cast<double>(t.shared.size());
      }
      out.push_back(std::move(c));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

} // namespace

std::vector<FlipCandidate> find_candidates(const Mesh4 &mesh, int32_t starter, const CandidateOptions &opts) {
  std::vector<FlipCandidate> out;
  if (!mesh.alive(starter))
    return out;
  std::set<std::pair<int, std::vector<Mask>>> unused;
  std::set<std::vector<int64_t>> seen;
  for (FlipKind k : all_flip_kinds()) {
    const FlipTable &t = flip_table(k);
    if (t.inserts_point() && !opts.point_inserting)
      continue;
    if (t.removes_point() && !opts.point_removing)
      continue;
    match_kind(mesh, starter, k, out, unused, seen);
  }
  return out;
}

FlipValidation validate_flip(const Mesh4 &mesh, const FlipCandidate &cand, bool exact) {
  FlipValidation r;
  const FlipTable &t = flip_table(cand.kind);
  auto reject = [&](std::string why) {
    r.valid = false;
    r.reason = std::move(why);
    r.stage2.clear();
    return r;
  };
  if (cand.elements.size() != t.stage1.size())
    return reject("stage1 size mismatch");
  const int nl = std::max(t.vertex_count, t.new_label);
  if (static_cast<int>(cand.labels.size()) != nl)
    return reject("label map size mismatch");
  if (t.inserts_point() && !cand.new_point)
    return reject("missing new point");

  std::unordered_map<int32_t, int> label_of;
  for (int l = 1; l <= nl; ++l) {
    const int32_t v = cand.labels[l - 1];
    if (v == kNewVertex)
      continue;
    if (v < 0 || v >= static_cast<int32_t>(mesh.vertex_count()) || !mesh.vertex_alive(v))
      return reject("label maps to an invalid vertex");
    if (!label_of.emplace(v, l).second)
      return reject("label map not injective");
  }
  auto position = [&](int l) -> Point4 {
    const int32_t v = cand.labels[l - 1];
    return v == kNewVertex ? *cand.new_point : mesh.vertex(v);
  };

  // stage1 facets in owner order, as labels
  std::map<FacetKey, std::pair<std::array<int, 4>, int>> facets1; // key -> ordered labels, count
  for (size_t i = 0; i < t.stage1.size(); ++i) {
    const int32_t e = cand.elements[i];
    if (!mesh.alive(e))
      return reject("stage1 element not alive");
    const auto &el = mesh.element(e);
    std::array<int, 5> lab;
    for (int j = 0; j < 5; ++j) {
      auto it = label_of.find(el[j]);
      if (it == label_of.end())
        return reject("stage1 element does not match its tuple");
      lab[j] = it->second;
    }
    std::array<int, 5> a = lab, b = t.stage1[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b)
      return reject("stage1 element does not match its tuple");
    for (int k = 0; k < 5; ++k) {
      std::array<int, 4> f;
      for (int j = 0; j < 4; ++j)
        f[j] = lab[kCanonicalFacets[k][j]];
      const FacetKey key = sorted_key(f[0], f[1], f[2], f[3]);
      auto [it, fresh] = facets1.emplace(key, std::make_pair(f, 0));
      ++it->second.second;
      (void)fresh;
    }
  }

  // orient stage2 from the stage1 boundary, then across internal facets
  const size_t n2 = t.stage2.size();
  std::vector<std::array<int, 5>> oriented(n2);
  std::vector<char> done(n2, 0);
  std::vector<size_t> queue;
  for (size_t i = 0; i < n2 && queue.empty(); ++i) {
    const auto &tp = t.stage2[i];
    for (int skip = 0; skip < 5; ++skip) {
      std::array<int, 4> f;
      for (int j = 0, m = 0; j < 5; ++j)
        if (j != skip)
          f[m++] = tp[j];
      auto it = facets1.find(sorted_key(f[0], f[1], f[2], f[3]));
      if (it != facets1.end() && it->second.second == 1) {
        const auto &of = it->second.first;
        oriented[i] = {of[0], of[1], of[2], of[3], tp[skip]};
        done[i] = 1;
        queue.push_back(i);
        break;
      }
    }
  }
  if (queue.empty())
    return reject("stage2 shares no boundary facet with stage1");
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    const auto &a = oriented[queue[qi]];
    for (int k = 0; k < 5; ++k) {
      std::array<int, 4> f;
      for (int j = 0; j < 4; ++j)
        f[j] = a[kCanonicalFacets[k][j]];
      const FacetKey key = sorted_key(f[0], f[1], f[2], f[3]);
      for (size_t j = 0; j < n2; ++j) {
        if (j == queue[qi])
          continue;
        const auto &tp = t.stage2[j];
        int other = 0, hits = 0;
        for (int l : tp) {
          if (std::binary_search(key.begin(), key.end(), l))
            ++hits;
          else
            other = l;
        }
        if (hits != 4)
          continue;
        const std::array<int, 5> want{f[1], f[0], f[2], f[3], other};
        if (!done[j]) {
          oriented[j] = want;
          done[j] = 1;
          queue.push_back(j);
        } else {
          // same parity check through the sorted permutation sign
          auto parity = [](std::array<int, 5> p) {
            int s = 0;
            for (int x = 0; x < 5; ++x)
              for (int y = x + 1; y < 5; ++y)
                if (p[x] > p[y])
                  ++s;
            return s % 2;
          };
          if (parity(oriented[j]) != parity(want))
            return reject("stage2 orientation is inconsistent");
        }
      }
    }
  }
  if (queue.size() != n2)
    return reject("stage2 is not facet-connected");

  double vol1 = 0.0, vol2 = 0.0;
  mpq_class ex1 = 0, ex2 = 0;
  for (size_t i = 0; i < t.stage1.size(); ++i) {
    const auto pts = mesh.points(cand.elements[i]);
    vol1 += hypervolume(pts);
    if (exact)
      ex1 += hypervolume_exact(pts);
  }
  r.stage2.reserve(n2);
  for (size_t i = 0; i < n2; ++i) {
    std::array<Point4, 5> pts;
    Pentatope el;
    for (int j = 0; j < 5; ++j) {
      pts[j] = position(oriented[i][j]);
      el[j] = cand.labels[oriented[i][j] - 1];
    }
    if (orientation4(pts).sign <= 0)
      return reject("stage2 element is not positively oriented");
    vol2 += hypervolume(pts);
    if (exact)
      ex2 += hypervolume_exact(pts);
    r.stage2.push_back(el);
  }
  if (std::abs(vol2 - vol1) > 1e-12 * std::max(std::abs(vol1), std::abs(vol2)))
    return reject("hypervolume not conserved");
  if (exact && ex1 != ex2)
    return reject("hypervolume not conserved exactly");

  std::multiset<FacetKey> b1, b2;
  for (const auto &[key, v] : facets1)
    if (v.second == 1)
      b1.insert(key);
  std::map<FacetKey, int> c2;
  for (const auto &tp : t.stage2)
    for (int skip = 0; skip < 5; ++skip) {
      std::array<int, 4> f;
      for (int j = 0, m = 0; j < 5; ++j)
        if (j != skip)
          f[m++] = tp[j];
      ++c2[sorted_key(f[0], f[1], f[2], f[3])];
    }
  for (const auto &[key, c] : c2) {
    if (c > 2)
      return reject("stage2 facet used more than twice");
    if (c == 1)
      b2.insert(key);
  }
  if (b1 != b2)
    return reject("boundary facets not preserved");
  r.valid = true;
  return r;
}

FlipReport apply_flip(Mesh4 &mesh, const FlipCandidate &cand) {
  FlipValidation v = validate_flip(mesh, cand);
  if (!v.valid)
    throw FlipError("flip rejected: " + v.reason);
  const FlipTable &t = flip_table(cand.kind);
  FlipReport rep;
  rep.kind = cand.kind;
  if (t.inserts_point()) {
    rep.new_vertex = mesh.add_vertex(*cand.new_point);
    for (auto &el : v.stage2)
      for (auto &x : el)
        if (x == kNewVertex)
          x = rep.new_vertex;
  }
  rep.created = mesh.replace(cand.elements, v.stage2);
  if (t.removes_point()) {
    rep.removed_vertex = cand.labels[t.removed_label - 1];
    mesh.kill_vertex(rep.removed_vertex);
  }
  return rep;
}

} // namespace pentamesh

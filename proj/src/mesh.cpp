#include "pentamesh/mesh.hpp"
#include "pentamesh/predicates.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace pentamesh {

int32_t Mesh4::add_vertex(const Point4 &p, bool super) {
  if (!p.allFinite())
    throw std::invalid_argument("vertex coordinates must be finite");
  vertices_.push_back(p);
  super_.push_back(super ? 1 : 0);
  vertex_alive_.push_back(1);
  hint_.push_back(kNone);
  return static_cast<int32_t>(vertices_.size() - 1);
}

int32_t Mesh4::add_element(const Pentatope &p) {
  int32_t id;
  if (!free_.empty()) {
    id = free_.back();
    free_.pop_back();
    elements_[id] = p;
    neighbors_[id].fill(kNone);
    alive_[id] = 1;
  } else {
    id = static_cast<int32_t>(elements_.size());
    elements_.push_back(p);
    neighbors_.push_back({kNone, kNone, kNone, kNone, kNone});
    alive_.push_back(1);
    stamp_.push_back(0);
  }
  ++alive_count_;
  for (int32_t v : p)
    hint_[v] = id;
  last_created_ = id;
  return id;
}

void Mesh4::kill_element(int32_t e) {
  if (!alive(e))
    return;
  alive_[e] = 0;
  free_.push_back(e);
  --alive_count_;
}

std::vector<int32_t> Mesh4::alive_elements() const {
  std::vector<int32_t> out;
  out.reserve(alive_count_);
  for (size_t e = 0; e < elements_.size(); ++e)
    if (alive_[e])
      out.push_back(static_cast<int32_t>(e));
  return out;
}

FacetKey Mesh4::facet_key(int32_t e, int k) const {
  const auto &p = elements_[e];
  const auto &f = kCanonicalFacets[k];
  return sorted_key(p[f[0]], p[f[1]], p[f[2]], p[f[3]]);
}

int Mesh4::local_facet(int32_t e, const FacetKey &key) const {
  const auto &p = elements_[e];
  int missing = -1;
  for (int i = 0; i < 5; ++i) {
    if (!std::binary_search(key.begin(), key.end(), p[i])) {
      if (missing >= 0)
        return -1;
      missing = i;
    }
  }
  if (missing < 0)
    return -1;
  for (int k = 0; k < 5; ++k)
    if (kFacetOpposite[k] == missing)
      return k;
  return -1;
}

uint32_t Mesh4::next_stamp() const {
  if (++stamp_counter_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0u);
    stamp_counter_ = 1;
  }
  return stamp_counter_;
}

std::vector<int32_t> Mesh4::vertex_star(int32_t v) const {
  std::vector<int32_t> out;
  int32_t start = hint_[v];
  auto contains = [&](int32_t e) {
    const auto &p = elements_[e];
    return std::find(p.begin(), p.end(), v) != p.end();
  };
  if (start == kNone || !alive(start) || !contains(start)) {
    start = kNone;
    for (size_t e = 0; e < elements_.size(); ++e)
      if (alive_[e] && contains(static_cast<int32_t>(e))) {
        start = static_cast<int32_t>(e);
        break;
      }
    if (start == kNone)
      return out;
  }
  const uint32_t s = next_stamp();
  std::vector<int32_t> stack{start};
  stamp_[start] = s;
  while (!stack.empty()) {
    const int32_t e = stack.back();
    stack.pop_back();
    out.push_back(e);
    for (int k = 0; k < 5; ++k) {
      if (elements_[e][kFacetOpposite[k]] == v)
        continue;
      const int32_t n = neighbors_[e][k];
      if (n != kNone && stamp_[n] != s) {
        stamp_[n] = s;
        stack.push_back(n);
      }
    }
  }
  return out;
}

void Mesh4::rebuild_adjacency() {
  std::unordered_map<FacetKey, std::pair<int32_t, int>, FacetKeyHash> open;
  open.reserve(alive_count_ * 3);
  for (size_t ei = 0; ei < elements_.size(); ++ei) {
    if (!alive_[ei])
      continue;
    const auto e = static_cast<int32_t>(ei);
    neighbors_[e].fill(kNone);
    for (int k = 0; k < 5; ++k) {
      const FacetKey key = facet_key(e, k);
      auto it = open.find(key);
      if (it == open.end()) {
        open.emplace(key, std::make_pair(e, k));
      } else {
        const auto [o, ok] = it->second;
        neighbors_[e][k] = o;
        neighbors_[o][ok] = e;
        open.erase(it);
      }
    }
  }
}

std::vector<int32_t> Mesh4::replace(const std::vector<int32_t> &removed, const std::vector<Pentatope> &added) {
  struct Outside {
    int32_t elem;
    int facet;
    bool used;
  };
  std::unordered_map<FacetKey, Outside, FacetKeyHash> boundary;
  const uint32_t s = next_stamp();
  for (int32_t e : removed) {
    if (!alive(e))
      throw std::logic_error("replace: element already dead");
    stamp_[e] = s;
  }
  for (int32_t e : removed) {
    for (int k = 0; k < 5; ++k) {
      const int32_t n = neighbors_[e][k];
      if (n != kNone && stamp_[n] == s)
        continue;
      const FacetKey key = facet_key(e, k);
      const int nk = n == kNone ? -1 : local_facet(n, key);
      if (!boundary.emplace(key, Outside{n, nk, false}).second)
        throw std::logic_error("replace: boundary facet repeated");
    }
  }
  for (int32_t e : removed)
    kill_element(e);

  std::vector<int32_t> ids;
  ids.reserve(added.size());
  std::unordered_map<FacetKey, std::pair<int32_t, int>, FacetKeyHash> open;
  for (const auto &p : added) {
    const int32_t id = add_element(p);
    stamp_[id] = 0;
    ids.push_back(id);
    for (int k = 0; k < 5; ++k) {
      const FacetKey key = facet_key(id, k);
      auto b = boundary.find(key);
      if (b != boundary.end()) {
        if (b->second.used)
          throw std::logic_error("replace: boundary facet covered twice");
        b->second.used = true;
        neighbors_[id][k] = b->second.elem;
        if (b->second.elem != kNone)
          neighbors_[b->second.elem][b->second.facet] = id;
        continue;
      }
      auto it = open.find(key);
      if (it == open.end()) {
        open.emplace(key, std::make_pair(id, k));
      } else {
        neighbors_[id][k] = it->second.first;
        neighbors_[it->second.first][it->second.second] = id;
        open.erase(it);
      }
    }
  }
  if (!open.empty())
    throw std::logic_error("replace: new elements leave unmatched interior facets");
  for (const auto &[key, o] : boundary)
    if (!o.used)
      throw std::logic_error("replace: boundary facet left uncovered");
  return ids;
}

void Mesh4::remove_super_elements() {
  std::vector<int32_t> doomed;
  for (size_t e = 0; e < elements_.size(); ++e) {
    if (!alive_[e])
      continue;
    for (int32_t v : elements_[e])
      if (super_[v]) {
        doomed.push_back(static_cast<int32_t>(e));
        break;
      }
  }
  for (int32_t e : doomed)
    kill_element(e);
  for (int32_t e : doomed)
    for (int k = 0; k < 5; ++k) {
      const int32_t n = neighbors_[e][k];
      if (n != kNone && alive_[n])
        for (int j = 0; j < 5; ++j)
          if (neighbors_[n][j] == e)
            neighbors_[n][j] = kNone;
    }
  for (size_t v = 0; v < vertices_.size(); ++v)
    if (super_[v])
      vertex_alive_[v] = 0;
}

double Mesh4::total_hypervolume() const {
  double s = 0.0;
  for (size_t e = 0; e < elements_.size(); ++e)
    if (alive_[e])
      s += hypervolume(points(static_cast<int32_t>(e)));
  return s;
}

mpq_class Mesh4::total_hypervolume_exact() const {
  mpq_class s = 0;
  for (size_t e = 0; e < elements_.size(); ++e)
    if (alive_[e])
      s += hypervolume_exact(points(static_cast<int32_t>(e)));
  return s;
}

Mesh4::Check Mesh4::check_invariants(bool exact_orientation) const {
  Check c;
  auto fail = [&](const std::string &msg) {
    c.ok = false;
    if (c.problems.size() < 50)
      c.problems.push_back(msg);
  };
  std::unordered_map<FacetKey, int, FacetKeyHash> count;
  size_t n_alive = 0;
  for (size_t ei = 0; ei < elements_.size(); ++ei) {
    if (!alive_[ei])
      continue;
    ++n_alive;
    const auto e = static_cast<int32_t>(ei);
    const auto &p = elements_[e];
    auto sorted = p;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail("element " + std::to_string(e) + " repeats a vertex");
    for (int32_t v : p)
      if (v < 0 || v >= static_cast<int32_t>(vertices_.size()) || !vertex_alive_[v])
        fail("element " + std::to_string(e) + " references a dead or missing vertex");
    if (exact_orientation && orientation4(points(e)).sign <= 0)
      fail("element " + std::to_string(e) + " is not positively oriented");
    for (int k = 0; k < 5; ++k) {
      const FacetKey key = facet_key(e, k);
      if (++count[key] > 2)
        fail("facet shared by more than two elements");
      const int32_t n = neighbors_[e][k];
      if (n == kNone)
        continue;
      if (!alive(n)) {
        fail("element " + std::to_string(e) + " links to a dead neighbor");
        continue;
      }
      const int nk = local_facet(n, key);
      if (nk < 0 || neighbors_[n][nk] != e)
        fail("adjacency between " + std::to_string(e) + " and " + std::to_string(n) + " is not symmetric");
    }
  }
  if (n_alive != alive_count_)
    fail("alive count out of sync");
  for (size_t ei = 0; ei < elements_.size(); ++ei) {
    if (!alive_[ei])
      continue;
    for (int k = 0; k < 5; ++k)
      if (neighbors_[ei][k] == kNone && count[facet_key(static_cast<int32_t>(ei), k)] == 2)
        fail("shared facet of element " + std::to_string(ei) + " is not linked");
  }
  return c;
}

} // namespace pentamesh

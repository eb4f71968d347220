#pragma once

#include "pentamesh/geometry.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace pentamesh {

class Mesh4 {
public:
  static constexpr int32_t kNone = -1;

  int32_t add_vertex(const Point4 &p, bool super = false);
  // stores the element without linking neighbors
  int32_t add_element(const Pentatope &p);
  void kill_element(int32_t e);
  void kill_vertex(int32_t v) { vertex_alive_[v] = 0; }

  size_t vertex_count() const { return vertices_.size(); }
  const std::vector<Point4> &vertices() const { return vertices_; }
  const Point4 &vertex(int32_t v) const { return vertices_[v]; }
  bool is_super(int32_t v) const { return super_[v] != 0; }
  bool vertex_alive(int32_t v) const { return vertex_alive_[v] != 0; }

  size_t slot_count() const { return elements_.size(); }
  size_t alive_count() const { return alive_count_; }
  bool alive(int32_t e) const { return e >= 0 && e < static_cast<int32_t>(alive_.size()) && alive_[e]; }
  const Pentatope &element(int32_t e) const { return elements_[e]; }
  std::array<Point4, 5> points(int32_t e) const { return gather(vertices_, elements_[e]); }
  int32_t neighbor(int32_t e, int k) const { return neighbors_[e][k]; }
  std::vector<int32_t> alive_elements() const;
  int32_t last_created() const { return last_created_; }

  // local facet index of e whose vertex set equals key, or -1
  int local_facet(int32_t e, const FacetKey &key) const;
  FacetKey facet_key(int32_t e, int k) const;
  int32_t vertex_hint(int32_t v) const { return hint_[v]; }
  std::vector<int32_t> vertex_star(int32_t v) const;

  void rebuild_adjacency();
  // removes `removed` and inserts `added`, which must tile the same region; links neighbors locally
  std::vector<int32_t> replace(const std::vector<int32_t> &removed, const std::vector<Pentatope> &added);

  void remove_super_elements();

  double total_hypervolume() const;
  mpq_class total_hypervolume_exact() const;

  // diagonal of the bounding tesseract, used for snapping tolerances
  double scale() const { return scale_; }
  void set_scale(double s) { scale_ = s; }

  struct Check {
    bool ok = true;
    std::vector<std::string> problems;
  };
  Check check_invariants(bool exact_orientation = true) const;

  // per-slot scratch stamp for traversals
  uint32_t next_stamp() const;
  bool stamped(int32_t e, uint32_t s) const { return stamp_[e] == s; }
  void stamp(int32_t e, uint32_t s) const { stamp_[e] = s; }

private:
  std::vector<Point4> vertices_;
  std::vector<uint8_t> super_;
  std::vector<uint8_t> vertex_alive_;
  std::vector<int32_t> hint_;

  std::vector<Pentatope> elements_;
  std::vector<std::array<int32_t, 5>> neighbors_;
  std::vector<uint8_t> alive_;
  std::vector<int32_t> free_;
  size_t alive_count_ = 0;
  int32_t last_created_ = kNone;
  double scale_ = 1.0;

  mutable std::vector<uint32_t> stamp_;
  mutable uint32_t stamp_counter_ = 0;
};

} // namespace pentamesh

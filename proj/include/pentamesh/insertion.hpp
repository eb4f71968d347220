#pragma once

#include "pentamesh/mesh.hpp"

#include <optional>
#include <stdexcept>

namespace pentamesh {

class GhostPointError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DuplicateVertexError : public std::runtime_error {
public:
  explicit DuplicateVertexError(int32_t existing)
      : std::runtime_error("point coincides with vertex " + std::to_string(existing)), vertex(existing) {}
  int32_t vertex;
};

class CavityError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

struct InsideResult {
  bool inside = false;
  int exit_facet = -1;
  std::array<double, 5> orientations{}; // temporary pentatope per local facet
};

// tol < 0 picks the default local tolerance
InsideResult inside_element(const Mesh4 &mesh, int32_t elem, const Point4 &p, double tol = -1.0);

struct WalkStats {
  size_t steps = 0;
  bool fallback_used = false;
};

struct WalkResult {
  int32_t element = Mesh4::kNone;
  WalkStats stats;
};

WalkResult find_base_element(const Mesh4 &mesh, const Point4 &p, int32_t start = Mesh4::kNone);

struct BoundaryFacet {
  int32_t owner;   // cavity element
  int facet;       // local facet of owner
  int32_t outside; // neighbor across, or Mesh4::kNone on the hull
};

struct Cavity {
  int32_t base = Mesh4::kNone;
  std::vector<int32_t> elements;
  std::vector<BoundaryFacet> boundary;
};

std::vector<BoundaryFacet> cavity_boundary(const Mesh4 &mesh, const std::vector<int32_t> &elements);

Cavity build_cavity(const Mesh4 &mesh, int32_t base, const Point4 &p, const Metric4 &m);

// metric-normalized visibility of p from a facet, positive when p lies on the inner side
double visibility_q(const std::array<Point4, 4> &facet, const Point4 &p, const Metric4 &m);

struct VisibilityStats {
  size_t removed = 0;
  size_t rounds = 0;
};

Cavity enforce_visibility(const Mesh4 &mesh, Cavity cavity, const Point4 &p, const Metric4 &m,
                          double q_tol = 1e-16, VisibilityStats *stats = nullptr);

struct InsertOptions {
  double q_tol = 1e-16;
  double snap = 1e-12; // relative to the mesh scale
  int32_t start = Mesh4::kNone;
};

struct InsertionReport {
  int32_t vertex = Mesh4::kNone;
  int32_t base = Mesh4::kNone;
  WalkStats walk;
  size_t cavity_initial = 0;
  size_t visibility_removed = 0;
  size_t created = 0;
};

InsertionReport insert_point(Mesh4 &mesh, const Point4 &p, const MetricField &field, const InsertOptions &opts = {});

struct TriangulateOptions {
  int n_b = 24;
  double margin = 1000.0;
  bool remove_super = true;
  bool shuffle = false;
  uint64_t seed = 0;
  bool skip_duplicates = false;
  double q_tol = 1e-16;
};

struct TriangulationStats {
  size_t inserted = 0;
  size_t duplicates_skipped = 0;
  size_t walk_steps = 0;
  size_t walk_fallbacks = 0;
  size_t visibility_removed = 0;
};

Mesh4 triangulate(const std::vector<Point4> &pts, const MetricField &field, const TriangulateOptions &opts = {},
                  TriangulationStats *stats = nullptr);

struct DelaunayViolation {
  int32_t vertex;
  int32_t element;
};

struct DelaunayAudit {
  size_t checked = 0;
  std::vector<DelaunayViolation> violations;
  bool ok() const { return violations.empty(); }
};

// tol: strictly-inside values at or below tol * scale^6 are forgiven; 0 keeps exact signs
DelaunayAudit audit_delaunay(const Mesh4 &mesh, const MetricField &field, double tol = 0.0);

} // namespace pentamesh

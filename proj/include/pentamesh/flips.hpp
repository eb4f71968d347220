#pragma once

#include "pentamesh/mesh.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pentamesh {

enum class FlipKind : uint8_t {
  F1_5, F5_1, F2_4, F4_2, F3_3, F4_8, F8_4, F3_9, F9_3, F6_6, F6_12a, F12_6a, F2_8,
  F8_2, F4_6, F6_4, F8_8v1, F8_8v2, F8_8v3, F4_12, F12_4, F6_12b, F12_6b, F8_16, F16_8,
};

inline constexpr int kFlipKindCount = 25;

std::string_view flip_name(FlipKind k);
std::optional<FlipKind> flip_from_name(std::string_view name);
const std::vector<FlipKind> &all_flip_kinds();
// the 15 table-defining kinds (reverses excluded)
const std::vector<FlipKind> &primary_flip_kinds();

enum class NewVertexRule { none, midpoint_of_edge, centroid_of_triangle, centroid_of_tet, interior_point };

struct FlipTable {
  FlipKind kind;
  FlipKind reverse;
  std::vector<std::array<int, 5>> stage1; // labels from 1
  std::vector<std::array<int, 5>> stage2;
  int vertex_count = 0;   // distinct labels in stage1
  int new_label = 0;      // label present only in stage2
  int removed_label = 0;  // label present only in stage1
  std::vector<int> shared; // labels common to every stage1 tuple
  NewVertexRule rule = NewVertexRule::none;
  bool inserts_point() const { return new_label != 0; }
  bool removes_point() const { return removed_label != 0; }
};

const FlipTable &flip_table(FlipKind k);

int flip_vertex_count(int d, int k);

inline constexpr int32_t kNewVertex = -2;

struct FlipCandidate {
  FlipKind kind;
  std::vector<int32_t> elements;  // matched to stage1, same order
  std::vector<int32_t> labels;    // labels[l-1] = mesh vertex, kNewVertex for the inserted point
  std::optional<Point4> new_point;
};

struct CandidateOptions {
  bool point_inserting = true;
  bool point_removing = true;
};

std::vector<FlipCandidate> find_candidates(const Mesh4 &mesh, int32_t starter, const CandidateOptions &opts = {});

struct FlipValidation {
  bool valid = false;
  std::string reason;
  std::vector<Pentatope> stage2; // positively oriented; the new point appears as kNewVertex
};

FlipValidation validate_flip(const Mesh4 &mesh, const FlipCandidate &cand, bool exact = false);

struct FlipReport {
  FlipKind kind;
  std::vector<int32_t> created;
  int32_t new_vertex = Mesh4::kNone;
  int32_t removed_vertex = Mesh4::kNone;
};

class FlipError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

FlipReport apply_flip(Mesh4 &mesh, const FlipCandidate &cand);

struct ImproveOptions {
  bool point_inserting = true;
  bool point_removing = true;
  size_t max_flips = 0; // 0 means unbounded
};

struct AmqRow {
  double fraction;
  double initial;
  double final;
};

struct ImprovementReport {
  size_t elements_before = 0, elements_after = 0;
  size_t vertices_before = 0, vertices_after = 0;
  size_t starters = 0;
  size_t flips = 0;
  std::map<FlipKind, size_t> histogram;
  std::vector<AmqRow> amq; // 1, 5, 10, 20 percent
  double hypervolume_before = 0.0, hypervolume_after = 0.0;
  mpq_class hypervolume_exact_before, hypervolume_exact_after;
  double min_quality_before = 0.0, min_quality_after = 0.0;
  bool monotone = true; // every executed flip raised the affected minimum
};

// mean of the worst `fraction` share of qualities (at least one element)
double average_minimum_quality(std::vector<double> q, double fraction);

ImprovementReport improve_quality(Mesh4 &mesh, int heuristic, const MetricField &field, const ImproveOptions &opts = {});

} // namespace pentamesh

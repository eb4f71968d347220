#pragma once

#include "pentamesh/flips.hpp"
#include "pentamesh/predicates.hpp"
#include "pentamesh/roughness2d.hpp"

#include <iosfwd>
#include <random>
#include <vector>

namespace pentamesh {

struct ConvergenceConfig {
  double R = 1.0;
  double L = 4.0;
  std::vector<double> h_levels{0.8, 0.6, 0.45, 0.32};
  double time_ratio = 1.0; // h_time = time_ratio * h_sphere
  bool anisotropic = false;
  double c0 = 1.0;
  double beta = 0.1;
  uint64_t seed = 1;
  double h_exponent = -1.0 / 3.0; // -0.25 for the volume-based spacing
  int n_b = 24;
  double margin = 1000.0;
};

struct ConvergenceRow {
  int level = 0;
  size_t n_points = 0;
  size_t n_pentatopes = 0;
  double hv = 0.0;
  double error = 0.0;
  double h = 0.0;
  double seconds = 0.0;
};

struct ConvergenceResult {
  std::vector<ConvergenceRow> rows;
  double slope = 0.0;
};

ConvergenceResult convergence_study(const ConvergenceConfig &cfg);
double least_squares_slope(const std::vector<double> &x, const std::vector<double> &y);
void write_convergence_csv(std::ostream &out, const ConvergenceResult &r);

struct PredicateStudyConfig {
  std::vector<int> dims{2, 3, 4, 5, 10, 20};
  int trials = 100;
  uint64_t seed = 1;
};

struct PredicateStudyRow {
  int d = 0;
  DecompositionKind kind = DecompositionKind::cholesky;
  double mean_difference = 0.0;
  double mean_decomposition_error = 0.0;
};

std::vector<PredicateStudyRow> predicate_comparison_study(const PredicateStudyConfig &cfg);
void write_predicate_csv(std::ostream &out, const std::vector<PredicateStudyRow> &rows);

struct ExactComparison {
  int trials = 0;
  int zero_differences = 0;
  int nonzero_standard = 0;
};

// rational M = S^T S and rational points; the standard route uses G = S
ExactComparison exact_predicate_comparison(int d, int trials, uint64_t seed);

struct QualityStudyConfig {
  std::vector<size_t> sizes{50, 100, 150, 200, 250, 300};
  int heuristic = 1;
  uint64_t seed = 1;
  ImproveOptions improve;
};

struct QualityStudyRow {
  size_t n_points = 0;
  ImprovementReport report;
  double seconds = 0.0;
};

std::vector<QualityStudyRow> quality_study(const QualityStudyConfig &cfg);
void write_quality_csv(std::ostream &out, const std::vector<QualityStudyRow> &rows);
void write_flip_histogram_csv(std::ostream &out, const std::vector<QualityStudyRow> &rows);

CanonicalQuad random_canonical_quad(std::mt19937_64 &rng);

struct RoughnessTrial {
  uint64_t trial = 0;
  CanonicalQuad cq;
  std::array<double, 4> f{};
  double c_v = 1.0;
  RelativeRoughness r;
};

std::vector<RoughnessTrial> roughness_trials(size_t n, uint64_t seed);
void write_roughness_csv(std::ostream &out, const std::vector<RoughnessTrial> &trials);

} // namespace pentamesh

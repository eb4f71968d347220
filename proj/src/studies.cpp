#include "pentamesh/studies.hpp"
#include "pentamesh/generators.hpp"
#include "pentamesh/insertion.hpp"
#include "pentamesh/mesh_io.hpp"

#include <chrono>
#include <cmath>
#include <ostream>

namespace pentamesh {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const char *kind_name(DecompositionKind k) { return k == DecompositionKind::cholesky ? "cholesky" : "sqrt"; }

} // namespace

double least_squares_slope(const std::vector<double> &x, const std::vector<double> &y) {
  const size_t n = x.size();
  if (n < 2 || y.size() != n)
    throw std::invalid_argument("slope needs at least two points");
  double mx = 0, my = 0;
  for (size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

ConvergenceResult convergence_study(const ConvergenceConfig &cfg) {
  if (cfg.h_levels.size() < 3)
    throw std::invalid_argument("convergence study needs at least three levels");
  const MetricField field = cfg.anisotropic ? MetricField::speed(cfg.c0, cfg.beta, cfg.L / 2.0) : MetricField::identity();
  const double exact = hypercylinder_hypervolume(cfg.R, cfg.L);
  ConvergenceResult res;
  std::vector<double> lx, ly;
  int level = 0;
  for (double h : cfg.h_levels) {
    const auto t0 = std::chrono::steady_clock::now();
    HypercylinderSampling s;
    s.R = cfg.R;
    s.L = cfg.L;
    s.h_sphere = h;
    s.h_time = h * cfg.time_ratio;
    s.seed = cfg.seed + static_cast<uint64_t>(level);
    const auto pts = generate_hypercylinder_points(s);
    TriangulateOptions opts;
    opts.n_b = cfg.n_b;
    opts.margin = cfg.margin;
    const Mesh4 mesh = triangulate(pts, field, opts);
    ConvergenceRow row;
    row.level = ++level;
    row.n_points = pts.size();
    row.n_pentatopes = mesh.alive_count();
    row.hv = mesh.total_hypervolume();
    row.error = std::abs(exact - row.hv);
    row.h = std::pow(static_cast<double>(row.n_pentatopes), cfg.h_exponent);
    row.seconds = seconds_since(t0);
    lx.push_back(std::log(row.h));
    ly.push_back(std::log(row.error));
    res.rows.push_back(row);
  }
  res.slope = least_squares_slope(lx, ly);
  return res;
}

void write_convergence_csv(std::ostream &out, const ConvergenceResult &r) {
  out << "level,n_points,n_pentatopes,hv_approx,hv_error,h,seconds\n";
  for (const auto &row : r.rows)
    out << row.level << ',' << row.n_points << ',' << row.n_pentatopes << ',' << format_double(row.hv) << ','
        << format_double(row.error) << ',' << format_double(row.h) << ',' << format_double(row.seconds) << '\n';
  out << "# slope," << format_double(r.slope) << '\n';
}

std::vector<PredicateStudyRow> predicate_comparison_study(const PredicateStudyConfig &cfg) {
  std::vector<PredicateStudyRow> rows;
  for (int d : cfg.dims) {
    std::mt19937_64 rng(cfg.seed * 1000003ull + static_cast<uint64_t>(d));
    std::uniform_real_distribution<double> us(0.0, 10.0), up(0.0, 1.0);
    double diff[2] = {0, 0}, err[2] = {0, 0};
    for (int t = 0; t < cfg.trials; ++t) {
      Eigen::MatrixXd S(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
          S(i, j) = us(rng);
      const Eigen::MatrixXd M = S.transpose() * S;
      std::vector<Eigen::VectorXd> pts(d + 2, Eigen::VectorXd(d));
      for (auto &p : pts)
        for (int k = 0; k < d; ++k)
          p[k] = up(rng);
      const double alt = inhypersphere_alternative_float(M, pts);
      for (int k = 0; k < 2; ++k) {
        const auto dec = decompose_metric(M, k == 0 ? DecompositionKind::cholesky : DecompositionKind::sqrt);
        const double stdv = inhypersphere_standard_float(dec.G, pts);
        diff[k] += std::abs(stdv - alt) / std::abs(stdv);
        err[k] += dec.reconstruction_error;
      }
    }
    for (int k = 0; k < 2; ++k)
      rows.push_back({d, k == 0 ? DecompositionKind::cholesky : DecompositionKind::sqrt, diff[k] / cfg.trials,
                      err[k] / cfg.trials});
  }
  return rows;
}

void write_predicate_csv(std::ostream &out, const std::vector<PredicateStudyRow> &rows) {
  out << "d,kind,mean_normalized_difference,mean_decomposition_error\n";
  for (const auto &r : rows)
    out << r.d << ',' << kind_name(r.kind) << ',' << format_double(r.mean_difference) << ','
        << format_double(r.mean_decomposition_error) << '\n';
}

ExactComparison exact_predicate_comparison(int d, int trials, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> us(0, 80), up(0, 64);
  ExactComparison out;
  for (int t = 0; t < trials; ++t) {
    RationalMatrix S(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        S(i, j) = mpq_class(us(rng), 8);
    const mpq_class det_s = det_exact(S);
    if (det_s == 0) {
      --t;
      continue;
    }
    const RationalMatrix M = transpose_times(S);
    std::vector<RationalVector> pts(d + 2, RationalVector(d));
    for (auto &p : pts)
      for (auto &x : p)
        x = mpq_class(up(rng), 64);
    // G = S up to a row sign, so M = G^T G exactly and det G > 0
    RationalMatrix G(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        G(i, j) = (i == 0 && det_s < 0) ? mpq_class(-S(i, j)) : S(i, j);
    const mpq_class stdv = inhypersphere_standard_exact(G, pts);
    const mpq_class alt = inhypersphere_alternative_exact(M, abs(det_s), pts);
    ++out.trials;
    if (stdv != 0)
      ++out.nonzero_standard;
    if (stdv == alt)
      ++out.zero_differences;
  }
  return out;
}

std::vector<QualityStudyRow> quality_study(const QualityStudyConfig &cfg) {
  std::vector<QualityStudyRow> rows;
  const MetricField field = MetricField::identity();
  for (size_t n : cfg.sizes) {
    if (n < 6)
      throw std::invalid_argument("quality study needs at least six points");
    const auto t0 = std::chrono::steady_clock::now();
    const auto pts = uniform_points(n, cfg.seed * 7919ull + n);
    Mesh4 mesh = triangulate(pts, field);
    QualityStudyRow row;
    row.n_points = n;
    row.report = improve_quality(mesh, cfg.heuristic, field, cfg.improve);
    row.seconds = seconds_since(t0);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_quality_csv(std::ostream &out, const std::vector<QualityStudyRow> &rows) {
  out << "n_points,elements_initial,elements_final,amq1_initial,amq1_final,amq5_initial,amq5_final,"
         "amq10_initial,amq10_final,amq20_initial,amq20_final,flips,hv_initial,hv_final,hv_exact_equal,seconds\n";
  for (const auto &r : rows) {
    const auto &rep = r.report;
    out << r.n_points << ',' << rep.elements_before << ',' << rep.elements_after;
    for (const auto &a : rep.amq)
      out << ',' << format_double(a.initial) << ',' << format_double(a.final);
    out << ',' << rep.flips << ',' << format_double(rep.hypervolume_before) << ','
        << format_double(rep.hypervolume_after) << ','
        << (rep.hypervolume_exact_before == rep.hypervolume_exact_after ? 1 : 0) << ',' << format_double(r.seconds)
        << '\n';
  }
}

void write_flip_histogram_csv(std::ostream &out, const std::vector<QualityStudyRow> &rows) {
  out << "n_points,kind,count\n";
  for (const auto &r : rows)
    for (const auto &[k, c] : r.report.histogram)
      out << r.n_points << ',' << flip_name(k) << ',' << c << '\n';
}

CanonicalQuad random_canonical_quad(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 2.0), v(0.05, 2.0);
  for (;;) {
    CanonicalQuad cq{u(rng), v(rng), u(rng), v(rng)};
    const double d = cq.r * cq.q - cq.p * cq.s;
    if (cq.valid() && d > 1e-3 && cq.m() > 1e-3)
      return cq;
  }
}

std::vector<RoughnessTrial> roughness_trials(size_t n, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uf(-1.0, 1.0), uc(0.2, 5.0);
  std::vector<RoughnessTrial> out;
  out.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    RoughnessTrial t;
    t.trial = i;
    t.cq = random_canonical_quad(rng);
    for (auto &x : t.f)
      x = uf(rng);
    t.c_v = uc(rng);
    t.r = relative_roughness(t.cq, t.f, t.c_v);
    out.push_back(t);
  }
  return out;
}

void write_roughness_csv(std::ostream &out, const std::vector<RoughnessTrial> &trials) {
  out << "trial,p,q,r,s,c_v,C,B,value\n";
  for (const auto &t : trials)
    out << t.trial << ',' << format_double(t.cq.p) << ',' << format_double(t.cq.q) << ',' << format_double(t.cq.r)
        << ',' << format_double(t.cq.s) << ',' << format_double(t.c_v) << ',' << format_double(t.r.C) << ','
        << format_double(t.r.B) << ',' << format_double(t.r.value) << '\n';
}

} // namespace pentamesh

#include "pentamesh/generators.hpp"
#include "pentamesh/insertion.hpp"
#include "pentamesh/mesh_io.hpp"
#include "pentamesh/quality.hpp"
#include "pentamesh/studies.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace pentamesh;

namespace {

MetricField parse_metric(const std::string &s) {
  if (s == "identity")
    return MetricField::identity();
  if (s.rfind("speed:", 0) == 0) {
    double c0 = 1.0, beta = 0.1;
    if (std::sscanf(s.c_str() + 6, "%lf,%lf", &c0, &beta) != 2)
      throw CLI::ValidationError("--metric", "expected speed:c0,beta");
    return MetricField::speed(c0, beta);
  }
  if (s.rfind("constant:", 0) == 0) {
    const double c = std::stod(s.substr(9));
    return MetricField::constant(Metric4::speed(c));
  }
  throw CLI::ValidationError("--metric", "unknown metric '" + s + "'");
}

std::ostream &output(const std::string &path, std::ofstream &f) {
  if (path.empty() || path == "-")
    return std::cout;
  f.open(path);
  if (!f)
    throw std::runtime_error("cannot write " + path);
  return f;
}

std::vector<double> qualities(const Mesh4 &m, const MetricField &field, int heuristic) {
  std::vector<double> q;
  for (int32_t e : m.alive_elements())
    q.push_back(element_quality(m.points(e), field, heuristic));
  return q;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"4D anisotropic Delaunay meshing"};
  app.require_subcommand(1);
  int exit_code = 0;

  // mesh
  std::string in_path, out_path, metric = "identity";
  int nb = 24;
  double margin = 1000.0;
  bool audit = false, keep_super = false, skip_dup = false;
  auto *mesh_cmd = app.add_subcommand("mesh", "triangulate a point file (csv or p4m)");
  mesh_cmd->add_option("input", in_path, "points (.csv/.txt) or p4m mesh whose vertices are reinserted")->required();
  mesh_cmd->add_option("--metric", metric, "identity | speed:c0,beta | constant:c");
  mesh_cmd->add_option("--nb", nb, "bounding subdivision")->check(CLI::IsMember({22, 23, 24}));
  mesh_cmd->add_option("--margin", margin, "bounding margin relative to the point diagonal");
  mesh_cmd->add_flag("--audit", audit, "check the empty-circumsphere property");
  mesh_cmd->add_flag("--keep-super", keep_super, "keep elements touching the bounding corners");
  mesh_cmd->add_flag("--skip-duplicates", skip_dup, "ignore repeated points");
  mesh_cmd->add_option("-o,--output", out_path, "p4m output path");
  mesh_cmd->callback([&] {
    const MetricField field = parse_metric(metric);
    std::vector<Point4> pts;
    if (in_path.size() > 4 && in_path.substr(in_path.size() - 4) == ".p4m")
      pts = load_p4m(in_path).vertices();
    else
      pts = load_points(in_path);
    TriangulateOptions opts;
    opts.n_b = nb;
    opts.margin = margin;
    opts.remove_super = !keep_super;
    opts.skip_duplicates = skip_dup;
    TriangulationStats st;
    const Mesh4 m = triangulate(pts, field, opts, &st);
    std::cerr << "points," << pts.size() << "\ninserted," << st.inserted << "\npentatopes," << m.alive_count()
              << "\nhypervolume," << format_double(m.total_hypervolume()) << '\n';
    if (audit) {
      const auto a = audit_delaunay(m, field);
      std::cerr << "audit_checked," << a.checked << "\naudit_violations," << a.violations.size() << '\n';
      if (!a.ok())
        exit_code = 2;
    }
    std::ofstream f;
    write_p4m(m, output(out_path, f));
  });

  // quality
  std::string q_path, q_metric = "identity";
  int heuristic = 1;
  bool per_element = false;
  auto *quality_cmd = app.add_subcommand("quality", "quality summary of a p4m mesh");
  quality_cmd->add_option("mesh", q_path)->required();
  quality_cmd->add_option("--heuristic", heuristic)->check(CLI::Range(1, 3));
  quality_cmd->add_option("--metric", q_metric);
  quality_cmd->add_flag("--per-element", per_element);
  quality_cmd->callback([&] {
    const Mesh4 m = load_p4m(q_path);
    const auto q = qualities(m, parse_metric(q_metric), heuristic);
    if (per_element) {
      std::cout << "element,quality\n";
      for (size_t i = 0; i < q.size(); ++i)
        std::cout << i << ',' << format_double(q[i]) << '\n';
      return;
    }
    std::cout << "fraction,amq\n";
    for (double f : {0.01, 0.05, 0.10, 0.20, 1.0})
      std::cout << f << ',' << format_double(average_minimum_quality(q, f)) << '\n';
  });

  // improve
  std::string i_path, i_out;
  int i_heuristic = 1;
  uint64_t i_seed = 1;
  size_t i_random = 0;
  bool no_insert = false, no_remove = false;
  auto *improve_cmd = app.add_subcommand("improve", "flip-based quality improvement");
  improve_cmd->add_option("mesh", i_path, "p4m mesh; omit with --random");
  improve_cmd->add_option("--heuristic", i_heuristic)->check(CLI::Range(1, 3));
  improve_cmd->add_option("--seed", i_seed);
  improve_cmd->add_option("--random", i_random, "mesh N uniform points in the unit tesseract instead");
  improve_cmd->add_flag("--no-insert", no_insert);
  improve_cmd->add_flag("--no-remove", no_remove);
  improve_cmd->add_option("-o,--output", i_out);
  improve_cmd->callback([&] {
    Mesh4 m = i_random ? triangulate(uniform_points(i_random, i_seed), MetricField::identity()) : load_p4m(i_path);
    ImproveOptions o;
    o.point_inserting = !no_insert;
    o.point_removing = !no_remove;
    QualityStudyRow row;
    row.n_points = i_random;
    row.report = improve_quality(m, i_heuristic, MetricField::identity(), o);
    write_quality_csv(std::cout, {row});
    write_flip_histogram_csv(std::cout, {row});
    if (!i_out.empty())
      save_p4m(m, i_out);
  });

  // study
  std::string which;
  uint64_t s_seed = 1;
  int levels = 4, trials = 100;
  std::vector<int> dims{2, 3, 4, 5, 10, 20};
  std::vector<size_t> sizes{50, 100, 150, 200, 250, 300};
  bool anisotropic = false;
  double h_exp = -1.0 / 3.0;
  std::string s_out;
  auto *study_cmd = app.add_subcommand("study", "run a study and print CSV");
  study_cmd->add_option("kind", which)->required()->check(CLI::IsMember({"convergence", "predicates", "flips", "roughness"}));
  study_cmd->add_option("--seed", s_seed);
  study_cmd->add_option("--levels", levels)->check(CLI::Range(3, 8));
  study_cmd->add_option("--dims", dims)->delimiter(',');
  study_cmd->add_option("--sizes", sizes)->delimiter(',');
  study_cmd->add_option("--trials", trials);
  study_cmd->add_flag("--anisotropic", anisotropic);
  study_cmd->add_option("--h-exponent", h_exp);
  study_cmd->add_option("-o,--output", s_out);
  study_cmd->callback([&] {
    std::ofstream f;
    std::ostream &out = output(s_out, f);
    if (which == "convergence") {
      ConvergenceConfig c;
      c.seed = s_seed;
      c.anisotropic = anisotropic;
      c.h_exponent = h_exp;
      c.h_levels.clear();
      double h = 0.8;
      for (int i = 0; i < levels; ++i, h *= 0.75)
        c.h_levels.push_back(h);
      write_convergence_csv(out, convergence_study(c));
    } else if (which == "predicates") {
      PredicateStudyConfig c;
      c.dims = dims;
      c.trials = trials;
      c.seed = s_seed;
      write_predicate_csv(out, predicate_comparison_study(c));
    } else if (which == "flips") {
      QualityStudyConfig c;
      c.sizes = sizes;
      c.seed = s_seed;
      const auto rows = quality_study(c);
      write_quality_csv(out, rows);
      write_flip_histogram_csv(out, rows);
    } else {
      write_roughness_csv(out, roughness_trials(static_cast<size_t>(trials), s_seed));
    }
  });

  // export
  std::string e_path, e_format = "p4m", e_out;
  auto *export_cmd = app.add_subcommand("export", "write a mesh as p4m or projected tetrahedra");
  export_cmd->add_option("mesh", e_path)->required();
  export_cmd->add_option("--format", e_format)->check(CLI::IsMember({"p4m", "tet3"}));
  export_cmd->add_option("-o,--output", e_out)->required();
  export_cmd->callback([&] {
    const Mesh4 m = load_p4m(e_path);
    std::ofstream f;
    std::ostream &out = output(e_out, f);
    if (e_format == "p4m")
      write_p4m(m, out);
    else
      write_tet3(m, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    return app.exit(e);
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}

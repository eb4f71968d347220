#include "pentamesh/bounding.hpp"
#include "pentamesh/flips.hpp"
#include "pentamesh/generators.hpp"
#include "pentamesh/insertion.hpp"
#include "pentamesh/mesh_io.hpp"
#include "pentamesh/predicates.hpp"
#include "pentamesh/quality.hpp"
#include "pentamesh/roughness2d.hpp"

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pentamesh;

namespace {

using RowPoints = Eigen::Matrix<double, Eigen::Dynamic, 4, Eigen::RowMajor>;

std::vector<Point4> to_points(const RowPoints &m) {
  std::vector<Point4> out(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    out[i] = m.row(i).transpose();
  return out;
}

std::array<Point4, 5> to_five(const RowPoints &m) {
  if (m.rows() != 5)
    throw py::value_error("expected a 5x4 array");
  return {m.row(0).transpose(), m.row(1).transpose(), m.row(2).transpose(), m.row(3).transpose(),
          m.row(4).transpose()};
}

py::object fraction(const mpq_class &q) {
  py::object to_int = py::module_::import("builtins").attr("int");
  return py::module_::import("fractions").attr("Fraction")(to_int(q.get_num().get_str()), to_int(q.get_den().get_str()));
}

RowPoints vertex_array(const Mesh4 &m) {
  RowPoints out(m.vertex_count(), 4);
  for (size_t i = 0; i < m.vertex_count(); ++i)
    out.row(i) = m.vertex(static_cast<int32_t>(i)).transpose();
  return out;
}

Eigen::Matrix<int32_t, Eigen::Dynamic, 5, Eigen::RowMajor> element_array(const Mesh4 &m) {
  const auto alive = m.alive_elements();
  Eigen::Matrix<int32_t, Eigen::Dynamic, 5, Eigen::RowMajor> out(alive.size(), 5);
  for (size_t i = 0; i < alive.size(); ++i)
    for (int k = 0; k < 5; ++k)
      out(i, k) = m.element(alive[i])[k];
  return out;
}

py::dict report_dict(const ImprovementReport &r) {
  py::dict d;
  d["flips"] = r.flips;
  d["elements_before"] = r.elements_before;
  d["elements_after"] = r.elements_after;
  d["vertices_before"] = r.vertices_before;
  d["vertices_after"] = r.vertices_after;
  d["min_quality_before"] = r.min_quality_before;
  d["min_quality_after"] = r.min_quality_after;
  d["hypervolume_before"] = fraction(r.hypervolume_exact_before);
  d["hypervolume_after"] = fraction(r.hypervolume_exact_after);
  d["monotone"] = r.monotone;
  py::dict amq;
  for (const auto &a : r.amq)
    amq[py::float_(a.fraction)] = py::make_tuple(a.initial, a.final);
  d["amq"] = amq;
  py::dict hist;
  for (const auto &[k, c] : r.histogram)
    hist[py::str(std::string(flip_name(k)))] = c;
  d["histogram"] = hist;
  return d;
}

} // namespace

PYBIND11_MODULE(_pentamesh, m) {
  m.doc() = "4D anisotropic Delaunay meshing kernel";

  py::register_exception<GhostPointError>(m, "GhostPointError", PyExc_RuntimeError);
  py::register_exception<DuplicateVertexError>(m, "DuplicateVertexError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<FlipError>(m, "FlipError", PyExc_RuntimeError);

  py::class_<MetricField>(m, "MetricField")
      .def_static("identity", &MetricField::identity)
      .def_static("constant", [](const Matrix4 &a) { return MetricField::constant(Metric4(a)); }, py::arg("matrix"))
      .def_static("constant_speed", [](double c) { return MetricField::constant(Metric4::speed(c)); }, py::arg("c"))
      .def_static("speed", &MetricField::speed, py::arg("c0") = 1.0, py::arg("beta") = 0.1, py::arg("center") = 2.0)
      .def_static("speed_function", &MetricField::speed_function, py::arg("c"))
      .def_static("speed_table", &MetricField::speed_table, py::arg("nodes"))
      .def("__call__", [](const MetricField &f, const Point4 &p) { return f(p).matrix(); });

  py::class_<Mesh4>(m, "Mesh")
      .def_property_readonly("vertices", &vertex_array)
      .def_property_readonly("elements", &element_array)
      .def("__len__", &Mesh4::alive_count)
      .def("hypervolume", &Mesh4::total_hypervolume)
      .def("hypervolume_exact", [](const Mesh4 &mesh) { return fraction(mesh.total_hypervolume_exact()); })
      .def("check", [](const Mesh4 &mesh) { return mesh.check_invariants().problems; })
      .def(
          "audit",
          [](const Mesh4 &mesh, const MetricField &f, double tol) {
            std::vector<std::pair<int32_t, int32_t>> out;
            for (const auto &v : audit_delaunay(mesh, f, tol).violations)
              out.emplace_back(v.vertex, v.element);
            return out;
          },
          py::arg("field") = MetricField::identity(), py::arg("tol") = 0.0)
      .def(
          "qualities",
          [](const Mesh4 &mesh, int which, const MetricField &f) {
            std::vector<double> q;
            for (int32_t e : mesh.alive_elements())
              q.push_back(element_quality(mesh.points(e), f, which));
            return q;
          },
          py::arg("heuristic") = 1, py::arg("field") = MetricField::identity())
      .def(
          "improve",
          [](Mesh4 &mesh, int which, const MetricField &f, bool inserting, bool removing, size_t max_flips) {
            ImproveOptions o;
            o.point_inserting = inserting;
            o.point_removing = removing;
            o.max_flips = max_flips;
            return report_dict(improve_quality(mesh, which, f, o));
          },
          py::arg("heuristic") = 1, py::arg("field") = MetricField::identity(), py::arg("point_inserting") = true,
          py::arg("point_removing") = true, py::arg("max_flips") = 0)
      .def("to_p4m",
           [](const Mesh4 &mesh) {
             std::ostringstream s;
             write_p4m(mesh, s);
             return s.str();
           })
      .def("to_tet3",
           [](const Mesh4 &mesh) {
             std::ostringstream s;
             write_tet3(mesh, s);
             return s.str();
           })
      .def("save", &save_p4m, py::arg("path"))
      .def_static(
          "from_p4m",
          [](const std::string &text) {
            std::istringstream s(text);
            return read_p4m(s);
          },
          py::arg("text"))
      .def_static("load", &load_p4m, py::arg("path"));

  m.def(
      "triangulate",
      [](const RowPoints &pts, const MetricField &f, int n_b, double margin, bool remove_super, bool shuffle,
         uint64_t seed, bool skip_duplicates) {
        TriangulateOptions o;
        o.n_b = n_b;
        o.margin = margin;
        o.remove_super = remove_super;
        o.shuffle = shuffle;
        o.seed = seed;
        o.skip_duplicates = skip_duplicates;
        const auto p = to_points(pts);
        py::gil_scoped_release release;
        return triangulate(p, f, o);
      },
      py::arg("points"), py::arg("field") = MetricField::identity(), py::arg("n_b") = 24, py::arg("margin") = 1000.0,
      py::arg("remove_super") = true, py::arg("shuffle") = false, py::arg("seed") = 0,
      py::arg("skip_duplicates") = false);

  m.def(
      "bounding_mesh",
      [](const RowPoints &pts, int n_b, double margin) { return build_bounding_mesh(to_points(pts), n_b, margin); },
      py::arg("points"), py::arg("n_b") = 24, py::arg("margin") = 1.0);
  m.def("subdivision_table", [](int n) { return subdivision_table(n).tuples; }, py::arg("n_b"));

  m.def("hypervolume", [](const RowPoints &p) { return hypervolume(to_five(p)); }, py::arg("points"));
  m.def("hypervolume_exact", [](const RowPoints &p) { return fraction(hypervolume_exact(to_five(p))); },
        py::arg("points"));
  m.def(
      "orientation",
      [](const RowPoints &p, const Matrix4 &metric) { return orientation_m(Metric4(metric), to_five(p)).sign; },
      py::arg("points"), py::arg("metric") = Matrix4::Identity());
  m.def(
      "inhypersphere",
      [](const RowPoints &p, const Point4 &f, const Matrix4 &metric) {
        return inhypersphere_m(Metric4(metric), to_five(p), f).sign;
      },
      py::arg("points"), py::arg("query"), py::arg("metric") = Matrix4::Identity());

  m.def("eta1", [](const RowPoints &p) { return eta1(to_five(p)); }, py::arg("points"));
  m.def("eta2", [](const RowPoints &p) { return eta2(to_five(p)); }, py::arg("points"));
  m.def("eta3", [](const RowPoints &p) { return eta3(to_five(p)); }, py::arg("points"));
  m.def("theta", &theta, py::arg("edge_squares"));
  m.def("regular_pentatope", [](double a) {
    const auto r = regular_pentatope(a);
    RowPoints out(5, 4);
    for (int i = 0; i < 5; ++i)
      out.row(i) = r[i].transpose();
    return out;
  }, py::arg("a") = 1.0);

  m.def("flip_kinds", [] {
    std::vector<std::string> out;
    for (FlipKind k : all_flip_kinds())
      out.emplace_back(flip_name(k));
    return out;
  });
  m.def(
      "flip_table",
      [](const std::string &name) {
        const auto k = flip_from_name(name);
        if (!k)
          throw py::value_error("unknown flip kind " + name);
        const auto &t = flip_table(*k);
        return py::make_tuple(t.stage1, t.stage2);
      },
      py::arg("name"));

  m.def(
      "hypercylinder_points",
      [](double R, double L, double h_sphere, double h_time, uint64_t seed) {
        const auto pts = generate_hypercylinder_points(R, L, h_sphere, h_time, seed);
        RowPoints out(pts.size(), 4);
        for (size_t i = 0; i < pts.size(); ++i)
          out.row(i) = pts[i].transpose();
        return out;
      },
      py::arg("R") = 1.0, py::arg("L") = 4.0, py::arg("h_sphere") = 0.5, py::arg("h_time") = 0.5,
      py::arg("seed") = 1);
  m.def("project_to_3d", &project_to_3d, py::arg("v"));

  m.def(
      "relative_roughness",
      [](double p, double q, double r, double s, const std::array<double, 4> &f, double c_v) {
        const auto rr = relative_roughness(CanonicalQuad{p, q, r, s}, f, c_v);
        py::dict d;
        d["value"] = rr.value;
        d["A"] = rr.A;
        d["B"] = rr.B;
        d["C"] = rr.C;
        return d;
      },
      py::arg("p"), py::arg("q"), py::arg("r"), py::arg("s"), py::arg("f"), py::arg("c_v") = 1.0);
  m.def(
      "lop",
      [](const std::vector<Point2> &pts, const std::vector<double> &values, double c_v) {
        const auto res = lop(pts, values, c_v);
        return py::make_tuple(res.tri.triangles, res.flips, res.roughness);
      },
      py::arg("points"), py::arg("values"), py::arg("c_v") = 1.0);
  m.def(
      "delaunay_2d",
      [](const std::vector<Point2> &pts, double c_v) { return delaunay_brute_force(pts, c_v).triangles; },
      py::arg("points"), py::arg("c_v") = 1.0);
}

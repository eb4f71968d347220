#include "pentamesh/mesh_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

namespace pentamesh {

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return std::string(buf, ptr);
}

void write_p4m(const Mesh4 &mesh, std::ostream &out) {
  std::vector<int32_t> remap(mesh.vertex_count(), -1);
  std::vector<int32_t> kept;
  for (size_t v = 0; v < mesh.vertex_count(); ++v)
    if (mesh.vertex_alive(static_cast<int32_t>(v))) {
      remap[v] = static_cast<int32_t>(kept.size());
      kept.push_back(static_cast<int32_t>(v));
    }
  const auto elems = mesh.alive_elements();
  for (int32_t e : elems)
    for (int32_t v : mesh.element(e))
      if (remap[v] < 0)
        throw std::logic_error("alive element references a dead vertex");
  out << "p4m 1\n";
  out << "vertices " << kept.size() << '\n';
  for (int32_t v : kept) {
    const Point4 &p = mesh.vertex(v);
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << ' '
        << format_double(p[3]) << '\n';
  }
  out << "pentatopes " << elems.size() << '\n';
  for (int32_t e : elems) {
    const auto &el = mesh.element(e);
    out << remap[el[0]] << ' ' << remap[el[1]] << ' ' << remap[el[2]] << ' ' << remap[el[3]] << ' ' << remap[el[4]]
        << '\n';
  }
}

namespace {

struct LineReader {
  std::istream &in;
  size_t line = 0;
  bool next(std::string &s) {
    while (std::getline(in, s)) {
      ++line;
      if (!s.empty() && s.back() == '\r')
        s.pop_back();
      if (s.find_first_not_of(" \t") != std::string::npos)
        return true;
    }
    return false;
  }
};

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == ','))
      ++i;
    size_t j = i;
    while (j < s.size() && !(s[j] == ' ' || s[j] == '\t' || s[j] == ','))
      ++j;
    if (j > i)
      out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class T> bool parse_num(std::string_view s, T &v) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  return ec == std::errc() && ptr == s.data() + s.size();
}

size_t parse_count(LineReader &r, const char *keyword) {
  std::string s;
  if (!r.next(s))
    throw ParseError(r.line + 1, std::string("expected '") + keyword + " N'");
  const auto tok = split(s);
  size_t n = 0;
  if (tok.size() != 2 || tok[0] != keyword || !parse_num(tok[1], n))
    throw ParseError(r.line, std::string("expected '") + keyword + " N'");
  return n;
}

} // namespace

Mesh4 read_p4m(std::istream &in) {
  LineReader r{in};
  std::string s;
  if (!r.next(s) || split(s) != std::vector<std::string_view>{"p4m", "1"})
    throw ParseError(r.line ? r.line : 1, "missing 'p4m 1' header");
  Mesh4 mesh;
  const size_t nv = parse_count(r, "vertices");
  Point4 lo = Point4::Constant(INFINITY), hi = Point4::Constant(-INFINITY);
  for (size_t i = 0; i < nv; ++i) {
    if (!r.next(s))
      throw ParseError(r.line + 1, "missing vertex line");
    const auto tok = split(s);
    Point4 p;
    if (tok.size() != 4)
      throw ParseError(r.line, "vertex needs four coordinates");
    for (int k = 0; k < 4; ++k)
      if (!parse_num(tok[k], p[k]) || !std::isfinite(p[k]))
        throw ParseError(r.line, "bad coordinate '" + std::string(tok[k]) + "'");
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
    mesh.add_vertex(p);
  }
  const size_t ne = parse_count(r, "pentatopes");
  for (size_t i = 0; i < ne; ++i) {
    if (!r.next(s))
      throw ParseError(r.line + 1, "missing pentatope line");
    const auto tok = split(s);
    if (tok.size() != 5)
      throw ParseError(r.line, "pentatope needs five indices");
    Pentatope el;
    for (int k = 0; k < 5; ++k) {
      long long v = -1;
      if (!parse_num(tok[k], v) || v < 0 || static_cast<size_t>(v) >= nv)
        throw ParseError(r.line, "vertex index '" + std::string(tok[k]) + "' out of range");
      el[k] = static_cast<int32_t>(v);
    }
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b)
        if (el[a] == el[b])
          throw ParseError(r.line, "repeated vertex index");
    mesh.add_element(el);
  }
  if (r.next(s))
    throw ParseError(r.line, "trailing content");
  mesh.rebuild_adjacency();
  if (nv > 0)
    mesh.set_scale(std::max((hi - lo).norm(), 1e-300));
  return mesh;
}

void save_p4m(const Mesh4 &mesh, const std::string &path) {
  std::ofstream f(path);
  if (!f)
    throw std::runtime_error("cannot write " + path);
  write_p4m(mesh, f);
}

Mesh4 load_p4m(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot read " + path);
  return read_p4m(f);
}

Point3 project_to_3d(const Point4 &v) {
  const double e = 1.0 / std::sqrt(3.0);
  return Point3(v[0] + v[3] * e, v[1] + v[3] * e, v[2] + v[3] * e);
}

void write_tet3(const Mesh4 &mesh, std::ostream &out) {
  std::vector<int32_t> remap(mesh.vertex_count(), -1);
  std::vector<int32_t> kept;
  const auto elems = mesh.alive_elements();
  for (int32_t e : elems)
    for (int32_t v : mesh.element(e))
      if (remap[v] < 0) {
        remap[v] = static_cast<int32_t>(kept.size());
        kept.push_back(v);
      }
  out << "tet3 1\n";
  out << "vertices " << kept.size() << '\n';
  for (int32_t v : kept) {
    const Point3 p = project_to_3d(mesh.vertex(v));
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2]) << '\n';
  }
  out << "tetrahedra " << 5 * elems.size() << '\n';
  for (int32_t e : elems) {
    const auto &el = mesh.element(e);
    for (const auto &f : kCanonicalFacets)
      out << remap[el[f[0]]] << ' ' << remap[el[f[1]]] << ' ' << remap[el[f[2]]] << ' ' << remap[el[f[3]]] << '\n';
  }
}

std::vector<Point4> read_points(std::istream &in) {
  LineReader r{in};
  std::string s;
  std::vector<Point4> pts;
  bool first = true;
  while (r.next(s)) {
    const auto tok = split(s);
    Point4 p;
    bool ok = tok.size() == 4;
    for (int k = 0; ok && k < 4; ++k)
      ok = parse_num(tok[k], p[k]) && std::isfinite(p[k]);
    if (!ok) {
      if (first) {
        first = false;
        continue;
      }
      throw ParseError(r.line, "expected four coordinates");
    }
    first = false;
    pts.push_back(p);
  }
  return pts;
}

std::vector<Point4> load_points(const std::string &path) {
  std::ifstream f(path);
  if (!f)
    throw std::runtime_error("cannot read " + path);
  return read_points(f);
}

} // namespace pentamesh

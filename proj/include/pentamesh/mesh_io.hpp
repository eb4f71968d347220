#pragma once

#include "pentamesh/mesh.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace pentamesh {

class ParseError : public std::runtime_error {
public:
  ParseError(size_t line, const std::string &what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  size_t line;
};

// alive elements and alive vertices, renumbered densely
void write_p4m(const Mesh4 &mesh, std::ostream &out);
Mesh4 read_p4m(std::istream &in);
void save_p4m(const Mesh4 &mesh, const std::string &path);
Mesh4 load_p4m(const std::string &path);

// five projected tetrahedra per pentatope
void write_tet3(const Mesh4 &mesh, std::ostream &out);

// one point per line, four reals separated by commas or blanks; a non-numeric first line is a header
std::vector<Point4> read_points(std::istream &in);
std::vector<Point4> load_points(const std::string &path);

Point3 project_to_3d(const Point4 &v);

std::string format_double(double x);

} // namespace pentamesh

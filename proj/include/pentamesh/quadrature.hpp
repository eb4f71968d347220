#pragma once

#include <vector>

namespace pentamesh::quadrature {

struct Rule1D {
  std::vector<double> nodes;   // on [0,1]
  std::vector<double> weights; // sum to 1
};

Rule1D gauss_legendre(int n);

struct SimplexRule {
  std::vector<std::vector<double>> bary; // barycentric coordinates, dim+1 entries
  std::vector<double> weights;           // sum to 1 (volume normalized)
};

// Grundmann-Moeller rule of degree 2s+1 on the dim-simplex
SimplexRule grundmann_moeller(int dim, int s);

} // namespace pentamesh::quadrature

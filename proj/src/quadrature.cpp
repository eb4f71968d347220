#include "pentamesh/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pentamesh::quadrature {

Rule1D gauss_legendre(int n) {
  if (n < 1)
    throw std::invalid_argument("gauss_legendre: order must be >= 1");
  Rule1D r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      if (n == 1) {
        p1 = x;
        p0 = 1.0;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16)
        break;
    }
    r.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    r.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

namespace {

void compositions(int total, int parts, std::vector<int> &cur, std::vector<std::vector<int>> &out) {
  if (parts == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int k = 0; k <= total; ++k) {
    cur.push_back(k);
    compositions(total - k, parts - 1, cur, out);
    cur.pop_back();
  }
}

double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k)
    f *= k;
  return f;
}

} // namespace

SimplexRule grundmann_moeller(int dim, int s) {
  if (dim < 1 || s < 0)
    throw std::invalid_argument("grundmann_moeller: bad arguments");
  SimplexRule rule;
  const int d = 2 * s + 1;
  double total = 0.0;
  for (int i = 0; i <= s; ++i) {
    const double denom = d + dim - 2 * i;
    const double w = ((i % 2) ? -1.0 : 1.0) * std::pow(2.0, -2 * s) * std::pow(denom, d) /
                     (factorial(i) * factorial(d + dim - i));
    std::vector<std::vector<int>> betas;
    std::vector<int> cur;
    compositions(s - i, dim + 1, cur, betas);
    for (const auto &b : betas) {
      std::vector<double> lam(dim + 1);
      for (int k = 0; k <= dim; ++k)
        lam[k] = (2.0 * b[k] + 1.0) / denom;
      rule.bary.push_back(std::move(lam));
      rule.weights.push_back(w);
      total += w;
    }
  }
  for (double &w : rule.weights)
    w /= total;
  return rule;
}

} // namespace pentamesh::quadrature

#pragma once

// Scalar-generic determinant kernels shared by every precision stage.
// Only +, - and * are used so the same code evaluates doubles, quad floats,
// big integers and the absolute-value "permanent" used by the error filter.

#include <gmpxx.h>

#include <array>
#include <cmath>
#include <vector>

namespace pentamesh::detail {

struct Mag {
  double v = 0.0;
  Mag() = default;
  Mag(double x) : v(std::abs(x)) {}
};
inline Mag operator+(Mag a, Mag b) { return Mag(a.v + b.v); }
inline Mag operator-(Mag a, Mag b) { return Mag(a.v + b.v); }
inline Mag operator*(Mag a, Mag b) { return Mag(a.v * b.v); }

template <class T> using Row4 = std::array<T, 4>;

template <class T> T det4(const std::array<Row4<T>, 4> &m) {
  T s01 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  T s02 = m[0][0] * m[1][2] - m[0][2] * m[1][0];
  T s03 = m[0][0] * m[1][3] - m[0][3] * m[1][0];
  T s12 = m[0][1] * m[1][2] - m[0][2] * m[1][1];
  T s13 = m[0][1] * m[1][3] - m[0][3] * m[1][1];
  T s23 = m[0][2] * m[1][3] - m[0][3] * m[1][2];
  T c01 = m[2][0] * m[3][1] - m[2][1] * m[3][0];
  T c02 = m[2][0] * m[3][2] - m[2][2] * m[3][0];
  T c03 = m[2][0] * m[3][3] - m[2][3] * m[3][0];
  T c12 = m[2][1] * m[3][2] - m[2][2] * m[3][1];
  T c13 = m[2][1] * m[3][3] - m[2][3] * m[3][1];
  T c23 = m[2][2] * m[3][3] - m[2][3] * m[3][2];
  T r = s01 * c23 - s02 * c13;
  r = r + s03 * c12;
  r = r + s12 * c03;
  r = r - s13 * c02;
  r = r + s23 * c01;
  return r;
}

// rows p[i] - p[4], i = 0..3
template <class T> T orient4(const std::array<Row4<T>, 5> &p) {
  std::array<Row4<T>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      m[i][j] = p[i][j] - p[4][j];
  return det4(m);
}

// lifted determinant with rows (p_i - f, (p_i - f)^T M (p_i - f)), expanded on the last column
template <class T>
T insphere4(const std::array<Row4<T>, 4> *metric, const std::array<Row4<T>, 5> &p, const Row4<T> &f) {
  std::array<Row4<T>, 5> d;
  std::array<T, 5> q;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 4; ++j)
      d[i][j] = p[i][j] - f[j];
    if (metric) {
      const auto &m = *metric;
      T acc = m[0][0] * d[i][0] * d[i][0];
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          if (j == 0 && k == 0)
            continue;
          acc = acc + m[j][k] * d[i][j] * d[i][k];
        }
      q[i] = acc;
    } else {
      T acc = d[i][0] * d[i][0];
      for (int j = 1; j < 4; ++j)
        acc = acc + d[i][j] * d[i][j];
      q[i] = acc;
    }
  }
  T r = T(0);
  for (int i = 0; i < 5; ++i) {
    std::array<Row4<T>, 4> minor;
    for (int k = 0, mk = 0; k < 5; ++k)
      if (k != i)
        minor[mk++] = d[k];
    T term = q[i] * det4(minor);
    // cofactor sign (-1)^(i+4) on the last column
    if (i % 2 == 0)
      r = r + term;
    else
      r = r - term;
  }
  return r;
}

// maps a batch of doubles to integers sharing one power-of-two scale
void to_scaled_integers(const double *x, size_t n, std::vector<mpz_class> &out, long &exponent);

// fraction-free elimination; returns the exact determinant of an integer matrix
mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m);

} // namespace pentamesh::detail

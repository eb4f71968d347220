#include "pentamesh/predicates.hpp"

#include "kernels.hpp"

#include <cmath>
#include <limits>

namespace pentamesh {

namespace detail {

void to_scaled_integers(const double *x, size_t n, std::vector<mpz_class> &out, long &exponent) {
  out.assign(n, mpz_class(0));
  std::vector<int64_t> mant(n, 0);
  std::vector<long> ex(n, 0);
  long emin = std::numeric_limits<long>::max();
  for (size_t i = 0; i < n; ++i) {
    if (x[i] == 0.0)
      continue;
    int e = 0;
    const double fr = std::frexp(x[i], &e);
    mant[i] = static_cast<int64_t>(std::ldexp(fr, 53));
    ex[i] = static_cast<long>(e) - 53;
    emin = std::min(emin, ex[i]);
  }
  if (emin == std::numeric_limits<long>::max()) {
    exponent = 0;
    return;
  }
  for (size_t i = 0; i < n; ++i) {
    if (mant[i] == 0)
      continue;
    mpz_class v(static_cast<long>(mant[i]));
    mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(ex[i] - emin));
    out[i] = v;
  }
  exponent = emin;
}

mpz_class bareiss_det(std::vector<std::vector<mpz_class>> m) {
  const size_t n = m.size();
  if (n == 0)
    return 1;
  int sign = 1;
  mpz_class prev = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      size_t piv = k + 1;
      while (piv < n && m[piv][k] == 0)
        ++piv;
      if (piv == n)
        return 0;
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i) {
      for (size_t j = k + 1; j < n; ++j) {
        mpz_class t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        m[i][j] = t;
      }
    }
    prev = m[k][k];
  }
  mpz_class d = m[n - 1][n - 1];
  return sign > 0 ? d : mpz_class(-d);
}

} // namespace detail

namespace {

using detail::Mag;
using detail::Row4;
using Quad = __float128;

constexpr double kFilterK = 128.0;
constexpr double kEpsDouble = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kEpsQuad = 9.62964972193617926527988971292463659e-35; // 2^-113

template <class T> std::array<Row4<T>, 5> rows(const std::array<Point4, 5> &p) {
  std::array<Row4<T>, 5> r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = T(p[i][j]);
  return r;
}

template <class T> Row4<T> row(const Point4 &p) { return {T(p[0]), T(p[1]), T(p[2]), T(p[3])}; }

template <class T> std::array<Row4<T>, 4> mrows(const Matrix4 &m) {
  std::array<Row4<T>, 4> r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = T(m(i, j));
  return r;
}

int sgn(double v) { return (v > 0) - (v < 0); }
int sgnq(Quad v) { return (v > 0) - (v < 0); }

bool certified(double value, double perm, double eps) {
  const double bound = kFilterK * eps * perm * (1.0 + 1e-10) + std::numeric_limits<double>::denorm_min();
  return std::abs(value) > bound;
}

int orient_exact_sign(const std::array<Point4, 5> &p) {
  double buf[20];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      buf[i * 4 + j] = p[i][j];
  std::vector<mpz_class> z;
  long ex = 0;
  detail::to_scaled_integers(buf, 20, z, ex);
  std::array<Row4<mpz_class>, 5> r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = z[i * 4 + j];
  return sgn(detail::orient4(r));
}

int insphere_exact_sign(const Matrix4 *m, const std::array<Point4, 5> &p, const Point4 &f) {
  double buf[24];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      buf[i * 4 + j] = p[i][j];
  for (int j = 0; j < 4; ++j)
    buf[20 + j] = f[j];
  std::vector<mpz_class> z;
  long ex = 0;
  detail::to_scaled_integers(buf, 24, z, ex);
  std::array<Row4<mpz_class>, 5> r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = z[i * 4 + j];
  Row4<mpz_class> fz{z[20], z[21], z[22], z[23]};
  if (!m)
    return sgn(detail::insphere4<mpz_class>(nullptr, r, fz));
  std::vector<mpz_class> mz;
  long mex = 0;
  detail::to_scaled_integers(m->data(), 16, mz, mex);
  std::array<Row4<mpz_class>, 4> mr;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      mr[i][j] = mz[j * 4 + i]; // column-major storage
  return sgn(detail::insphere4(&mr, r, fz));
}

template <class T> T insphere_eval(const Matrix4 *m, const std::array<Point4, 5> &p, const Point4 &f) {
  if (!m)
    return detail::insphere4<T>(nullptr, rows<T>(p), row<T>(f));
  const auto mr = mrows<T>(*m);
  return detail::insphere4(&mr, rows<T>(p), row<T>(f));
}

PredicateResult insphere_escalate(const Matrix4 *m, const std::array<Point4, 5> &p, const Point4 &f) {
  PredicateResult r;
  const double v = insphere_eval<double>(m, p, f);
  r.value = v;
  const double perm = insphere_eval<Mag>(m, p, f).v;
  if (certified(v, perm, kEpsDouble)) {
    r.sign = sgn(v);
    r.exactness = Exactness::float_filter;
    return r;
  }
  const Quad vq = insphere_eval<Quad>(m, p, f);
  const Quad bound = static_cast<Quad>(kFilterK * (1.0 + 1e-10)) * static_cast<Quad>(kEpsQuad) * static_cast<Quad>(perm);
  if ((vq > 0 ? vq : -vq) > bound) {
    r.sign = sgnq(vq);
    r.exactness = Exactness::extended;
    return r;
  }
  r.sign = insphere_exact_sign(m, p, f);
  r.exactness = Exactness::exact;
  return r;
}

} // namespace

double orientation4_float(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d, const Point4 &e) {
  return detail::orient4(rows<double>({a, b, c, d, e}));
}

PredicateResult orientation4(const std::array<Point4, 5> &p) {
  PredicateResult r;
  const double v = detail::orient4(rows<double>(p));
  r.value = v;
  const double perm = detail::orient4(rows<Mag>(p)).v;
  if (certified(v, perm, kEpsDouble)) {
    r.sign = sgn(v);
    return r;
  }
  const Quad vq = detail::orient4(rows<Quad>(p));
  const Quad bound = static_cast<Quad>(kFilterK * (1.0 + 1e-10)) * static_cast<Quad>(kEpsQuad) * static_cast<Quad>(perm);
  if ((vq > 0 ? vq : -vq) > bound) {
    r.sign = sgnq(vq);
    r.exactness = Exactness::extended;
    return r;
  }
  r.sign = orient_exact_sign(p);
  r.exactness = Exactness::exact;
  return r;
}

PredicateResult orientation4(const Point4 &a, const Point4 &b, const Point4 &c, const Point4 &d, const Point4 &e) {
  return orientation4({a, b, c, d, e});
}

PredicateResult orientation_m(const Metric4 &m, const std::array<Point4, 5> &p) {
  PredicateResult r = orientation4(p);
  r.value *= m.sqrt_det();
  return r;
}

PredicateResult inhypersphere4(const std::array<Point4, 5> &p, const Point4 &f) {
  return insphere_escalate(nullptr, p, f);
}

PredicateResult inhypersphere_m(const Metric4 &m, const std::array<Point4, 5> &p, const Point4 &f) {
  PredicateResult r = insphere_escalate(&m.matrix(), p, f);
  r.value *= m.sqrt_det();
  return r;
}

mpq_class hypervolume_exact(const std::array<Point4, 5> &p) {
  double buf[20];
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      buf[i * 4 + j] = p[i][j];
  std::vector<mpz_class> z;
  long ex = 0;
  detail::to_scaled_integers(buf, 20, z, ex);
  std::array<Row4<mpz_class>, 5> r;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 4; ++j)
      r[i][j] = z[i * 4 + j];
  mpq_class v(detail::orient4(r), 24);
  v.canonicalize();
  const long shift = 4 * ex;
  if (shift > 0)
    mpq_mul_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(shift));
  else if (shift < 0)
    mpq_div_2exp(v.get_mpq_t(), v.get_mpq_t(), static_cast<mp_bitcnt_t>(-shift));
  return v;
}

} // namespace pentamesh

#include <bipolar/algebra/linear.hpp>

namespace bipolar::algebra {

// Bareiss fraction-free elimination.
Integer determinant(const IntMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      std::size_t s = k + 1;
      while (s < n && a(s, k) == 0) ++s;
      if (s == n) return 0;
      a.swap_rows(k, s);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a(i, j) = v;
      }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

Rational determinant(const RatMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  RatMatrix a = m;
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Rational f = a(i, k) / a(k, k);
      a.add_row(i, k, -f);
    }
  }
  return det;
}

RatMatrix rational_inverse(const RatMatrix& m) {
  if (!m.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  RatMatrix a = m, inv = RatMatrix::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a(p, k) == 0) ++p;
    if (p == n) throw DomainError("matrix is singular");
    a.swap_rows(p, k);
    inv.swap_rows(p, k);
    Rational piv = a(k, k);
    for (std::size_t j = 0; j < n; ++j) {
      a(k, j) /= piv;
      inv(k, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || a(i, k) == 0) continue;
      Rational f = a(i, k);
      a.add_row(i, k, -f);
      inv.add_row(i, k, -f);
    }
  }
  return inv;
}

RatMatrix rational_inverse(const IntMatrix& m) { return rational_inverse(to_rational(m)); }

Inertia symmetric_signature(const RatMatrix& s) {
  if (!s.symmetric()) throw DomainError("signature of a non-symmetric matrix");
  return hermitian_inertia(s);
}

Inertia symmetric_signature(const IntMatrix& s) { return symmetric_signature(to_rational(s)); }

}  // namespace bipolar::algebra

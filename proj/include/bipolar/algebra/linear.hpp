#pragma once

#include <bipolar/algebra/matrix.hpp>

#include <utility>
#include <vector>

namespace bipolar::algebra {

Integer determinant(const IntMatrix& m);
Rational determinant(const RatMatrix& m);

// Throws DomainError when m is singular.
RatMatrix rational_inverse(const IntMatrix& m);
RatMatrix rational_inverse(const RatMatrix& m);

struct Inertia {
  std::size_t pos = 0, zero = 0, neg = 0;
  long signature() const { return static_cast<long>(pos) - static_cast<long>(neg); }
  std::size_t dim() const { return pos + zero + neg; }
  bool operator==(const Inertia&) const = default;
};

// Per-field operations used by the congruence elimination below.
template <class F>
struct FieldTraits;

template <>
struct FieldTraits<Rational> {
  static Rational conj(const Rational& x) { return x; }
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static int sign(const Rational& x) { return sgn(x); }
  static Rational inverse(const Rational& x) { return 1 / x; }
};

// Inertia of a Hermitian matrix by congruence diagonalization. h is consumed.
// A zero diagonal with a nonzero off-diagonal entry h_ij is repaired by
// replacing e_i with e_i + conj(h_ij) e_j, which makes h_ii = 2|h_ij|^2.
template <class F>
Inertia hermitian_inertia(Matrix<F> h) {
  using T = FieldTraits<F>;
  const std::size_t n = h.rows();
  if (!h.square()) throw DomainError("inertia of a non-square matrix");
  std::vector<bool> live(n, true);
  Inertia out;
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n && piv == n; ++i)
      if (live[i] && !T::is_zero(h(i, i))) piv = i;
    if (piv == n) {
      std::size_t pi = n, pj = n;
      for (std::size_t i = 0; i < n && pi == n; ++i) {
        if (!live[i]) continue;
        for (std::size_t j = 0; j < n; ++j)
          if (j != i && live[j] && !T::is_zero(h(i, j))) {
            pi = i;
            pj = j;
            break;
          }
      }
      if (pi == n) {
        out.zero += remaining;
        break;
      }
      F c = T::conj(h(pi, pj));
      F cc = T::conj(c);
      for (std::size_t r = 0; r < n; ++r)
        if (live[r]) h(r, pi) += c * h(r, pj);
      for (std::size_t k = 0; k < n; ++k)
        if (live[k]) h(pi, k) += cc * h(pj, k);
      piv = pi;
    }
    const F p = h(piv, piv);
    int s = T::sign(p);
    if (s > 0)
      ++out.pos;
    else if (s < 0)
      ++out.neg;
    else
      throw InvariantViolation("pivot sign vanished on a nonzero entry");
    live[piv] = false;
    --remaining;
    F inv = T::inverse(p);
    for (std::size_t r = 0; r < n; ++r) {
      if (!live[r] || T::is_zero(h(r, piv))) continue;
      F f = h(r, piv) * inv;
      for (std::size_t k = 0; k < n; ++k)
        if (live[k]) h(r, k) -= f * h(piv, k);
    }
  }
  return out;
}

// Throws DomainError on non-symmetric input.
Inertia symmetric_signature(const RatMatrix& s);
Inertia symmetric_signature(const IntMatrix& s);

}  // namespace bipolar::algebra

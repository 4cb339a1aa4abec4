#pragma once

#include <bipolar/algebra/integer.hpp>

#include <memory>
#include <string>
#include <vector>

namespace bipolar::algebra {

// Dense polynomial over Q, coefficient of x^i at index i, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> c);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, std::size_t deg);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;

  friend QPoly operator+(const QPoly& a, const QPoly& b);
  friend QPoly operator-(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rational& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  // a = q*b + r with deg r < deg b.
  static void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
  friend QPoly operator%(const QPoly& a, const QPoly& b);
  friend QPoly operator/(const QPoly& a, const QPoly& b);

  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

// Monic gcd (zero if both are zero).
QPoly gcd(const QPoly& a, const QPoly& b);
// Returns g = gcd(a, b) and s, t with s*a + t*b = g.
QPoly extended_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t);
QPoly squarefree_part(const QPoly& a);

// d-th cyclotomic polynomial; results are memoized immutably per call site.
std::shared_ptr<const QPoly> cyclotomic_polynomial(unsigned d);
unsigned euler_phi(unsigned d);

// Symmetric Laurent polynomial a0 + sum_{k>=1} a_k (t^k + t^-k).
class SymLaurentPoly {
 public:
  SymLaurentPoly() : a_{Integer(1)} {}
  explicit SymLaurentPoly(std::vector<Integer> a);

  // Half-degree g: highest k with a_k != 0 (0 for constants).
  std::size_t half_degree() const { return a_.size() - 1; }
  const std::vector<Integer>& coeffs() const { return a_; }
  Integer coeff(std::size_t k) const { return k < a_.size() ? a_[k] : Integer(0); }

  // Ordinary polynomial t^g * Delta(t), coefficients of t^0..t^{2g}.
  std::vector<Integer> shifted() const;
  // Delta(t) = f(t + 1/t).
  QPoly in_trace_variable() const;
  Integer at_one() const;
  Integer at_minus_one() const;

  friend SymLaurentPoly operator*(const SymLaurentPoly& a, const SymLaurentPoly& b);
  friend bool operator==(const SymLaurentPoly& a, const SymLaurentPoly& b) { return a.a_ == b.a_; }

  // e.g. "-11t + 23 - 11t^-1".
  std::string to_string() const;

 private:
  std::vector<Integer> a_;
};

}  // namespace bipolar::algebra

#pragma once

#include <bipolar/algebra/cyclotomic.hpp>
#include <bipolar/algebra/matrix.hpp>
#include <bipolar/algebra/poly.hpp>

#include <optional>
#include <vector>

namespace bipolar::seifert {

using algebra::Integer;
using algebra::IntMatrix;
using algebra::Rational;
using algebra::RootArg;
using algebra::SymLaurentPoly;

// Square, even-dimensional, det(V - V^T) = 1. Construction validates.
class SeifertMatrix {
 public:
  SeifertMatrix() = default;  // unknot
  explicit SeifertMatrix(IntMatrix v);

  const IntMatrix& matrix() const { return v_; }
  std::size_t genus() const { return v_.rows() / 2; }
  bool is_unknot_form() const { return v_.rows() == 0; }

  friend SeifertMatrix operator+(const SeifertMatrix& a, const SeifertMatrix& b);

 private:
  IntMatrix v_;
};

SymLaurentPoly alexander(const SeifertMatrix& v);

// Levine-Tristram signature at w != 1; at a root of the Alexander polynomial
// the average of the two one-sided limits.
long signature_at(const SeifertMatrix& v, const RootArg& w);

// One jump of the signature function on the upper half circle. The root
// x = 2cos(theta) lies in the open interval (x_lo, x_hi).
struct Jump {
  Rational x_lo, x_hi;
  std::optional<RootArg> root;  // set when the jump is at a root of unity
};

// Step function on the upper half circle, ordered by increasing angle.
// plateaus[0] is the arc next to w = 1, plateaus.back() the arc next to -1.
struct SignatureFunction {
  std::vector<Jump> jumps;
  std::vector<long> plateaus;
  std::vector<long> jump_values;
  algebra::QPoly trace_poly;  // squarefree, roots 2cos(theta) of the jumps

  long value_at(const RootArg& w) const;
  bool identically_zero() const;
  long max_value() const;
  long min_value() const;
};

SignatureFunction signature_function(const SeifertMatrix& v);

// sigma(w^j), w = exp(2 pi i / p^r), j = 1 .. p^r - 1.
std::vector<long> tristram_signatures(const SeifertMatrix& v, long p, long r);

// Integral of the signature function with total circle measure 1.
struct Rho0 {
  Rational lo, hi;
  std::optional<Rational> exact;
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
};

Rho0 rho0(const SeifertMatrix& v);

int arf(const SeifertMatrix& v);
int arf(const SymLaurentPoly& delta);

// t_j = sum_{k>=1} k a_{j+k}.
Integer torsion_coefficient(const SymLaurentPoly& delta, std::size_t j);

}  // namespace bipolar::seifert

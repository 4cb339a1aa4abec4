#pragma once

#include <bipolar/algebra/integer.hpp>
#include <bipolar/algebra/poly.hpp>

#include <optional>
#include <string>
#include <vector>

namespace bipolar::dinv {

using algebra::Rational;
using algebra::SymLaurentPoly;

// Correction terms of a rational homology sphere with |H_1| = p, indexed by
// the labels 0..p-1.
struct DInvariantVector {
  long p = 0;
  std::vector<Rational> values;
  const Rational& operator[](long i) const { return values.at(static_cast<std::size_t>(i)); }
  std::size_t count_zeros() const;
  bool operator==(const DInvariantVector&) const = default;
};

// L(p,q) is oriented as -p/q surgery on the unknot, so that it is the double
// branched cover of the two-bridge knot K(p,q) and L(n,1) = S^3_{-n}(U).
// Computed as the negative of r(p,q,i) = ((2i+1-p-q)^2 - pq)/(4pq) - r(q, p mod q, i mod q).
Rational d_lens(long p, long q, long i);
// d(S^3_n(U), i) for n > 0, i.e. d(-L(n,1), i).
Rational d_unknot_surgery(long n, long i);
DInvariantVector lens_vector(long p, long q);

DInvariantVector d_reverse(const DInvariantVector& v);

// n-surgery on an L-space knot: d(S^3_n(U), i) - 2 t_{min(i, n-i)}.
Rational d_surgery_lspace(const SymLaurentPoly& delta, long n, long i);
DInvariantVector surgery_vector(const SymLaurentPoly& delta, long n);

Rational d_connected_sum(const std::vector<std::pair<DInvariantVector, long>>& parts);

enum class Definite { positive, negative };

struct DefiniteBound {
  long beta2 = 0;
  Rational c1sq;
  Definite sign = Definite::negative;
  // Amount by which d at the incoming end is pushed below d at the outgoing end
  // by a negative definite cobordism: (c1^2 + beta2)/4.
  Rational offset() const;
};

enum class BoundCheck { consistent, violated };

// negative: c1^2 + beta2 <= 4d; positive: c1^2 - beta2 >= 4d.
BoundCheck oz_bound(const Rational& d, const DefiniteBound& b);

struct ChainCase {
  std::string name;
  Rational terminal;  // d-invariant at the far end of the chain
};

struct ChainResult {
  std::vector<Rational> case_bounds;
  Rational bound;  // max over cases: the guaranteed upper bound at the source
};

// Each case bound is terminal - sum(offsets). Throws DomainError when there
// are no steps or no cases.
ChainResult chain_bound(const std::vector<Rational>& offsets, const std::vector<ChainCase>& cases);

// Under a claimed relation greater >= lesser, the surgery d-invariants
// satisfy d_lesser[i] >= d_greater[i]. Returns the first violating label.
std::optional<long> geq_obstruction(const DInvariantVector& d_greater, const DInvariantVector& d_lesser);

// First label where d differs from the lens space L(p, q).
std::optional<long> lens_disagreement(const DInvariantVector& d, long p, long q);

}  // namespace bipolar::dinv

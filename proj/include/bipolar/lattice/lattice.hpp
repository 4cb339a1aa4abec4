#pragma once

#include <bipolar/algebra/matrix.hpp>

#include <functional>
#include <optional>
#include <string>

namespace bipolar::lattice {

using algebra::Integer;
using algebra::IntMatrix;
using algebra::IntVector;

// Symmetric integer form with |det| = 1.
class UnimodularForm {
 public:
  explicit UnimodularForm(IntMatrix m);
  const IntMatrix& matrix() const { return m_; }
  std::size_t dim() const { return m_.rows(); }

 private:
  IntMatrix m_;
};

enum class Definiteness { positive, negative, indefinite, degenerate };
std::string to_string(Definiteness d);

Definiteness definiteness(const IntMatrix& m);

// x^T M v == v^T M v (mod 2) for every basis vector v.
bool is_characteristic(const IntMatrix& m, const IntVector& x);

// Calls visit(x, x^T G x) for every x in offset + step*Z^n with x^T G x <= bound.
// G must be positive definite. step is 1 or 2.
void enumerate_short(const IntMatrix& g, const Integer& bound, const IntVector& offset, int step,
                     const std::function<void(const IntVector&, const Integer&)>& visit);

struct CharSquare {
  IntVector x;
  Integer value;  // x^T M x, so negative for negative definite forms
};

// Characteristic vector minimizing |x^T M x|. Requires M definite with odd
// determinant; dimension above max_dim throws BoundExceeded.
CharSquare min_characteristic_square(const IntMatrix& m, std::size_t max_dim = 12);

// M definite unimodular; true iff M is congruent to +-identity.
bool is_diagonalizable(const IntMatrix& m, std::size_t max_dim = 12);

bool is_even(const IntMatrix& m);

struct CongruenceResult {
  std::optional<IntMatrix> witness;  // U with U^T A U = B
  bool exhausted = false;
  std::string reason;
};

// Search for U with |entries| <= bound. Dimensions above 6 throw BoundExceeded.
CongruenceResult congruence_search(const IntMatrix& a, const IntMatrix& b, long bound);

}  // namespace bipolar::lattice

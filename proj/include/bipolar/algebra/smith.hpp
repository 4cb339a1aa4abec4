#pragma once

#include <bipolar/algebra/matrix.hpp>

#include <vector>

namespace bipolar::algebra {

// U * M * Vt == D, U and Vt unimodular, D diagonal with d1 | d2 | ... and di >= 0.
struct SmithForm {
  IntMatrix D, U, Vt;
  std::size_t rank() const;
  std::vector<Integer> diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Cokernel of m: the torsion invariant factors (entries != 1 and != 0 of D)
// and the free rank.
struct CokernelShape {
  std::vector<Integer> torsion;
  std::size_t free_rank = 0;
};
CokernelShape cokernel_shape(const IntMatrix& m);

// Row-style Hermite normal form of the row lattice: upper echelon, positive
// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& rows);

// Basis (as columns) of the integer kernel {x : m x = 0}.
IntMatrix integer_kernel(const IntMatrix& m);

IntMatrix unimodular_inverse(const IntMatrix& u);

}  // namespace bipolar::algebra

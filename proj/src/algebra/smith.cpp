#include <bipolar/algebra/linear.hpp>
#include <bipolar/algebra/smith.hpp>

namespace bipolar::algebra {

std::size_t SmithForm::rank() const {
  std::size_t r = 0;
  for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i)
    if (D(i, i) != 0) ++r;
  return r;
}

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  for (std::size_t i = 0; i < D.rows() && i < D.cols(); ++i) d.push_back(D(i, i));
  return d;
}

SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix A = m, U = IntMatrix::identity(r), Vt = IntMatrix::identity(c);

  auto row_swap = [&](std::size_t i, std::size_t k) { A.swap_rows(i, k); U.swap_rows(i, k); };
  auto col_swap = [&](std::size_t j, std::size_t k) { A.swap_cols(j, k); Vt.swap_cols(j, k); };

  for (std::size_t t = 0; t < r && t < c; ++t) {
    std::size_t pi = r, pj = c;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j)
        if (A(i, j) != 0 && (pi == r || abs(A(i, j)) < abs(A(pi, pj)))) pi = i, pj = j;
    if (pi == r) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Integer q = A(i, t) / A(t, t);
        A.add_row(i, t, -q);
        U.add_row(i, t, -q);
        if (A(i, t) != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Integer q = A(t, j) / A(t, t);
        A.add_col(j, t, -q);
        Vt.add_col(j, t, -q);
        if (A(t, j) != 0) dirty = true;
      }
      if (dirty) {
        std::size_t bi = t, bj = t;
        for (std::size_t i = t + 1; i < r; ++i)
          if (A(i, t) != 0 && abs(A(i, t)) < abs(A(bi, bj))) bi = i, bj = t;
        for (std::size_t j = t + 1; j < c; ++j)
          if (A(t, j) != 0 && abs(A(t, j)) < abs(A(bi, bj))) bi = t, bj = j;
        row_swap(t, bi);
        col_swap(t, bj);
        continue;
      }
      bool fixed = false;
      for (std::size_t i = t + 1; i < r && !fixed; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (A(i, j) % A(t, t) != 0) {
            A.add_row(t, i, 1);
            U.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (A(t, t) < 0) {
      for (std::size_t j = 0; j < c; ++j) A(t, j) = -A(t, j);
      for (std::size_t j = 0; j < r; ++j) U(t, j) = -U(t, j);
    }
  }
  return {A, U, Vt};
}

CokernelShape cokernel_shape(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  CokernelShape out;
  out.free_rank = m.rows() - s.rank();
  for (auto& d : s.diagonal())
    if (d > 1) out.torsion.push_back(d);
  return out;
}

IntMatrix hermite_normal_form(const IntMatrix& rows) {
  IntMatrix A = rows;
  const std::size_t m = A.rows(), n = A.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < n && r < m; ++j) {
    for (;;) {
      std::size_t best = m;
      for (std::size_t i = r; i < m; ++i)
        if (A(i, j) != 0 && (best == m || abs(A(i, j)) < abs(A(best, j)))) best = i;
      if (best == m) break;
      A.swap_rows(r, best);
      bool clean = true;
      for (std::size_t i = r + 1; i < m; ++i) {
        if (A(i, j) == 0) continue;
        A.add_row(i, r, -floor_div(A(i, j), A(r, j)));
        if (A(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= m || A(r, j) == 0) continue;
    if (A(r, j) < 0)
      for (std::size_t k = 0; k < n; ++k) A(r, k) = -A(r, k);
    for (std::size_t i = 0; i < r; ++i) A.add_row(i, r, -floor_div(A(i, j), A(r, j)));
    ++r;
  }
  IntMatrix out(r, n);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = A(i, j);
  return out;
}

IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm s = smith_normal_form(m);
  std::size_t rk = s.rank(), n = m.cols();
  IntMatrix k(n, n - rk);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = rk; j < n; ++j) k(i, j - rk) = s.Vt(i, j);
  return k;
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
  RatMatrix inv = rational_inverse(u);
  IntMatrix out(u.rows(), u.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) {
      if (inv(i, j).get_den() != 1) throw DomainError("matrix is not unimodular");
      out(i, j) = inv(i, j).get_num();
    }
  return out;
}

}  // namespace bipolar::algebra

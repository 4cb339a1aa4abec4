#include <bipolar/algebra/linear.hpp>
#include <bipolar/algebra/smith.hpp>
#include <bipolar/lattice/lattice.hpp>

#include <cmath>
#include <map>

namespace bipolar::lattice {

using algebra::Rational;
using algebra::RatMatrix;

UnimodularForm::UnimodularForm(IntMatrix m) : m_(std::move(m)) {
  if (!m_.symmetric()) throw InvariantViolation("form is not symmetric");
  if (abs(algebra::determinant(m_)) != 1) throw InvariantViolation("form is not unimodular");
}

std::string to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive: return "positive";
    case Definiteness::negative: return "negative";
    case Definiteness::indefinite: return "indefinite";
    case Definiteness::degenerate: return "degenerate";
  }
  return "?";
}

Definiteness definiteness(const IntMatrix& m) {
  auto in = algebra::symmetric_signature(m);
  if (in.zero > 0) return Definiteness::degenerate;
  if (in.neg == 0) return Definiteness::positive;
  if (in.pos == 0) return Definiteness::negative;
  return Definiteness::indefinite;
}

bool is_characteristic(const IntMatrix& m, const IntVector& x) {
  if (!m.symmetric()) throw DomainError("form must be symmetric");
  if (x.size() != m.rows()) throw DomainError("vector dimension does not match the form");
  auto mx = m.apply(x);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (algebra::mod(mx[i] - m(i, i), Integer(2)) != 0) return false;
  return true;
}

bool is_even(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (algebra::mod(m(i, i), Integer(2)) != 0) return false;
  return true;
}

namespace {

// q(x) = sum_i d_i (x_i + sum_{j>i} mu_ij x_j)^2.
struct Decomposition {
  std::vector<Rational> d;
  RatMatrix mu;
};

Decomposition decompose(const IntMatrix& g) {
  const std::size_t n = g.rows();
  RatMatrix a = algebra::to_rational(g);
  Decomposition dec{std::vector<Rational>(n), RatMatrix(n, n)};
  for (std::size_t i = 0; i < n; ++i) {
    if (a(i, i) <= 0) throw DomainError("form is not positive definite");
    dec.d[i] = a(i, i);
    for (std::size_t j = i + 1; j < n; ++j) dec.mu(i, j) = a(i, j) / a(i, i);
    for (std::size_t r = i + 1; r < n; ++r)
      for (std::size_t c = i + 1; c < n; ++c) a(r, c) -= dec.mu(i, r) * a(i, c);
  }
  return dec;
}

Integer floor_q(const Rational& q) { return algebra::floor_div(q.get_num(), q.get_den()); }

}  // namespace

void enumerate_short(const IntMatrix& g, const Integer& bound, const IntVector& offset, int step,
                     const std::function<void(const IntVector&, const Integer&)>& visit) {
  const std::size_t n = g.rows();
  if (n == 0) {
    visit({}, 0);
    return;
  }
  Decomposition dec = decompose(g);
  IntVector x(n);
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level, const Rational& budget) {
    const std::size_t i = level;
    Rational c = 0;
    for (std::size_t j = i + 1; j < n; ++j) c += dec.mu(i, j) * Rational(x[j]);
    // (x_i + c)^2 <= budget / d_i; widen the float range, then check exactly.
    double r = std::sqrt(Rational(budget / dec.d[i]).get_d());
    double center = -c.get_d();
    Integer lo = floor_q(Rational(Integer(static_cast<long>(std::floor(center - r))) - 1));
    Integer hi = Integer(static_cast<long>(std::ceil(center + r))) + 1;
    Integer first = lo + algebra::mod(offset[i] - lo, Integer(step));
    for (Integer v = first; v <= hi; v += step) {
      Rational t = Rational(v) + c;
      Rational used = dec.d[i] * t * t;
      if (used > budget) continue;
      x[i] = v;
      if (i == 0) {
        Rational total = bound - (budget - used);
        visit(x, total.get_num());
      } else {
        rec(i - 1, budget - used);
      }
    }
  };
  rec(n - 1, Rational(bound));
}

namespace {

// Solve m c = diag(m) over GF(2); unique when det m is odd.
IntVector characteristic_offset(const IntMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<int>> a(n, std::vector<int>(n + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = algebra::mod(m(i, j), Integer(2)).get_si();
    a[i][n] = algebra::mod(m(i, i), Integer(2)).get_si();
  }
  for (std::size_t col = 0, row = 0; col < n; ++col, ++row) {
    std::size_t p = row;
    while (p < n && a[p][col] == 0) ++p;
    if (p == n) throw DomainError("characteristic coset needs odd determinant");
    std::swap(a[p], a[row]);
    for (std::size_t i = 0; i < n; ++i)
      if (i != row && a[i][col])
        for (std::size_t j = 0; j <= n; ++j) a[i][j] ^= a[row][j];
  }
  IntVector c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = a[i][n];
  return c;
}

// Sign-normalized copy: positive definite, plus the sign used.
std::pair<IntMatrix, int> positive_version(const IntMatrix& m) {
  auto d = definiteness(m);
  if (d == Definiteness::positive) return {m, 1};
  if (d == Definiteness::negative) return {Integer(-1) * m, -1};
  throw DomainError("form must be definite");
}

}  // namespace

CharSquare min_characteristic_square(const IntMatrix& m, std::size_t max_dim) {
  if (!m.symmetric()) throw DomainError("form must be symmetric");
  if (m.rows() > max_dim) throw BoundExceeded("dimension", "characteristic search limited to dimension " + std::to_string(max_dim));
  auto [g, sign] = positive_version(m);
  const std::size_t n = g.rows();
  IntVector c0 = characteristic_offset(g);
  Integer bound = std::max<long>(static_cast<long>(n), 1);
  for (;;) {
    std::optional<CharSquare> best;
    enumerate_short(g, bound, c0, 2, [&](const IntVector& x, const Integer& q) {
      if (!best || q < best->value) best = CharSquare{x, q};
    });
    if (best) {
      best->value *= sign;
      return *best;
    }
    if (abs(algebra::determinant(g)) == 1) throw InvariantViolation("no characteristic vector within the rank bound");
    bound *= 2;
  }
}

bool is_diagonalizable(const IntMatrix& m, std::size_t max_dim) {
  if (!m.symmetric()) throw DomainError("form must be symmetric");
  if (m.rows() > max_dim) throw BoundExceeded("dimension", "diagonalization limited to dimension " + std::to_string(max_dim));
  auto [g, sign] = positive_version(m);
  (void)sign;
  if (abs(algebra::determinant(g)) != 1) return false;
  IntMatrix cur = g;
  while (cur.rows() > 0) {
    const std::size_t n = cur.rows();
    std::optional<IntVector> unit;
    enumerate_short(cur, 1, IntVector(n, Integer(0)), 1, [&](const IntVector& x, const Integer& q) {
      if (!unit && q == 1) unit = x;
    });
    if (!unit) return false;
    // A norm one vector splits off: the lattice is Z v (+) v^perp.
    IntMatrix row(1, n);
    auto gv = cur.apply(*unit);
    for (std::size_t j = 0; j < n; ++j) row(0, j) = gv[j];
    IntMatrix k = algebra::integer_kernel(row);
    cur = k.transpose() * cur * k;
  }
  return true;
}

CongruenceResult congruence_search(const IntMatrix& a, const IntMatrix& b, long bound) {
  if (!a.symmetric() || !b.symmetric() || a.rows() != b.rows()) throw DomainError("forms must be symmetric of equal size");
  const std::size_t n = a.rows();
  if (n > 6) throw BoundExceeded("dimension", "congruence search limited to dimension 6");
  CongruenceResult out;
  if (algebra::determinant(a) != algebra::determinant(b)) {
    out.exhausted = true;
    out.reason = "determinants differ";
    return out;
  }
  if (is_even(a) != is_even(b)) {
    out.exhausted = true;
    out.reason = "one form is even and the other odd";
    return out;
  }
  // Box vectors bucketed by norm.
  std::map<Integer, std::vector<IntVector>> by_norm;
  IntVector v(n, Integer(-bound));
  for (;;) {
    by_norm[algebra::bilinear(a, v, v)].push_back(v);
    std::size_t k = 0;
    while (k < n && v[k] == bound) v[k++] = -bound;
    if (k == n) break;
    v[k] += 1;
  }
  std::vector<IntVector> cols(n);
  auto au = [&](const IntVector& x) { return a.apply(x); };
  std::vector<IntVector> a_cols(n);
  std::function<bool(std::size_t)> place = [&](std::size_t j) -> bool {
    if (j == n) {
      IntMatrix u(n, n);
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) u(r, c) = cols[c][r];
      if (abs(algebra::determinant(u)) != 1) return false;
      out.witness = u;
      return true;
    }
    auto it = by_norm.find(b(j, j));
    if (it == by_norm.end()) return false;
    for (auto& cand : it->second) {
      bool ok = true;
      for (std::size_t c = 0; c < j && ok; ++c) {
        Integer s = 0;
        for (std::size_t r = 0; r < n; ++r) s += a_cols[c][r] * cand[r];
        ok = s == b(c, j);
      }
      if (!ok) continue;
      cols[j] = cand;
      a_cols[j] = au(cand);
      if (place(j + 1)) return true;
    }
    return false;
  };
  if (!place(0)) {
    out.exhausted = true;
    out.reason = "no witness with entries bounded by " + std::to_string(bound);
  }
  return out;
}

}  // namespace bipolar::lattice

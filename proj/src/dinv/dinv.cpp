#include <bipolar/dinv/dinv.hpp>
#include <bipolar/error.hpp>
#include <bipolar/seifert/seifert.hpp>

#include <algorithm>
#include <numeric>

namespace bipolar::dinv {

std::size_t DInvariantVector::count_zeros() const {
  return static_cast<std::size_t>(std::count(values.begin(), values.end(), Rational(0)));
}

namespace {

// ((2i+1-p-q)^2 - pq)/(4pq) - r(q, p mod q, i mod q), r(1,0,0) = 0.
// This is d of the lens space oriented as +p/q surgery on the unknot.
Rational recursion(long p, long q, long i) {
  if (p == 1) return 0;
  Rational a = algebra::make_rational((2 * i + 1 - p - q) * (2 * i + 1 - p - q) - p * q, 4 * p * q);
  return a - recursion(q, p % q, i % q);
}

}  // namespace

Rational d_lens(long p, long q, long i) {
  if (p == 1 && q == 0) {
    if (i != 0) throw DomainError("d_lens(1,0,i) needs i = 0");
    return 0;
  }
  if (p <= q || q < 1 || std::gcd(p, q) != 1) throw DomainError("d_lens needs p > q >= 1 coprime");
  if (i < 0 || i >= p + q) throw DomainError("d_lens label out of range");
  return -recursion(p, q, i);
}

Rational d_unknot_surgery(long n, long i) {
  if (n < 1) throw DomainError("unknot surgery needs a positive framing");
  if (i < 0 || i >= n) throw DomainError("surgery label out of range");
  return recursion(n, 1, i);
}

DInvariantVector lens_vector(long p, long q) {
  DInvariantVector v{p, {}};
  for (long i = 0; i < p; ++i) v.values.push_back(d_lens(p, q, i));
  return v;
}

DInvariantVector d_reverse(const DInvariantVector& v) {
  DInvariantVector r = v;
  for (auto& x : r.values) x = -x;
  return r;
}

Rational d_surgery_lspace(const SymLaurentPoly& delta, long n, long i) {
  long g = static_cast<long>(delta.half_degree());
  if (n < 1 || n < 2 * g - 1) throw DomainError("framing is below the L-space surgery range");
  if (i < 0 || i >= n) throw DomainError("surgery label out of range");
  Rational lens = d_unknot_surgery(n, i);
  long j = std::min(i, n - i);
  return lens - 2 * Rational(seifert::torsion_coefficient(delta, static_cast<std::size_t>(j)));
}

DInvariantVector surgery_vector(const SymLaurentPoly& delta, long n) {
  DInvariantVector v{n, {}};
  for (long i = 0; i < n; ++i) v.values.push_back(d_surgery_lspace(delta, n, i));
  return v;
}

Rational d_connected_sum(const std::vector<std::pair<DInvariantVector, long>>& parts) {
  Rational s = 0;
  for (auto& [v, i] : parts) s += v[i];
  return s;
}

Rational DefiniteBound::offset() const { return (c1sq + beta2) / 4; }

BoundCheck oz_bound(const Rational& d, const DefiniteBound& b) {
  bool ok = b.sign == Definite::negative ? b.c1sq + b.beta2 <= 4 * d : b.c1sq - b.beta2 >= 4 * d;
  return ok ? BoundCheck::consistent : BoundCheck::violated;
}

ChainResult chain_bound(const std::vector<Rational>& offsets, const std::vector<ChainCase>& cases) {
  if (offsets.empty()) throw DomainError("cobordism chain has no steps");
  if (cases.empty()) throw DomainError("cobordism chain has no terminal cases");
  Rational total = 0;
  for (auto& o : offsets) total += o;
  ChainResult r;
  for (auto& c : cases) r.case_bounds.push_back(c.terminal - total);
  r.bound = *std::max_element(r.case_bounds.begin(), r.case_bounds.end());
  return r;
}

std::optional<long> geq_obstruction(const DInvariantVector& d_greater, const DInvariantVector& d_lesser) {
  if (d_greater.values.size() != d_lesser.values.size()) throw DomainError("d-invariant vectors differ in length");
  for (std::size_t i = 0; i < d_greater.values.size(); ++i)
    if (d_lesser.values[i] < d_greater.values[i]) return static_cast<long>(i);
  return std::nullopt;
}

std::optional<long> lens_disagreement(const DInvariantVector& d, long p, long q) {
  auto l = lens_vector(p, q);
  if (l.values.size() != d.values.size()) throw DomainError("d-invariant vectors differ in length");
  for (std::size_t i = 0; i < d.values.size(); ++i)
    if (d.values[i] != l.values[i]) return static_cast<long>(i);
  return std::nullopt;
}

}  // namespace bipolar::dinv

#include <bipolar/algebra/linear.hpp>
#include <bipolar/seifert/seifert.hpp>

#include <mpfr.h>

#include <algorithm>
#include <numeric>

namespace bipolar::seifert {

using algebra::Cyclotomic;
using algebra::QPoly;
using algebra::RatMatrix;

SeifertMatrix::SeifertMatrix(IntMatrix v) : v_(std::move(v)) {
  if (!v_.square() || v_.rows() % 2 != 0)
    throw InvariantViolation("Seifert matrix must be square of even dimension");
  if (algebra::determinant(v_ - v_.transpose()) != 1)
    throw InvariantViolation("Seifert matrix must satisfy det(V - V^T) = 1");
}

SeifertMatrix operator+(const SeifertMatrix& a, const SeifertMatrix& b) {
  return SeifertMatrix(algebra::direct_sum(a.v_, b.v_));
}

SymLaurentPoly alexander(const SeifertMatrix& s) {
  const IntMatrix& v = s.matrix();
  const std::size_t g = s.genus(), deg = 2 * g;
  if (deg == 0) return SymLaurentPoly();
  IntMatrix vt = v.transpose();
  // det(V - tV^T) at t = 0..2g, then Lagrange interpolation.
  QPoly p;
  for (std::size_t i = 0; i <= deg; ++i) {
    Integer y = algebra::determinant(v - Integer(static_cast<long>(i)) * vt);
    QPoly basis = QPoly::constant(Rational(y));
    for (std::size_t j = 0; j <= deg; ++j) {
      if (j == i) continue;
      QPoly lin({Rational(-static_cast<long>(j)), Rational(1)});
      basis = algebra::make_rational(1, static_cast<long>(i) - static_cast<long>(j)) * (basis * lin);
    }
    p = p + basis;
  }
  std::vector<Integer> a(g + 1);
  for (std::size_t k = 0; k <= g; ++k) {
    Rational hi = p.coeff(g + k), lo = p.coeff(g - k);
    if (hi != lo || hi.get_den() != 1) throw InvariantViolation("Alexander polynomial is not symmetric");
    a[k] = hi.get_num();
  }
  SymLaurentPoly d(a);
  if (d.at_one() == -1) {
    for (auto& x : a) x = -x;
    d = SymLaurentPoly(a);
  }
  if (d.at_one() != 1) throw InvariantViolation("Alexander polynomial does not satisfy Delta(1) = 1");
  return d;
}

namespace {

// Sturm chain of a squarefree polynomial.
std::vector<QPoly> sturm_chain(const QPoly& f) {
  std::vector<QPoly> s{f, f.derivative()};
  while (!s.back().is_zero()) {
    QPoly r = s[s.size() - 2] % s.back();
    if (r.is_zero()) break;
    s.push_back(Rational(-1) * r);
  }
  return s;
}

int sign_changes(const std::vector<QPoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (auto& p : chain) {
    int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Roots in (l, r] for endpoints that are not roots.
int count_roots(const std::vector<QPoly>& chain, const Rational& l, const Rational& r) {
  return sign_changes(chain, l) - sign_changes(chain, r);
}

Rational safe_midpoint(const QPoly& f, const Rational& l, const Rational& r) {
  Rational m = (l + r) / 2;
  Rational step = (r - l) / 7;
  while (f.eval(m) == 0) {
    m += step;
    step /= 3;
  }
  return m;
}

// Halve the isolating interval of the unique root of f inside (lo, hi).
void bisect_once(const QPoly& f, const std::vector<QPoly>& chain, Rational& lo, Rational& hi) {
  Rational m = safe_midpoint(f, lo, hi);
  if (count_roots(chain, lo, m) == 1)
    hi = m;
  else
    lo = m;
}

// 2cos(2 pi k / d) as a field element.
Cyclotomic trace_of(const RootArg& w) {
  unsigned d = static_cast<unsigned>(w.d);
  return Cyclotomic::zeta(d, w.k) + Cyclotomic::zeta(d, -w.k);
}

// Signature of (1-w)V + (1-conj w)V^T at w = (1 - u^2 + 2iu)/(1 + u^2), via the
// real symmetric form [[A, -B], [B, A]] with A = (1-c)(V+V^T), B = -s(V-V^T).
long signature_at_rational_point(const IntMatrix& v, const Rational& u) {
  const std::size_t n = v.rows();
  Rational den = 1 + u * u;
  Rational c = (1 - u * u) / den, s = 2 * u / den;
  RatMatrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Rational a = (1 - c) * Rational(v(i, j) + v(j, i));
      Rational b = -s * Rational(v(i, j) - v(j, i));
      big(i, j) = a;
      big(n + i, n + j) = a;
      big(i, n + j) = -b;
      big(n + i, j) = b;
    }
  long sig = algebra::symmetric_signature(big).signature();
  if (sig % 2 != 0) throw InvariantViolation("odd signature of a doubled form");
  return sig / 2;
}

Rational trace_at(const Rational& u) { return 2 * (1 - u * u) / (1 + u * u); }

// Plateau value for any x = 2cos(theta) strictly inside (a, b).
long plateau_in_gap(const IntMatrix& v, const Rational& a, const Rational& b) {
  // x(u) decreases from 2 to -2 on u in [0, inf).
  Rational lo = 0, hi = 1;
  while (trace_at(hi) >= b) hi *= 2;
  Rational u = hi;
  while (trace_at(u) <= a) {
    u = (lo + hi) / 2;
    Rational x = trace_at(u);
    if (x >= b)
      lo = u;
    else if (x <= a)
      hi = u;
  }
  return signature_at_rational_point(v, u);
}

}  // namespace

SignatureFunction signature_function(const SeifertMatrix& s) {
  SignatureFunction out;
  if (s.is_unknot_form()) {
    out.plateaus = {0};
    out.trace_poly = QPoly::constant(1);
    return out;
  }
  SymLaurentPoly delta = alexander(s);
  QPoly f = algebra::squarefree_part(delta.in_trace_variable());
  out.trace_poly = f;
  auto chain = sturm_chain(f);

  std::vector<std::pair<Rational, Rational>> work{{Rational(-2), Rational(2)}}, found;
  while (!work.empty()) {
    auto [l, r] = work.back();
    work.pop_back();
    int n = count_roots(chain, l, r);
    if (n == 0) continue;
    if (n == 1) {
      found.push_back({l, r});
      continue;
    }
    Rational m = safe_midpoint(f, l, r);
    work.push_back({l, m});
    work.push_back({m, r});
  }
  // Increasing angle means decreasing x.
  std::sort(found.begin(), found.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (auto& [l, r] : found) out.jumps.push_back({l, r, std::nullopt});
  // Shrink until every gap between neighbouring intervals has interior.
  for (std::size_t i = 0; i < out.jumps.size(); ++i) {
    Rational upper = i == 0 ? Rational(2) : out.jumps[i - 1].x_lo;
    while (out.jumps[i].x_hi >= upper) bisect_once(f, chain, out.jumps[i].x_lo, out.jumps[i].x_hi);
  }
  while (!out.jumps.empty() && out.jumps.back().x_lo <= -2)
    bisect_once(f, chain, out.jumps.back().x_lo, out.jumps.back().x_hi);

  // Roots of unity among the roots: Phi_d divides Delta forces phi(d) <= 2g.
  const std::size_t two_g = 2 * delta.half_degree();
  for (long d = 3; d <= static_cast<long>(8 * two_g * two_g) && !out.jumps.empty(); ++d) {
    if (algebra::euler_phi(static_cast<unsigned>(d)) > two_g) continue;
    if (!algebra::cyclotomic_eval(delta, RootArg(1, d)).is_zero()) continue;
    for (long k = 1; 2 * k < d; ++k) {
      if (std::gcd(k, d) != 1) continue;
      Cyclotomic x = trace_of(RootArg(k, d));
      for (auto& j : out.jumps) {
        if ((x - Cyclotomic(static_cast<unsigned>(d), j.x_lo)).real_sign() > 0 &&
            (x - Cyclotomic(static_cast<unsigned>(d), j.x_hi)).real_sign() < 0) {
          j.root = RootArg(k, d);
          break;
        }
      }
    }
  }

  const IntMatrix& v = s.matrix();
  Rational upper = 2;
  for (auto& j : out.jumps) {
    out.plateaus.push_back(plateau_in_gap(v, j.x_hi, upper));
    upper = j.x_lo;
  }
  out.plateaus.push_back(plateau_in_gap(v, Rational(-2), upper));
  for (std::size_t i = 0; i < out.jumps.size(); ++i) {
    long sum = out.plateaus[i] + out.plateaus[i + 1];
    if (sum % 2 != 0) throw InvariantViolation("adjacent plateaus of different parity");
    out.jump_values.push_back(sum / 2);
  }
  return out;
}

long SignatureFunction::value_at(const RootArg& w0) const {
  if (w0.is_one()) return 0;
  RootArg w = 2 * w0.k > w0.d ? w0.conj() : w0;
  Cyclotomic x = trace_of(w);
  auto chain = sturm_chain(trace_poly);
  unsigned d = static_cast<unsigned>(w.d);
  std::size_t above = 0;  // jumps with root strictly greater than x
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const Jump& j = jumps[i];
    if (j.root && *j.root == w) return jump_values[i];
    Rational lo = j.x_lo, hi = j.x_hi;
    for (;;) {
      if ((x - Cyclotomic(d, lo)).real_sign() <= 0) {
        ++above;
        break;
      }
      if ((x - Cyclotomic(d, hi)).real_sign() >= 0) break;
      bisect_once(trace_poly, chain, lo, hi);
    }
  }
  return plateaus[above];
}

bool SignatureFunction::identically_zero() const {
  return std::all_of(plateaus.begin(), plateaus.end(), [](long p) { return p == 0; }) &&
         std::all_of(jump_values.begin(), jump_values.end(), [](long p) { return p == 0; });
}

long SignatureFunction::max_value() const {
  long m = 0;
  for (long p : plateaus) m = std::max(m, p);
  for (long p : jump_values) m = std::max(m, p);
  return m;
}

long SignatureFunction::min_value() const {
  long m = 0;
  for (long p : plateaus) m = std::min(m, p);
  for (long p : jump_values) m = std::min(m, p);
  return m;
}

long signature_at(const SeifertMatrix& s, const RootArg& w) {
  if (w.is_one()) throw DomainError("signature is not defined at w = 1");
  if (s.is_unknot_form()) return 0;
  if (algebra::cyclotomic_eval(alexander(s), w).is_zero()) return signature_function(s).value_at(w);
  const unsigned d = static_cast<unsigned>(w.d);
  const IntMatrix& v = s.matrix();
  const std::size_t n = v.rows();
  Cyclotomic one(d, Rational(1));
  Cyclotomic a = one - Cyclotomic::zeta(d, w.k), b = one - Cyclotomic::zeta(d, -w.k);
  algebra::Matrix<Cyclotomic> h(n, n, Cyclotomic(d, Rational(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = a * Cyclotomic(d, Rational(v(i, j))) + b * Cyclotomic(d, Rational(v(j, i)));
  return algebra::hermitian_inertia(std::move(h)).signature();
}

std::vector<long> tristram_signatures(const SeifertMatrix& s, long p, long r) {
  if (p < 2 || r < 1) throw DomainError("prime power must be at least 2");
  for (long f = 2; f * f <= p; ++f)
    if (p % f == 0) throw DomainError("tristram signatures need a prime base");
  long q = 1;
  for (long i = 0; i < r; ++i) q *= p;
  std::vector<long> out;
  for (long j = 1; j < q; ++j) out.push_back(signature_at(s, RootArg(j, q)));
  return out;
}

namespace {

struct MpfrVar {
  mpfr_t v;
  MpfrVar() { mpfr_init2(v, 160); }
  ~MpfrVar() { mpfr_clear(v); }
};

Rational to_rational(const mpfr_t x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

// Certified bounds on acos(x/2)/pi for x in [lo, hi].
std::pair<Rational, Rational> angle_fraction(const Rational& lo, const Rational& hi) {
  MpfrVar x, t, pi;
  Rational half_hi = hi / 2, half_lo = lo / 2;
  mpfr_set_q(x.v, half_hi.get_mpq_t(), MPFR_RNDU);
  if (mpfr_cmp_ui(x.v, 1) > 0) mpfr_set_ui(x.v, 1, MPFR_RNDN);
  mpfr_acos(t.v, x.v, MPFR_RNDD);
  mpfr_const_pi(pi.v, MPFR_RNDU);
  mpfr_div(t.v, t.v, pi.v, MPFR_RNDD);
  Rational flo = to_rational(t.v);
  mpfr_set_q(x.v, half_lo.get_mpq_t(), MPFR_RNDD);
  if (mpfr_cmp_si(x.v, -1) < 0) mpfr_set_si(x.v, -1, MPFR_RNDN);
  mpfr_acos(t.v, x.v, MPFR_RNDU);
  mpfr_const_pi(pi.v, MPFR_RNDD);
  mpfr_div(t.v, t.v, pi.v, MPFR_RNDU);
  return {flo, to_rational(t.v)};
}

Rational round_to_grid(const Rational& q, bool up) {
  const Integer scale("100000000000000");  // 1e14
  Rational s = q * Rational(scale);
  Integer n = up ? -algebra::floor_div(-s.get_num(), s.get_den()) : algebra::floor_div(s.get_num(), s.get_den());
  Rational out(n, scale);
  out.canonicalize();
  return out;
}

}  // namespace

Rho0 rho0(const SeifertMatrix& s) {
  SignatureFunction sf = signature_function(s);
  const std::size_t m = sf.jumps.size();
  Rational base = sf.plateaus[m];
  bool all_exact = std::all_of(sf.jumps.begin(), sf.jumps.end(), [](auto& j) { return j.root.has_value(); });
  if (all_exact) {
    Rational r = base;
    for (std::size_t i = 0; i < m; ++i) {
      Rational frac = algebra::make_rational(2 * sf.jumps[i].root->k, sf.jumps[i].root->d);
      r -= Rational(sf.plateaus[i + 1] - sf.plateaus[i]) * frac;
    }
    return {r, r, r};
  }
  auto chain = sturm_chain(sf.trace_poly);
  const Rational target(Integer(1), Integer("1000000000000000"));  // 1e-15 per jump
  Rational lo = base, hi = base;
  for (std::size_t i = 0; i < m; ++i) {
    Rational c = -Rational(sf.plateaus[i + 1] - sf.plateaus[i]);
    if (c == 0) continue;
    Rational flo, fhi;
    if (sf.jumps[i].root) {
      flo = fhi = algebra::make_rational(2 * sf.jumps[i].root->k, sf.jumps[i].root->d);
    } else {
      Rational xl = sf.jumps[i].x_lo, xh = sf.jumps[i].x_hi;
      for (;;) {
        std::tie(flo, fhi) = angle_fraction(xl, xh);
        if (fhi - flo < target) break;
        bisect_once(sf.trace_poly, chain, xl, xh);
      }
    }
    if (c > 0) {
      lo += c * flo;
      hi += c * fhi;
    } else {
      lo += c * fhi;
      hi += c * flo;
    }
  }
  return {round_to_grid(lo, false), round_to_grid(hi, true), std::nullopt};
}

int arf(const SymLaurentPoly& delta) {
  Integer r = algebra::mod(delta.at_minus_one(), Integer(8));
  return (r == 1 || r == 7) ? 0 : 1;
}

int arf(const SeifertMatrix& v) { return arf(alexander(v)); }

Integer torsion_coefficient(const SymLaurentPoly& delta, std::size_t j) {
  Integer t = 0;
  for (std::size_t k = 1; j + k <= delta.half_degree(); ++k) t += Integer(static_cast<long>(k)) * delta.coeff(j + k);
  return t;
}

}  // namespace bipolar::seifert

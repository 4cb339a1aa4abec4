#include <bipolar/algebra/cyclotomic.hpp>

#include <mpfr.h>

#include <numeric>

namespace bipolar::algebra {

RootArg::RootArg(long k_, long d_) {
  if (d_ <= 0) throw DomainError("root of unity needs a positive order");
  k_ %= d_;
  if (k_ < 0) k_ += d_;
  long g = std::gcd(k_, d_);
  k = k_ / g;
  d = d_ / g;
  if (k == 0) d = 1;
}

bool RootArg::operator<(const RootArg& o) const { return k * o.d < o.k * d; }

std::string RootArg::to_string() const { return std::to_string(k) + "/" + std::to_string(d); }

Cyclotomic::Cyclotomic(unsigned d, const Rational& c)
    : d_(d), mod_(cyclotomic_polynomial(d)), p_(QPoly::constant(c)) {}

Cyclotomic::Cyclotomic(unsigned d, const QPoly& p)
    : d_(d), mod_(cyclotomic_polynomial(d)), p_(p % *mod_) {}

Cyclotomic Cyclotomic::zeta(unsigned d, long k) {
  long e = k % static_cast<long>(d);
  if (e < 0) e += d;
  return Cyclotomic(d, QPoly::monomial(1, static_cast<std::size_t>(e)));
}

std::optional<Rational> Cyclotomic::rational_value() const {
  if (!is_rational()) return std::nullopt;
  return p_.coeff(0);
}

static void same_field(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order() != b.order()) throw DomainError("cyclotomic orders differ");
}

Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
  same_field(a, b);
  Cyclotomic r = a;
  r.p_ = a.p_ + b.p_;
  return r;
}

Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) {
  same_field(a, b);
  Cyclotomic r = a;
  r.p_ = a.p_ - b.p_;
  return r;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  same_field(a, b);
  Cyclotomic r = a;
  r.p_ = (a.p_ * b.p_) % *a.mod_;
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  std::vector<Rational> c(d_, Rational(0));
  const auto& src = p_.coeffs();
  for (std::size_t j = 0; j < src.size(); ++j) c[(d_ - j % d_) % d_] += src[j];
  Cyclotomic r = *this;
  r.p_ = QPoly(std::move(c)) % *mod_;
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero in a cyclotomic field");
  QPoly s, t;
  QPoly g = extended_gcd(p_, *mod_, s, t);
  if (g.degree() != 0) throw InvariantViolation("cyclotomic modulus is not irreducible");
  Cyclotomic r = *this;
  r.p_ = s % *mod_;
  return r;
}

namespace {

struct Mpfr {
  mpfr_t v;
  explicit Mpfr(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Mpfr() { mpfr_clear(v); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

}  // namespace

int Cyclotomic::real_sign() const {
  if (is_zero()) return 0;
  if (is_rational()) return sgn(p_.coeff(0));
  const auto& c = p_.coeffs();
  Rational l1 = 0;
  for (auto& x : c) l1 += abs(x);
  for (mpfr_prec_t prec = 64; prec <= 64 * 256; prec *= 4) {
    Mpfr sum(prec), term(prec), ang(prec), q(prec), err(prec);
    mpfr_set_zero(sum.v, 1);
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (c[j] == 0) continue;
      mpfr_const_pi(ang.v, MPFR_RNDN);
      mpfr_mul_ui(ang.v, ang.v, 2 * j, MPFR_RNDN);
      mpfr_div_ui(ang.v, ang.v, d_, MPFR_RNDN);
      mpfr_cos(term.v, ang.v, MPFR_RNDN);
      mpfr_set_q(q.v, c[j].get_mpq_t(), MPFR_RNDN);
      mpfr_mul(term.v, term.v, q.v, MPFR_RNDN);
      mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
    }
    // Each term carries a few ulps of relative error (angle, cosine, product),
    // the running sum one more per addition. Bound all of it generously.
    mpfr_set_q(err.v, l1.get_mpq_t(), MPFR_RNDU);
    mpfr_mul_ui(err.v, err.v, 16 + 2 * c.size(), MPFR_RNDU);
    mpfr_mul_2si(err.v, err.v, -prec + 2, MPFR_RNDU);
    Mpfr mag(prec);
    mpfr_abs(mag.v, sum.v, MPFR_RNDN);
    if (mpfr_cmp(mag.v, err.v) > 0) return mpfr_sgn(sum.v);
  }
  throw InvariantViolation("sign undecided at maximum precision (element not real?)");
}

double Cyclotomic::approx_real() const {
  Mpfr sum(80), term(80), ang(80), q(80);
  mpfr_set_zero(sum.v, 1);
  const auto& c = p_.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j) {
    mpfr_const_pi(ang.v, MPFR_RNDN);
    mpfr_mul_ui(ang.v, ang.v, 2 * j, MPFR_RNDN);
    mpfr_div_ui(ang.v, ang.v, d_, MPFR_RNDN);
    mpfr_cos(term.v, ang.v, MPFR_RNDN);
    mpfr_set_q(q.v, c[j].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.v, term.v, q.v, MPFR_RNDN);
    mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
  }
  return mpfr_get_d(sum.v, MPFR_RNDN);
}

std::string Cyclotomic::to_string() const { return p_.to_string("z"); }

Cyclotomic cyclotomic_eval(const SymLaurentPoly& poly, const RootArg& w) {
  const unsigned d = static_cast<unsigned>(w.d);
  std::vector<Rational> c(d, Rational(0));
  const auto& a = poly.coeffs();
  c[0] += a[0];
  for (std::size_t j = 1; j < a.size(); ++j) {
    long e = static_cast<long>((j * w.k) % d);
    c[e] += a[j];
    c[(d - e) % d] += a[j];
  }
  return Cyclotomic(d, QPoly(std::move(c)));
}

}  // namespace bipolar::algebra

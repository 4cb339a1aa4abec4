#pragma once

#include <bipolar/algebra/linear.hpp>
#include <bipolar/algebra/poly.hpp>

#include <memory>
#include <optional>
#include <string>

namespace bipolar::algebra {

// exp(2 pi i k / d), reduced so gcd(k, d) = 1 and 0 <= k < d (k = 0 forces d = 1).
struct RootArg {
  long k = 0;
  long d = 1;
  RootArg() = default;
  RootArg(long k_, long d_);
  bool is_one() const { return k == 0; }
  RootArg conj() const { return RootArg(d - k, d); }
  bool operator==(const RootArg&) const = default;
  // Ordering by angle in [0, 2 pi).
  bool operator<(const RootArg& o) const;
  std::string to_string() const;
};

// Element of Q(zeta_d), held as the canonical remainder mod Phi_d.
class Cyclotomic {
 public:
  Cyclotomic(unsigned d, const Rational& c);
  Cyclotomic(unsigned d, const QPoly& p);
  static Cyclotomic zeta(unsigned d, long k);

  unsigned order() const { return d_; }
  const QPoly& rep() const { return p_; }
  bool is_zero() const { return p_.is_zero(); }
  bool is_rational() const { return p_.degree() <= 0; }
  std::optional<Rational> rational_value() const;

  // zeta -> zeta^-1 (complex conjugation).
  Cyclotomic conj() const;
  Cyclotomic inverse() const;
  bool is_real() const { return conj() == *this; }
  // Sign of a real element under the embedding zeta -> exp(2 pi i / d).
  int real_sign() const;
  // Real and imaginary parts to ~53 bits, for diagnostics only.
  double approx_real() const;

  friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic& operator+=(const Cyclotomic& b) { return *this = *this + b; }
  Cyclotomic& operator-=(const Cyclotomic& b) { return *this = *this - b; }
  Cyclotomic& operator*=(const Cyclotomic& b) { return *this = *this * b; }
  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.d_ == b.d_ && a.p_ == b.p_;
  }

  std::string to_string() const;

 private:
  unsigned d_;
  std::shared_ptr<const QPoly> mod_;
  QPoly p_;
};

template <>
struct FieldTraits<Cyclotomic> {
  static Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  static int sign(const Cyclotomic& x) { return x.real_sign(); }
  static Cyclotomic inverse(const Cyclotomic& x) { return x.inverse(); }
};

Cyclotomic cyclotomic_eval(const SymLaurentPoly& poly, const RootArg& w);

}  // namespace bipolar::algebra

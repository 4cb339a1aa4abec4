#include <bipolar/algebra/poly.hpp>
#include <bipolar/error.hpp>

#include <map>
#include <mutex>
#include <numeric>

namespace bipolar::algebra {

QPoly::QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly(std::vector<Rational>{c}); }

QPoly QPoly::monomial(const Rational& c, std::size_t deg) {
  std::vector<Rational> v(deg + 1, Rational(0));
  v[deg] = c;
  return QPoly(std::move(v));
}

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational QPoly::eval(const Rational& x) const {
  Rational s = 0;
  for (std::size_t i = c_.size(); i-- > 0;) s = s * x + c_[i];
  return s;
}

QPoly QPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
  return QPoly(std::move(d));
}

QPoly QPoly::monic() const {
  if (c_.empty()) return *this;
  return (1 / lead()) * *this;
}

QPoly operator+(const QPoly& a, const QPoly& b) {
  std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
  return QPoly(std::move(c));
}

QPoly operator-(const QPoly& a, const QPoly& b) { return a + Rational(-1) * b; }

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> c(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return QPoly(std::move(c));
}

QPoly operator*(const Rational& s, const QPoly& a) {
  std::vector<Rational> c = a.c_;
  for (auto& x : c) x *= s;
  return QPoly(std::move(c));
}

void QPoly::divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  int db = b.degree();
  std::vector<Rational> quo(a.degree() >= db ? a.degree() - db + 1 : 0, Rational(0));
  Rational lb = b.lead();
  for (int k = a.degree(); k >= db; --k) {
    if (rem[k] == 0) continue;
    Rational f = rem[k] / lb;
    quo[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.c_[j];
  }
  q = QPoly(std::move(quo));
  r = QPoly(std::move(rem));
}

QPoly operator%(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  QPoly::divmod(a, b, q, r);
  return r;
}

QPoly operator/(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  QPoly::divmod(a, b, q, r);
  return q;
}

std::string QPoly::to_string(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    Rational c = c_[i];
    bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    bool unit = c == 1 && i > 0;
    if (!unit) s += algebra::to_string(c);
    if (i > 0) s += var;
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = y;
    y = r;
  }
  return x.monic();
}

QPoly extended_gcd(const QPoly& a, const QPoly& b, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    QPoly q, r;
    QPoly::divmod(r0, r1, q, r);
    r0 = r1;
    r1 = r;
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  if (r0.is_zero()) {
    s = {};
    t = {};
    return r0;
  }
  Rational inv = 1 / r0.lead();
  s = inv * s0;
  t = inv * t0;
  return inv * r0;
}

QPoly squarefree_part(const QPoly& a) {
  if (a.degree() <= 0) return a.monic();
  return (a / gcd(a, a.derivative())).monic();
}

unsigned euler_phi(unsigned d) {
  unsigned r = d, n = d;
  for (unsigned p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  if (n > 1) r -= r / n;
  return r;
}

std::shared_ptr<const QPoly> cyclotomic_polynomial(unsigned d) {
  if (d == 0) throw DomainError("cyclotomic polynomial of order 0");
  static std::mutex mu;
  static std::map<unsigned, std::shared_ptr<const QPoly>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(d);
    if (it != memo.end()) return it->second;
  }
  QPoly p = QPoly::monomial(1, d) - QPoly::constant(1);
  for (unsigned e = 1; e < d; ++e)
    if (d % e == 0) p = p / *cyclotomic_polynomial(e);
  auto ptr = std::make_shared<const QPoly>(std::move(p));
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(d, ptr).first->second;
}

SymLaurentPoly::SymLaurentPoly(std::vector<Integer> a) : a_(std::move(a)) {
  while (a_.size() > 1 && a_.back() == 0) a_.pop_back();
  if (a_.empty()) a_.push_back(0);
}

std::vector<Integer> SymLaurentPoly::shifted() const {
  std::size_t g = half_degree();
  std::vector<Integer> v(2 * g + 1);
  v[g] = a_[0];
  for (std::size_t k = 1; k <= g; ++k) v[g + k] = v[g - k] = a_[k];
  return v;
}

QPoly SymLaurentPoly::in_trace_variable() const {
  // t^k + t^-k = C_k(x): C_0 = 2, C_1 = x, C_{k+1} = x C_k - C_{k-1}.
  QPoly x = QPoly::monomial(1, 1);
  QPoly prev = QPoly::constant(2), cur = x;
  QPoly f = QPoly::constant(Rational(a_[0]));
  for (std::size_t k = 1; k < a_.size(); ++k) {
    f = f + Rational(a_[k]) * cur;
    QPoly next = x * cur - prev;
    prev = cur;
    cur = next;
  }
  return f;
}

Integer SymLaurentPoly::at_one() const {
  Integer s = a_[0];
  for (std::size_t k = 1; k < a_.size(); ++k) s += 2 * a_[k];
  return s;
}

Integer SymLaurentPoly::at_minus_one() const {
  Integer s = a_[0];
  for (std::size_t k = 1; k < a_.size(); ++k) s += (k % 2 ? -2 : 2) * a_[k];
  return s;
}

SymLaurentPoly operator*(const SymLaurentPoly& a, const SymLaurentPoly& b) {
  auto x = a.shifted(), y = b.shifted();
  std::vector<Integer> z(x.size() + y.size() - 1, Integer(0));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) z[i + j] += x[i] * y[j];
  std::size_t g = a.half_degree() + b.half_degree();
  return SymLaurentPoly(std::vector<Integer>(z.begin() + g, z.end()));
}

std::string SymLaurentPoly::to_string() const {
  auto v = shifted();
  long g = static_cast<long>(half_degree());
  std::string s;
  for (long p = g; p >= -g; --p) {
    Integer c = v[p + g];
    if (c == 0) continue;
    bool neg = c < 0;
    if (neg) c = -c;
    if (s.empty())
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    if (p == 0 || c != 1) s += c.get_str();
    if (p == 1) s += "t";
    if (p != 0 && p != 1) s += "t^" + std::to_string(p);
  }
  return s.empty() ? "0" : s;
}

}  // namespace bipolar::algebra

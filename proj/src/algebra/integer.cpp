#include <bipolar/algebra/integer.hpp>
#include <bipolar/algebra/matrix.hpp>

#include <sstream>

namespace bipolar::algebra {

std::string to_string(const Integer& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw DomainError("not a rational: '" + s + "'");
  q.canonicalize();
  return q;
}

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational frac(const Rational& q) {
  Integer fl = floor_div(q.get_num(), q.get_den());
  Rational r = q - Rational(fl);
  r.canonicalize();
  return r;
}

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix s(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, a.cols() + j) = b(i, j);
  return s;
}

Rational bilinear(const RatMatrix& m, const RatVector& x, const RatVector& y) {
  Rational s = 0;
  auto my = m.apply(y);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * my[i];
  return s;
}

Integer bilinear(const IntMatrix& m, const IntVector& x, const IntVector& y) {
  Integer s = 0;
  auto my = m.apply(y);
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * my[i];
  return s;
}

std::string to_string(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) os << ',';
    os << '[';
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

}  // namespace bipolar::algebra

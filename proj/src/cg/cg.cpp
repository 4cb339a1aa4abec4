#include <bipolar/cg/cg.hpp>

#include <algorithm>
#include <numeric>
#include <set>

namespace bipolar::cg {

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

namespace {

long smallest_factor(long n) {
  for (long f = 2; f * f <= n; ++f)
    if (n % f == 0) return f;
  return n;
}

// Brent's variant of Pollard rho; n odd composite.
Integer rho(const Integer& n) {
  for (unsigned long c = 1;; ++c) {
    Integer x = 2, y = 2, g = 1;
    auto step = [&](const Integer& v) { return Integer((v * v + c) % n); };
    while (g == 1) {
      x = step(x);
      y = step(step(y));
      Integer diff = abs(x - y);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (g != n) return g;
  }
}

void factor_into(const Integer& n, std::vector<Integer>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  Integer f = rho(n);
  factor_into(f, out);
  factor_into(Integer(n / f), out);
}

}  // namespace

bool is_prime_power(long q) {
  if (q < 2) return false;
  long p = smallest_factor(q);
  while (q % p == 0) q /= p;
  return q == 1;
}

bool is_odd_prime_power(long d) { return d >= 3 && d % 2 == 1 && is_prime_power(d); }

std::vector<std::pair<Integer, unsigned>> factor(Integer n) {
  if (n <= 0) throw DomainError("factor needs a positive integer");
  std::vector<Integer> primes;
  for (long p = 2; p < 1000 && n > 1; ++p) {
    while (n % p == 0) {
      primes.push_back(p);
      n /= p;
    }
  }
  factor_into(n, primes);
  std::sort(primes.begin(), primes.end());
  std::vector<std::pair<Integer, unsigned>> out;
  for (auto& p : primes) {
    if (!out.empty() && out.back().first == p)
      ++out.back().second;
    else
      out.emplace_back(p, 1);
  }
  return out;
}

long multiplicative_order(const Integer& a, long d) {
  long r = algebra::mod(a, Integer(d)).get_si();
  if (std::gcd(r, d) != 1) throw DomainError("element is not a unit mod d");
  long x = r % d, k = 1;
  while (x != 1 % d) {
    x = x * r % d;
    ++k;
  }
  return k;
}

void CharacterData::validate() const {
  if (!is_prime_power(q)) throw DomainError("cover order must be a prime power");
  if (!is_odd_prime_power(d)) throw DomainError("character order must be an odd prime power");
  if (orbit.empty()) throw DomainError("orbit is empty");
  std::set<long> members;
  for (long s : orbit) {
    long r = ((s % d) + d) % d;
    if (r == 0) throw DomainError("character is trivial on a lift: zero orbit exponent");
    members.insert(r);
  }
  if (multiplier) {
    for (long s : members)
      if (!members.count(((s * *multiplier) % d + d) % d))
        throw DomainError("orbit is not closed under the multiplier");
  }
}

OrbitProduct orbit_product(const SymLaurentPoly& delta, long d, const std::vector<long>& orbit) {
  if (!is_odd_prime_power(d)) throw DomainError("character order must be an odd prime power");
  if (orbit.empty()) throw DomainError("orbit is empty");
  const unsigned ud = static_cast<unsigned>(d);
  Cyclotomic prod(ud, Rational(1));
  for (long s : orbit) {
    long r = ((s % d) + d) % d;
    if (r == 0) throw DomainError("character is trivial on a lift: zero orbit exponent");
    Cyclotomic v(ud, Rational(delta.coeff(0)));
    for (long j = 1; j <= static_cast<long>(delta.half_degree()); ++j) {
      Cyclotomic pair = Cyclotomic::zeta(ud, r * j % d) + Cyclotomic::zeta(ud, (d - r * j % d) % d);
      v += Cyclotomic(ud, Rational(delta.coeff(j))) * pair;
    }
    prod *= v;
  }
  return {prod, prod.rational_value()};
}

std::string to_string(NormStatus s) {
  switch (s) {
    case NormStatus::not_norm: return "not_norm";
    case NormStatus::possibly_norm: return "possibly_norm";
    case NormStatus::norm: return "norm";
  }
  return "?";
}

NormVerdict norm_test(const Integer& n, long d) {
  if (n == 0) throw DomainError("norm test needs a nonzero integer");
  if (!is_odd_prime_power(d)) throw DomainError("character order must be an odd prime power");
  Integer g;
  Integer dd(d);
  Integer an = abs(n);
  mpz_gcd(g.get_mpz_t(), an.get_mpz_t(), dd.get_mpz_t());
  if (g != 1) throw DomainError("norm test needs gcd(n, d) = 1");
  NormVerdict out;
  if (n < 0) out.notes.push_back("negative input replaced by its absolute value");
  if (an == 1) {
    out.status = NormStatus::norm;
    return out;
  }
  out.factorization = factor(an);
  for (auto& [p, e] : out.factorization) {
    long ord = multiplicative_order(p, d);
    if (e % 2 == 1 && ord % 2 == 0) {
      out.status = NormStatus::not_norm;
      out.witness = NormWitness{p, ord};
      return out;
    }
  }
  out.status = NormStatus::possibly_norm;
  return out;
}

CgReport cg_obstruction(const SymLaurentPoly& companion_delta, const CharacterData& character,
                        std::vector<std::string> hypotheses) {
  character.validate();
  CgReport rep{character, orbit_product(companion_delta, character.d, character.orbit), std::nullopt, false,
               std::move(hypotheses), {}};
  if (!rep.product.rational) {
    rep.notes.push_back("orbit product is not rational; orbit is not Galois-stable");
    return rep;
  }
  const Rational& v = *rep.product.rational;
  if (v == 0) {
    rep.notes.push_back("orbit product vanishes");
    return rep;
  }
  if (v.get_den() != 1) throw InvariantViolation("orbit product of an integral polynomial is not integral");
  Integer g;
  Integer dd(character.d);
  Integer num = abs(v.get_num());
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), dd.get_mpz_t());
  if (g != 1) {
    rep.notes.push_back("orbit product shares a factor with d; norm test not applicable");
    return rep;
  }
  rep.verdict = norm_test(v.get_num(), character.d);
  rep.obstructed = rep.verdict->status == NormStatus::not_norm;
  return rep;
}

}  // namespace bipolar::cg

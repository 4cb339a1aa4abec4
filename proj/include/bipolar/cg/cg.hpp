#pragma once

#include <bipolar/algebra/cyclotomic.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bipolar::cg {

using algebra::Cyclotomic;
using algebra::Integer;
using algebra::Rational;
using algebra::SymLaurentPoly;

bool is_prime(const Integer& n);
// Odd prime power >= 3 (returns false for 1).
bool is_odd_prime_power(long d);
bool is_prime_power(long q);
// Prime factorization, ascending.
std::vector<std::pair<Integer, unsigned>> factor(Integer n);
long multiplicative_order(const Integer& a, long d);

struct CharacterData {
  long q = 0;              // branched cover order
  long d = 0;              // character order
  std::vector<long> orbit; // exponents s(i), one per lift
  std::optional<long> multiplier;

  // Throws DomainError on malformed data.
  void validate() const;
};

struct OrbitProduct {
  Cyclotomic value;
  std::optional<Rational> rational;
};

OrbitProduct orbit_product(const SymLaurentPoly& delta, long d, const std::vector<long>& orbit);

enum class NormStatus { not_norm, possibly_norm, norm };
std::string to_string(NormStatus s);

struct NormWitness {
  Integer prime;
  long order;
};

struct NormVerdict {
  NormStatus status = NormStatus::possibly_norm;
  std::optional<NormWitness> witness;
  std::vector<std::pair<Integer, unsigned>> factorization;
  std::vector<std::string> notes;
};

NormVerdict norm_test(const Integer& n, long d);

struct CgReport {
  CharacterData character;
  OrbitProduct product;
  std::optional<NormVerdict> verdict;  // empty when the product is not rational
  bool obstructed = false;
  std::vector<std::string> hypotheses;
  std::vector<std::string> notes;
};

// The conclusion is conditional on the hypotheses, which are carried verbatim.
CgReport cg_obstruction(const SymLaurentPoly& companion_delta, const CharacterData& character,
                        std::vector<std::string> hypotheses = {});

}  // namespace bipolar::cg

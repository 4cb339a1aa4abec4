#include <bipolar/algebra/linear.hpp>
#include <bipolar/lattice/lattice.hpp>

#include <doctest.h>

#include "../support/oracles.hpp"

#include <cmath>
#include <random>

using namespace bipolar::lattice;
using bipolar::algebra::Integer;
using bipolar::algebra::IntMatrix;
using bipolar::algebra::IntVector;

namespace {

IntMatrix e8() {
  IntMatrix m(8, 8);
  for (std::size_t i = 0; i < 8; ++i) m(i, i) = 2;
  for (std::size_t i = 0; i + 1 < 7; ++i) m(i, i + 1) = m(i + 1, i) = -1;
  m(4, 7) = m(7, 4) = -1;
  return m;
}

IntMatrix chain_form() {
  return Integer(7) * IntMatrix{{-9, -2, -6, 1}, {-2, -9, -6, 1}, {-6, -6, -11, 3}, {1, 1, 3, -7}};
}

// Count of vectors with x^T G x <= bound, by scanning a box that contains the ellipsoid.
long box_count(const IntMatrix& g, long bound, long* min_char = nullptr) {
  const std::size_t n = g.rows();
  auto inv = bipolar::algebra::rational_inverse(g);
  std::vector<long> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<long>(std::sqrt(bound * inv(i, i).get_d())) + 1;
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = -r[i];
  long count = 0;
  for (;;) {
    Integer q = bipolar::algebra::bilinear(g, x, x);
    if (q <= bound) {
      ++count;
      if (min_char && is_characteristic(g, x) && (*min_char < 0 || q < *min_char)) *min_char = q.get_si();
    }
    std::size_t k = 0;
    while (k < n && x[k] == r[k]) x[k] = -r[k], ++k;
    if (k == n) break;
    x[k] += 1;
  }
  return count;
}

}  // namespace

TEST_CASE("definiteness classification") {
  CHECK(definiteness(IntMatrix::identity(4)) == Definiteness::positive);
  CHECK(definiteness(chain_form()) == Definiteness::negative);
  CHECK(definiteness(IntMatrix{{0, 1}, {1, 0}}) == Definiteness::indefinite);
  CHECK(definiteness(IntMatrix{{1, 1}, {1, 1}}) == Definiteness::degenerate);
  CHECK_THROWS_AS(definiteness(IntMatrix{{1, 2}, {0, 1}}), bipolar::DomainError);
}

TEST_CASE("characteristic vectors") {
  CHECK(is_characteristic(IntMatrix::identity(2), {1, 1}));
  CHECK_FALSE(is_characteristic(IntMatrix::identity(2), {1, 0}));
  // Every diagonal entry and every entry of the last row of the form is odd.
  CHECK(is_characteristic(chain_form(), {0, 0, 0, 1}));
  CHECK_THROWS_AS(is_characteristic(IntMatrix::identity(2), {1, 1, 1}), bipolar::DomainError);

  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> small(-3, 3);
  for (int t = 0; t < 100; ++t) {
    IntMatrix m = t % 2 ? e8() : oracle::random_unimodular(rng, 5).transpose() * IntMatrix::identity(5) * oracle::random_unimodular(rng, 5);
    m = m.transpose() + m;  // symmetric, possibly not unimodular; parity check is still defined
    IntVector x(m.rows()), v(m.rows());
    for (auto& e : x) e = small(rng);
    for (auto& e : v) e = small(rng);
    auto shifted = m.apply(v);
    for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + 2 * shifted[i];
    CHECK(is_characteristic(m, x) == is_characteristic(m, shifted));
  }
}

TEST_CASE("short vector enumeration agrees with a box scan") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix u = oracle::random_unimodular(rng, n, 4);
    IntMatrix g = u.transpose() * IntMatrix::identity(n) * u;
    if (t % 4 == 0) g = g + IntMatrix::identity(n);
    long bound = 3;
    long ours = 0;
    enumerate_short(g, bound, IntVector(n, Integer(0)), 1, [&](const IntVector& x, const Integer& q) {
      CHECK(q == bipolar::algebra::bilinear(g, x, x));
      ++ours;
    });
    CHECK(ours == box_count(g, bound));
  }
}

TEST_CASE("minimal characteristic squares") {
  for (std::size_t n = 1; n <= 6; ++n) {
    auto r = min_characteristic_square(IntMatrix::identity(n));
    CHECK(r.value == Integer(static_cast<long>(n)));
    CHECK(is_characteristic(IntMatrix::identity(n), r.x));
    for (auto& e : r.x) CHECK(abs(e) == 1);
  }
  auto neg = min_characteristic_square(Integer(-1) * e8());
  CHECK(neg.value == 0);
  CHECK_THROWS_AS(min_characteristic_square(IntMatrix{{1, 0}, {0, -1}}), bipolar::DomainError);
  CHECK_THROWS_AS(min_characteristic_square(IntMatrix::identity(13)), bipolar::BoundExceeded);

  // Box-scan oracle on small congruates of the identity.
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    std::size_t n = 2 + t % 3;
    IntMatrix u = oracle::random_unimodular(rng, n, 3);
    IntMatrix g = u.transpose() * u;
    long expect = -1;
    box_count(g, static_cast<long>(n), &expect);
    CHECK(min_characteristic_square(g).value == expect);
  }
}

TEST_CASE("diagonalizability") {
  for (std::size_t n = 1; n <= 6; ++n) CHECK(is_diagonalizable(IntMatrix::identity(n)));
  CHECK_FALSE(is_diagonalizable(Integer(-1) * e8()));
  CHECK_FALSE(is_diagonalizable(e8()));
  std::mt19937_64 rng(11);
  IntMatrix u = oracle::random_unimodular(rng, 3);
  CHECK(is_diagonalizable(u.transpose() * u));
  CHECK_FALSE(is_diagonalizable(IntMatrix{{2, 1}, {1, 2}}));  // det 3
}

TEST_CASE("Elkies dichotomy on the definite corpus") {
  std::mt19937_64 rng(2024);
  struct Entry {
    IntMatrix m;
    bool diagonal;
  };
  std::vector<Entry> corpus;
  for (std::size_t n = 1; n <= 8; ++n) {
    corpus.push_back({IntMatrix::identity(n), true});
    corpus.push_back({Integer(-1) * IntMatrix::identity(n), true});
  }
  corpus.push_back({e8(), false});
  corpus.push_back({Integer(-1) * e8(), false});
  for (int t = 0; t < 24; ++t) {
    std::size_t n = t % 2 ? 8 : 2 + t % 6;
    bool use_e8 = t % 2;
    IntMatrix base = use_e8 ? e8() : IntMatrix::identity(n);
    if (t % 4 >= 2) base = Integer(-1) * base;
    IntMatrix u = oracle::random_unimodular(rng, n, 8);
    corpus.push_back({u.transpose() * base * u, !use_e8});
  }
  for (auto& e : corpus) {
    const long dim = static_cast<long>(e.m.rows());
    auto r = min_characteristic_square(e.m);
    CHECK(is_characteristic(e.m, r.x));
    CHECK(bipolar::algebra::bilinear(e.m, r.x, r.x) == r.value);
    CHECK(abs(r.value) <= dim);
    bool diag = is_diagonalizable(e.m);
    CHECK(diag == e.diagonal);
    CHECK((abs(r.value) == dim) == diag);
  }
}

TEST_CASE("congruence search") {
  IntMatrix a{{1, 0}, {0, -1}};
  IntMatrix b{{0, 1}, {1, -1}};
  auto r = congruence_search(a, b, 2);
  REQUIRE(r.witness);
  CHECK(r.witness->transpose() * a * *r.witness == b);
  CHECK(abs(bipolar::algebra::determinant(*r.witness)) == 1);

  auto id = congruence_search(IntMatrix::identity(3), IntMatrix::identity(3), 1);
  REQUIRE(id.witness);
  CHECK(id.witness->transpose() * *id.witness == IntMatrix::identity(3));

  auto none = congruence_search(IntMatrix{{0, 1}, {1, 0}}, a, 3);
  CHECK_FALSE(none.witness);
  CHECK(none.exhausted);
  CHECK(none.reason.find("even") != std::string::npos);

  CHECK_THROWS_AS(congruence_search(IntMatrix::identity(7), IntMatrix::identity(7), 1), bipolar::BoundExceeded);

  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    IntMatrix u = oracle::random_unimodular(rng, 3, 2);
    IntMatrix target = u.transpose() * IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}} * u;
    auto found = congruence_search(IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}}, target, 3);
    if (found.witness) {
      CHECK(found.witness->transpose() * IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}} * *found.witness == target);
    } else {
      CHECK(found.exhausted);
    }
  }
}

TEST_CASE("unimodular form invariant") {
  CHECK_NOTHROW(UnimodularForm(e8()));
  CHECK_THROWS_AS(UnimodularForm(IntMatrix{{2, 1}, {1, 2}}), bipolar::InvariantViolation);
}

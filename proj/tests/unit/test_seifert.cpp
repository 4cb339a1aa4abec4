#include <bipolar/seifert/seifert.hpp>

#include <doctest.h>

#include "../support/oracles.hpp"

#include <cmath>

using namespace bipolar::seifert;
using bipolar::algebra::IntMatrix;

namespace {

const SeifertMatrix RHT(IntMatrix{{-1, 1}, {0, -1}});
const SeifertMatrix FIG8(IntMatrix{{1, 1}, {0, -1}});
const SeifertMatrix TWIST_J(IntMatrix{{-1, 1}, {0, 11}});
const SeifertMatrix UNKNOT;

SeifertMatrix twist(long j) { return SeifertMatrix(IntMatrix{{-1, 1}, {0, -2 * j}}); }

SeifertMatrix metabolic(long a, long b) {
  // Top-left entry zero; genus one slice-type form.
  return SeifertMatrix(IntMatrix{{0, a + 1}, {a, b}});
}

}  // namespace

TEST_CASE("invariant checked on construction") {
  CHECK_THROWS_AS(SeifertMatrix(IntMatrix{{1, 0}, {0, 1}}), bipolar::InvariantViolation);
  CHECK_THROWS_AS(SeifertMatrix(IntMatrix{{1}}), bipolar::InvariantViolation);
}

TEST_CASE("alexander polynomials") {
  CHECK(alexander(TWIST_J).to_string() == "-11t + 23 - 11t^-1");
  CHECK(alexander(RHT).to_string() == "t - 1 + t^-1");
  CHECK(alexander(UNKNOT).to_string() == "1");
  // The 9_46 form: Delta(1) = 1 fixes the overall sign.
  auto d946 = alexander(SeifertMatrix(IntMatrix{{0, 2}, {1, 0}}));
  CHECK(d946.to_string() == "-2t + 5 - 2t^-1");
  CHECK(d946.at_one() == 1);
  for (long j = 1; j <= 5; ++j) {
    // Symbolic oracle: det([[-1+t, 1],[-t, -2j+2jt]]) = 2j(t-1)^2 + t.
    auto d = alexander(twist(j));
    CHECK(d.coeff(1) == 2 * j);
    CHECK(d.coeff(0) == -(4 * j - 1));
  }
}

TEST_CASE("alexander polynomial is normalized on a random corpus") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 100; ++t) {
    SeifertMatrix v(oracle::random_seifert(rng, 1 + rng() % 3, 3));
    CHECK(alexander(v).at_one() == 1);
  }
}

TEST_CASE("signatures at roots of unity") {
  using bipolar::algebra::RootArg;
  CHECK(signature_at(RHT, RootArg(1, 2)) == -2);
  CHECK(signature_at(FIG8, RootArg(1, 2)) == 0);
  CHECK(signature_at(metabolic(0, 0), RootArg(1, 5)) == 0);
  CHECK(signature_at(metabolic(2, -3), RootArg(2, 7)) == 0);
  CHECK_THROWS_AS(signature_at(RHT, RootArg(0, 1)), bipolar::DomainError);
  // Jump point of the trefoil: the average of 0 and -2.
  CHECK(signature_at(RHT, RootArg(1, 6)) == -1);
  CHECK(signature_at(RHT, RootArg(5, 6)) == -1);
  CHECK(tristram_signatures(RHT, 2, 1) == std::vector<long>{-2});
  CHECK(tristram_signatures(FIG8, 3, 1) == std::vector<long>{0, 0});
  CHECK(tristram_signatures(metabolic(1, 1), 5, 1) == std::vector<long>{0, 0, 0, 0});
  CHECK_THROWS_AS(tristram_signatures(RHT, 4, 1), bipolar::DomainError);
}

TEST_CASE("signature function of the trefoil matches dense sampling") {
  auto sf = signature_function(RHT);
  REQUIRE(sf.jumps.size() == 1);
  REQUIRE(sf.jumps[0].root.has_value());
  CHECK(*sf.jumps[0].root == bipolar::algebra::RootArg(1, 6));
  CHECK(sf.plateaus == std::vector<long>{0, -2});
  CHECK(sf.max_value() <= 0);
  const double pi = std::acos(-1.0);
  for (int i = 1; i < 10000; ++i) {
    double theta = pi * i / 10000.0;
    double margin;
    long s = oracle::float_signature(RHT.matrix(), theta, &margin);
    if (margin < 1e-9) continue;
    CHECK(s == (theta < pi / 3 ? 0 : -2));
  }
  CHECK(signature_function(UNKNOT).identically_zero());
  CHECK(signature_function(FIG8).identically_zero());
  CHECK(signature_function(FIG8).jumps.empty());
}

TEST_CASE("signature function agrees with exact point evaluation off the roots") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    SeifertMatrix v(oracle::random_seifert(rng, 1 + rng() % 2, 2));
    auto sf = signature_function(v);
    for (int s = 0; s < 25; ++s) {
      long d = 3 + static_cast<long>(rng() % 40), k = 1 + static_cast<long>(rng() % (d - 1));
      bipolar::algebra::RootArg w(k, d);
      if (w.is_one()) continue;
      CHECK(sf.value_at(w) == signature_at(v, w));
      ++checked;
    }
  }
  CHECK(checked >= 900);
}

TEST_CASE("signature even symmetry and block additivity") {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 60; ++t) {
    SeifertMatrix a(oracle::random_seifert(rng, 1 + rng() % 2, 3));
    SeifertMatrix b(oracle::random_seifert(rng, 1, 3));
    SeifertMatrix ab = a + b;
    long d = 3 + static_cast<long>(rng() % 12), k = 1 + static_cast<long>(rng() % (d - 1));
    bipolar::algebra::RootArg w(k, d);
    if (w.is_one()) continue;
    CHECK(signature_at(a, w) == signature_at(a, w.conj()));
    CHECK(signature_at(ab, w) == signature_at(a, w) + signature_at(b, w));
    CHECK(alexander(ab) == alexander(a) * alexander(b));
    CHECK(arf(ab) == (arf(a) ^ arf(b)));
  }
}

TEST_CASE("rho0") {
  auto r = rho0(RHT);
  REQUIRE(r.exact.has_value());
  CHECK(*r.exact == Rational(-4, 3));
  CHECK(rho0(UNKNOT).exact == Rational(0));
  CHECK(rho0(FIG8).exact == Rational(0));
  // twist(1): Delta = 2t - 3 + 2t^-1, jump at 2cos(theta) = 3/2, not a root of unity.
  auto rk = rho0(twist(1));
  CHECK_FALSE(rk.exact.has_value());
  CHECK(rk.hi - rk.lo <= Rational(Integer(1), Integer("10000000000")));
  double expect = -2 + 2 * std::acos(0.75) / std::acos(-1.0);
  CHECK(rk.lo.get_d() <= expect + 1e-12);
  CHECK(rk.hi.get_d() >= expect - 1e-12);
}

TEST_CASE("rho0 interval against numerical integration") {
  std::mt19937_64 rng(8);
  const double pi = std::acos(-1.0);
  for (int t = 0; t < 15; ++t) {
    SeifertMatrix v(oracle::random_seifert(rng, 1 + rng() % 2, 2));
    auto r = rho0(v);
    CHECK(r.hi - r.lo <= Rational(Integer(1), Integer("10000000000")));
    const int N = 20000;
    double acc = 0;
    for (int i = 0; i < N; ++i) acc += oracle::float_signature(v.matrix(), pi * (i + 0.5) / N);
    acc /= N;
    CHECK(std::fabs(acc - r.lo.get_d()) < 2e-3);
    auto both = rho0(v + v);
    CHECK(both.lo <= 2 * r.hi);
    CHECK(2 * r.lo <= both.hi);
  }
}

TEST_CASE("arf and torsion coefficients") {
  for (long j = 1; j <= 20; ++j) CHECK(arf(twist(j)) == 0);
  CHECK(arf(RHT) == 1);
  CHECK(arf(UNKNOT) == 0);
  auto dr = alexander(RHT);
  CHECK(torsion_coefficient(dr, 0) == 1);
  CHECK(torsion_coefficient(dr, 1) == 0);
  CHECK(torsion_coefficient(alexander(UNKNOT), 3) == 0);
  CHECK(torsion_coefficient(alexander(TWIST_J), 0) == -11);
}

#include <bipolar/algebra/cyclotomic.hpp>
#include <bipolar/algebra/linear.hpp>
#include <bipolar/algebra/smith.hpp>

#include <doctest.h>

#include <cmath>
#include <random>

using namespace bipolar::algebra;

namespace {

IntMatrix framing_p() {
  return {{0, 0, 3, 1}, {0, 0, 2, 3}, {3, 2, 0, 0}, {1, 3, 0, 0}};
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lim) {
  std::uniform_int_distribution<int> dist(-lim, lim);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

// Cyclic Jacobi rotations; returns eigenvalues of a real symmetric matrix.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>> a) {
  const std::size_t n = a.size();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-22) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  return ev;
}

}  // namespace

TEST_CASE("smith form of small matrices") {
  CHECK(smith_normal_form(IntMatrix::identity(4)).D == IntMatrix::identity(4));
  IntMatrix d23 = {{2, 0}, {0, 3}};
  IntMatrix d16 = {{1, 0}, {0, 6}};
  CHECK(smith_normal_form(d23).D == d16);
  IntMatrix expect = {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 7, 0}, {0, 0, 0, 7}};
  auto s = smith_normal_form(framing_p());
  CHECK(s.D == expect);
  CHECK(s.U * framing_p() * s.Vt == s.D);
  auto shape = cokernel_shape(framing_p());
  CHECK(shape.free_rank == 0);
  REQUIRE(shape.torsion.size() == 2);
  CHECK(shape.torsion[0] == 7);
}

TEST_CASE("smith form reconstructs its input") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
    IntMatrix m = random_matrix(rng, r, c, 9);
    auto s = smith_normal_form(m);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.Vt)) == 1);
    CHECK(s.U * m * s.Vt == s.D);
    CHECK(unimodular_inverse(s.U) * s.D * unimodular_inverse(s.Vt) == m);
    auto d = s.diagonal();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (i + 1 < d.size() && d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
      if (d[i] == 0 && i + 1 < d.size()) CHECK(d[i + 1] == 0);
    }
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D(i, j) == 0);
  }
}

TEST_CASE("hermite form and kernel") {
  IntMatrix g = {{4, 6}, {6, 9}, {7, 0}};
  IntMatrix h = hermite_normal_form(g);
  REQUIRE(h.rows() == 2);
  // Determinant of the lattice is preserved.
  CHECK(abs(determinant(h)) == 21);
  IntMatrix row = {{2, 3, 5}};
  IntMatrix k = integer_kernel(row);
  CHECK(k.cols() == 2);
  CHECK((row * k) == IntMatrix(1, 2));
}

TEST_CASE("determinant and rational inverse") {
  CHECK(determinant(framing_p()) == 49);
  RatMatrix inv = rational_inverse(framing_p());
  CHECK(to_rational(framing_p()) * inv == RatMatrix::identity(4));
  // Block (3,-2;-1,3)/7 sits in the upper-right.
  CHECK(inv(0, 2) == Rational(3, 7));
  CHECK(inv(0, 3) == Rational(-2, 7));
  CHECK(inv(1, 2) == Rational(-1, 7));
  CHECK(inv(2, 0) == Rational(3, 7));
  CHECK(inv(2, 1) == Rational(-1, 7));
  IntMatrix two = {{2}};
  CHECK(rational_inverse(two)(0, 0) == Rational(1, 2));
  IntMatrix sing = {{1, 2}, {2, 4}};
  CHECK_THROWS_AS(rational_inverse(sing), bipolar::DomainError);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    IntMatrix m = random_matrix(rng, 5, 5, 6);
    CHECK(Rational(determinant(m)) == determinant(to_rational(m)));
  }
}

TEST_CASE("symmetric signature") {
  CHECK(symmetric_signature(IntMatrix::identity(5)) == Inertia{5, 0, 0});
  IntMatrix pm = {{1, 0}, {0, -1}};
  CHECK(symmetric_signature(pm) == Inertia{1, 0, 1});
  IntMatrix form = {{-9, -2, -6, 1}, {-2, -9, -6, 1}, {-6, -6, -11, 3}, {1, 1, 3, -7}};
  auto in = symmetric_signature(Integer(7) * form);
  CHECK(in == Inertia{0, 0, 4});
  CHECK(in.signature() == -4);
  IntMatrix hyp = {{0, 1}, {1, 0}};
  CHECK(symmetric_signature(hyp) == Inertia{1, 0, 1});
  IntMatrix nonsym = {{0, 1}, {2, 0}};
  CHECK_THROWS_AS(symmetric_signature(nonsym), bipolar::DomainError);
}

TEST_CASE("signature agrees with a floating eigenvalue oracle") {
  std::mt19937_64 rng(2024);
  int compared = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t n = 1 + rng() % 8;
    IntMatrix a = random_matrix(rng, n, n, 50);
    // Mix in low-rank and zero-diagonal cases.
    if (trial % 5 == 0)
      for (std::size_t i = 0; i < n; ++i) a(i, i) = 0;
    IntMatrix s = a + a.transpose();
    if (trial % 7 == 0 && n > 1) {
      // Rank one Gram matrix bb^T.
      IntMatrix b = random_matrix(rng, n, 1, 5);
      b(0, 0) = 1;
      auto in = symmetric_signature(b * b.transpose());
      CHECK(in == Inertia{1, n - 1, 0});
      continue;
    }
    auto in = symmetric_signature(s);
    CHECK(in.dim() == n);
    std::vector<std::vector<double>> f(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) f[i][j] = s(i, j).get_d();
    auto ev = jacobi_eigenvalues(f);
    bool separated = true;
    std::size_t pos = 0, neg = 0, zero = 0;
    for (double e : ev) {
      if (std::fabs(e) < 1e-6) separated = false;
      e > 0 ? ++pos : ++neg;
    }
    if (!separated) continue;
    ++compared;
    CHECK(in.pos == pos);
    CHECK(in.neg == neg);
    CHECK(in.zero == zero);
  }
  CHECK(compared > 300);
}

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_polynomial(1)->to_string() == "x - 1");
  CHECK(cyclotomic_polynomial(6)->to_string() == "x^2 - x + 1");
  CHECK(cyclotomic_polynomial(7)->degree() == 6);
  for (unsigned d = 1; d <= 60; ++d) CHECK(cyclotomic_polynomial(d)->degree() == int(euler_phi(d)));
}

TEST_CASE("cyclotomic field arithmetic") {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> dist(-5, 5);
  for (unsigned d : {3u, 5u, 7u, 9u, 12u}) {
    auto rnd = [&] {
      std::vector<Rational> c(d);
      for (auto& x : c) x = dist(rng);
      return Cyclotomic(d, QPoly(c));
    };
    for (int t = 0; t < 20; ++t) {
      auto a = rnd(), b = rnd(), c = rnd();
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      if (!a.is_zero()) CHECK(a * a.inverse() == Cyclotomic(d, Rational(1)));
      CHECK(a.conj().conj() == a);
      CHECK((a * b).conj() == a.conj() * b.conj());
      // The norm-like element a * conj(a) is real and non-negative.
      auto n = a * a.conj();
      CHECK(n.is_real());
      CHECK(n.real_sign() >= 0);
    }
  }
  Cyclotomic q(7, Rational(5, 3));
  CHECK(q.conj() == q);
  CHECK(Cyclotomic::zeta(7, 7) == Cyclotomic(7, Rational(1)));
}

TEST_CASE("real sign near cancellation") {
  // 2cos(2 pi/5) = (sqrt5 - 1)/2; compare with 618033988/10^9.
  auto z = Cyclotomic::zeta(5, 1);
  auto x = z + z.conj();
  CHECK((x - Cyclotomic(5, Rational(618033988, 1000000000))).real_sign() == 1);
  CHECK((x - Cyclotomic(5, Rational(618033989, 1000000000))).real_sign() == -1);
  CHECK((x * x + x - Cyclotomic(5, Rational(1))).is_zero());
}

TEST_CASE("evaluation of symmetric Laurent polynomials") {
  SymLaurentPoly one;
  CHECK(cyclotomic_eval(one, RootArg(2, 9)).rational_value() == Rational(1));
  SymLaurentPoly p({Integer(-5), Integer(2)});
  CHECK(p.to_string() == "2t - 5 + 2t^-1");
  CHECK(cyclotomic_eval(p, RootArg(1, 3)).rational_value() == Rational(-7));
  SymLaurentPoly dj({Integer(23), Integer(-11)});
  CHECK(dj.to_string() == "-11t + 23 - 11t^-1");
  auto prod = cyclotomic_eval(dj, RootArg(1, 7)) * cyclotomic_eval(dj, RootArg(4, 7)) *
              cyclotomic_eval(dj, RootArg(2, 7));
  CHECK(prod.rational_value() == Rational(11089));
  // Trace variable: Delta(t) = f(t + 1/t) at t = 2.
  auto f = dj.in_trace_variable();
  CHECK(f.eval(Rational(5, 2)) == Rational(-11 * 2 + 23) - Rational(11, 2));
  CHECK(dj.at_one() == 1);
  CHECK(dj.at_minus_one() == 45);
}

TEST_CASE("root arguments") {
  RootArg r(6, 8);
  CHECK(r.k == 3);
  CHECK(r.d == 4);
  CHECK(RootArg(5, 5) == RootArg(0, 1));
  CHECK(RootArg(1, 3) < RootArg(1, 2));
  CHECK(RootArg(1, 3).conj() == RootArg(2, 3));
}

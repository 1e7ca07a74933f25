#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "wronsos/basis.hpp"
#include "wronsos/error.hpp"
#include "wronsos/matrix.hpp"
#include "wronsos/parse.hpp"
#include "wronsos/polynomial.hpp"

using namespace wronsos;

namespace {
Polynomial P(const char* s, std::size_t d = 0) { return parse_polynomial(s, d); }
}

TEST_CASE("ring operations") {
  CHECK(P("(z1 + z2) * (z1 - z2)") == P("z1^2 - z2^2"));
  CHECK(P("z1^2*z2").derivative(0) == P("2*z1*z2"));
  CHECK(P("(z1 + z2)^2") == P("z1^2 + 2*z1*z2 + z2^2"));
  CHECK(P("7", 2).derivative(1).is_zero());
  CHECK_THROWS_AS(P("z1") + P("z1", 2), Error);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937 rng(11);
  for (int i = 0; i < 30; ++i) {
    auto a = testing::random_polynomial(rng, 3, 3);
    auto b = testing::random_polynomial(rng, 3, 3);
    auto c = testing::random_polynomial(rng, 3, 3);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Polynomial(3));
  }
}

TEST_CASE("wronskian") {
  CHECK(wronskian(P("z1"), P("-1", 1), 0) == P("1", 1));
  CHECK(wronskian(P("z1*z2"), P("-(z1+z2)"), 0) == P("z2^2", 2));
  auto q = P("z1^3 - z2 + 4");
  CHECK(wronskian(q, q, 1).is_zero());

  std::mt19937 rng(5);
  for (int i = 0; i < 20; ++i) {
    auto q1 = testing::random_polynomial(rng, 2, 3);
    auto p1 = testing::random_polynomial(rng, 2, 3);
    auto r1 = testing::random_polynomial(rng, 2, 3);
    CHECK(wronskian(p1, q1, 0) == -wronskian(q1, p1, 0));
    CHECK(wronskian(q1, p1 * r1, 1) == r1 * wronskian(q1, p1, 1) + p1 * q1 * r1.derivative(1));
  }
}

TEST_CASE("homogenize") {
  // z0 is the last variable.
  CHECK(homogenize(P("z1^2 + 1"), 2) == P("z1^2 + z2^2"));
  CHECK(homogenize(P("z1*z2 + z1"), 3) == P("z3*z1*z2 + z3^2*z1"));
  CHECK(homogenize(P("z1*z2 + z2^2"), 2) == P("z1*z2 + z2^2", 3));
  CHECK_THROWS_AS(homogenize(P("z1^3"), 2), Error);

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto h = testing::random_polynomial(rng, 3, 4);
    CHECK(dehomogenize(homogenize(h, 4)) == h);
  }
}

TEST_CASE("gcd") {
  CHECK(gcd(P("z1^2 - z2^2"), P("z1 - z2")) == P("z1 - z2"));
  CHECK(gcd(P("z1", 2), P("z2")) == P("1", 2));
  CHECK(gcd(P("-2*z1^2 + 4*z2"), P("-2*z1^2 + 4*z2")) == P("z1^2 - 2*z2"));
  CHECK_THROWS_AS(gcd(Polynomial(2), Polynomial(2)), Error);

  std::mt19937 rng(17);
  for (int i = 0; i < 15; ++i) {
    auto g = testing::random_polynomial(rng, 2, 2, 3);
    if (g.is_zero()) continue;
    auto a = testing::random_polynomial(rng, 2, 2, 3);
    auto b = testing::random_polynomial(rng, 2, 2, 3);
    if (a.is_zero() || b.is_zero()) continue;
    auto h = gcd(a * g, b * g);
    CHECK_NOTHROW(divide_exact(h, primitive_normalized(g)));
  }
}

TEST_CASE("complex evaluation") {
  using C = std::complex<double>;
  const C i(0, 1);
  std::vector<C> pt1{i};
  CHECK(std::abs(eval_complex(P("z1^2"), pt1) - C(-1)) < 1e-12);
  std::vector<C> pt2{i, i};
  CHECK(std::abs(eval_complex(P("z1*z2"), pt2) - C(-1)) < 1e-12);
  std::vector<C> one{1, 1};
  CHECK(std::abs(eval_complex(P("z1^4*z2^2 + z1^2*z2^4 - 3*z1^2*z2^2 + 1"), one)) < 1e-12);
}

TEST_CASE("monomial bases") {
  auto b = build_basis(1, {1, 1});
  CHECK(b.monomials() == std::vector<MultiIndex>{{0, 0}, {1, 0}, {0, 1}});
  b = build_basis(2, {1, 1});
  CHECK(b.monomials() == std::vector<MultiIndex>{{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  b = build_basis(2, {2});
  CHECK(b.monomials() == std::vector<MultiIndex>{{0}, {1}, {2}});

  for (int n = 0; n <= 4; ++n) {
    for (int c1 = 0; c1 <= 3; ++c1) {
      for (int c2 = 0; c2 <= 3; ++c2) {
        std::size_t count = 0;
        for (int a = 0; a <= c1; ++a) {
          for (int e = 0; e <= c2; ++e) count += (a + e <= n);
        }
        CHECK(build_basis(n, {c1, c2}).size() == count);
      }
    }
  }
}

TEST_CASE("parser") {
  CHECK(to_string(P("z1^4*z2^2 + z1^2*z2^4 - 3*z1^2*z2^2 + 1")) ==
        "z1^4*z2^2 + z1^2*z2^4 - 3*z1^2*z2^2 + 1");
  CHECK(P("-2/5*z1") == Polynomial::monomial({1}, Rational(-2, 5)));
  CHECK(P("z3").nvars() == 3);
  try {
    P("z1 + * 2");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Parse);
    CHECK(std::string(e.what()).find("column") != std::string::npos);
  }
}

TEST_CASE("rational approximation") {
  CHECK(approximate(0.3333333333, 100) == Rational(1, 3));
  CHECK(approximate(-2.5, 10) == Rational(-5, 2));
  CHECK(approximate(3.14159265358979, 10) == Rational(22, 7));
}

TEST_CASE("exact LDLT") {
  SymMatrix a(3);
  a.set(0, 0, 4);
  a.set(0, 1, 2);
  a.set(1, 1, 1);
  a.set(2, 2, 1);
  auto f = ldlt_psd(a);
  CHECK(f.psd);
  CHECK(f.rank == 2);
  a.set(2, 2, -1);
  CHECK_FALSE(ldlt_psd(a).psd);
  SymMatrix z(2);
  z.set(0, 1, 1);
  CHECK_FALSE(ldlt_psd(z).psd);
}

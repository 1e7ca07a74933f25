#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "wronsos/error.hpp"
#include "wronsos/parse.hpp"
#include "wronsos/polarize.hpp"

using namespace wronsos;

namespace {

Polynomial P(const char* s, std::size_t d) { return parse_polynomial(s, d); }

// C(sigma) (sigma^mu_1, ..., sigma^mu_{2k+1})^T, row by row.
std::vector<Polynomial> chain_product(const ChainPencil& c) {
  const std::size_t n = c.size();
  std::vector<Polynomial> rows(n, Polynomial(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [slot, coef] : c.entries[i][j]) {
        rows[i].add_term(c.mu[j] + unit_index(n, slot), coef);
      }
    }
  }
  return rows;
}

bool pair_identity_holds(const SymmetricPencil& b, const MultiIndex& alpha, const MultiIndex& beta) {
  const auto rows = apply_to_basis(b);
  const std::size_t target = *b.basis.index_of(alpha);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Polynomial expect = i == target ? Polynomial::monomial(beta) : Polynomial(alpha.size());
    if (rows[i] != expect) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("chain pencil identity for k up to 5") {
  for (int k = 0; k <= 5; ++k) {
    const auto c = chain_pencil(k);
    const std::size_t n = c.size();
    const auto rows = chain_product(c);
    MultiIndex nu(n);
    for (std::size_t s = 0; s < n; s += 2) nu[s] = 1;
    CHECK(rows[0] == Polynomial::monomial(nu));
    for (std::size_t i = 1; i < n; ++i) CHECK(rows[i].is_zero());
    for (const auto& mu : c.mu) {
      CHECK(mu.degree() == k);
      for (int e : mu.exps) CHECK((e == 0 || e == 1));
    }
    if (k >= 1) {
      for (std::size_t s = 0; s < n; ++s) {
        auto m = c.coefficient_matrix(s);
        for (std::size_t i = 0; i < n; ++i) CHECK(m.get(i, i) == 0);
      }
    }
  }
}

TEST_CASE("chain pencil k = 1 matches the hand derivation") {
  const auto c = chain_pencil(1);
  CHECK(c.mu == std::vector<MultiIndex>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  const Rational h(1, 2);
  CHECK(c.entries[0][1] == LinearForm{{0, h}});
  CHECK(c.entries[0][2] == LinearForm{{2, h}});
  CHECK(c.entries[1][2] == LinearForm{{1, -h}});
  CHECK(c.entries[0][0].empty());
  CHECK(c.entries[1][1].empty());
  CHECK(c.entries[2][2].empty());
  const auto k0 = chain_pencil(0);
  CHECK(k0.entries[0][0] == LinearForm{{0, Rational(1)}});
  CHECK(k0.mu[0] == MultiIndex{0});
}

TEST_CASE("pair pencil examples") {
  auto basis = build_basis(2, {2, 2});
  for (const auto& m : basis.monomials()) {
    auto b = pair_pencil(m, m, basis);
    const std::size_t i = *basis.index_of(m);
    for (std::size_t k = 1; k < b.matrices.size(); ++k) CHECK(b.matrices[k].is_zero());
    CHECK(b.matrices[0].upper().size() == 1);
    CHECK(b.matrices[0].get(i, i) == 1);
  }

  auto b1 = build_basis(1, {1});
  auto pz = pair_pencil({1}, {0}, b1);
  CHECK(pair_identity_holds(pz, {1}, {0}));

  auto b2 = build_basis(1, {1, 1});
  auto pzz = pair_pencil({1, 0}, {0, 1}, b2);
  CHECK(pair_identity_holds(pzz, {1, 0}, {0, 1}));
  // Order (1, z1, z2): the hand solution over (z1, z2, 1) permuted.
  const Rational h(1, 2);
  CHECK(pzz.matrices[0].get(1, 2) == h);
  CHECK(pzz.matrices[2].get(1, 0) == h);
  CHECK(pzz.matrices[1].get(2, 0) == -h);

  CHECK_THROWS_AS(pair_pencil({2, 0}, {0, 0}, b2), Error);
  CHECK_THROWS_AS(pair_pencil({1, 0}, {0, 2}, b2), Error);
}

TEST_CASE("pair pencil on random monomials") {
  std::mt19937 rng(2024);
  int done = 0;
  while (done < 200) {
    std::uniform_int_distribution<int> dd(1, 3);
    const std::size_t d = dd(rng);
    auto basis = testing::random_basis(rng, d, 4);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    const MultiIndex alpha = basis[pick(rng)];
    const MultiIndex beta = basis[pick(rng)];
    auto b = pair_pencil(alpha, beta, basis);
    CHECK(pair_identity_holds(b, alpha, beta));
    for (const auto& row : pair_pencil_rows(alpha, beta)) {
      CHECK(basis.contains(row));
    }
    ++done;
  }
}

TEST_CASE("product polarization examples") {
  auto q = P("1", 1), p = P("z1", 1);
  auto a = product_polarization(q, p);
  CHECK(verify_pencil(a, q, p).ok);
  CHECK(quadratic_form(a.basis.monomials(), a.matrices[1]) == P("1", 1));

  q = P("z1", 1);
  p = P("-1", 1);
  a = product_polarization(q, p);
  CHECK(verify_pencil(a, q, p).ok);
  CHECK(bilinear_form(a) == P("-z1", 2));

  q = P("z1*z2", 2);
  p = P("-(z1+z2)", 2);
  a = product_polarization(q, p);
  CHECK(verify_pencil(a, q, p).ok);
  CHECK(quadratic_form(a.basis.monomials(), a.matrices[1]) == P("z2^2", 2));
  CHECK(quadratic_form(a.basis.monomials(), a.matrices[2]) == P("z1^2", 2));

  CHECK_THROWS_AS(product_polarization(Polynomial(2), Polynomial(2)), Error);
}

TEST_CASE("verify_pencil rejects wrong pencils") {
  auto q = P("z1 + 2", 2), p = P("z2 - z1", 2);
  SymmetricPencil zero(basis_for(q, p));
  auto check = verify_pencil(zero, q, p);
  CHECK_FALSE(check.ok);
  CHECK(check.failure.find("coefficient") != std::string::npos);

  // Adding an annihilating matrix to A_1 keeps the diagonal identity only.
  q = P("z1^2 + 1", 1);
  p = P("z1", 1);
  auto a = product_polarization(q, p);
  SymMatrix s(3);
  s.set(1, 1, 2);
  s.set(0, 2, -1);
  a.matrices[1] += s;
  check = verify_pencil(a, q, p);
  CHECK_FALSE(check.ok);
  CHECK(check.failure.rfind("bilinear", 0) == 0);
  CHECK(quadratic_form(a.basis.monomials(), a.matrices[1]) == wronskian(q, p, 0));
}

TEST_CASE("product polarization on random pairs") {
  std::mt19937 rng(77);
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> dd(1, 3);
    const std::size_t d = dd(rng);
    auto q = testing::random_polynomial(rng, d, 4);
    auto p = testing::random_polynomial(rng, d, 4);
    if (q.is_zero() && p.is_zero()) continue;
    auto a = product_polarization(q, p);
    auto check = verify_pencil(a, q, p);
    CHECK_MESSAGE(check.ok, check.failure);
  }
}

TEST_CASE("bilinearity over a common basis") {
  std::mt19937 rng(8);
  for (int t = 0; t < 10; ++t) {
    auto q = testing::random_polynomial(rng, 2, 3);
    auto p1 = testing::random_polynomial(rng, 2, 3);
    auto p2 = testing::random_polynomial(rng, 2, 3);
    auto basis = build_basis(3, {3, 3});
    if (q.is_zero()) continue;
    auto sum = product_polarization(q, p1, basis);
    sum += product_polarization(q, p2, basis);
    if ((p1 + p2).is_zero()) continue;
    CHECK(product_polarization(q, p1 + p2, basis) == sum);
  }
}

#include <random>

#include "doctest.h"
#include "generators.hpp"
#include "wronsos/error.hpp"
#include "wronsos/gramkernel.hpp"

using namespace wronsos;

namespace {

// Every basis with d <= 3 variables, total cap n <= 3 and caps <= n.
std::vector<MonomialBasis> small_bases() {
  std::vector<MonomialBasis> out;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> caps(d, 0);
      while (true) {
        out.push_back(build_basis(n, caps));
        int k = 0;
        while (k < d && caps[k] == n) caps[k++] = 0;
        if (k == d) break;
        ++caps[k];
      }
    }
  }
  return out;
}

std::size_t stacked_rank(const std::vector<KernelElement>& elements, std::size_t n) {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> cols;
  for (const auto& e : elements) {
    for (const auto& [ij, v] : e.matrix.upper()) cols.try_emplace(ij, cols.size());
  }
  Matrix m(elements.size(), cols.size());
  for (std::size_t r = 0; r < elements.size(); ++r) {
    for (const auto& [ij, v] : elements[r].matrix.upper()) m(r, cols[ij]) = v;
  }
  (void)n;
  return rank(m);
}

}  // namespace

TEST_CASE("pair classes") {
  auto b = build_basis(2, {2});
  auto pc = pairs_for_beta({2}, b);
  CHECK(pc.pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 2}, {1, 1}});
  b = build_basis(1, {1, 1});
  CHECK(pairs_for_beta({0, 0}, b).pairs.size() == 1);
  b = build_basis(2, {1, 1});
  CHECK(pairs_for_beta({1, 1}, b).pairs == std::vector<std::pair<std::size_t, std::size_t>>{{0, 3}, {1, 2}});
  CHECK(pairs_for_beta({5, 5}, b).pairs.empty());
}

TEST_CASE("elementary transforms") {
  CHECK(elementary_transform({1, 1}, 0, 1, {2, 2}) == MultiIndex{2, 0});
  CHECK(elementary_transform({0, 2}, 0, 1, {1, 2}) == MultiIndex{1, 1});
  CHECK_THROWS_AS(elementary_transform({2, 0}, 0, 1, {2, 2}), Error);
  try {
    elementary_transform({2, 0}, 0, 1, {2, 2});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InapplicableTransform);
  }
}

TEST_CASE("kernel basis examples") {
  auto b = build_basis(2, {2});
  auto k = kernel_basis(b);
  REQUIRE(k.size() == 1);
  CHECK(k[0].kind == KernelKind::Triple);
  CHECK(k[0].matrix.get(1, 1) == 2);
  CHECK(k[0].matrix.get(0, 2) == -1);
  CHECK(k[0].matrix.upper().size() == 2);
  CHECK(kernel_dimension_oracle(b) == 1);

  b = build_basis(1, {1, 1});
  CHECK(kernel_basis(b).empty());
  CHECK(kernel_dimension_oracle(b) == 0);

  b = build_basis(2, {1, 1});
  k = kernel_basis(b);
  REQUIRE(k.size() == 1);
  CHECK(k[0].kind == KernelKind::Quad);
  CHECK(k[0].matrix.get(0, 3) == 1);
  CHECK(k[0].matrix.get(1, 2) == -1);
  CHECK(kernel_dimension_oracle(b) == 1);

  CHECK_THROWS_AS(kernel_dimension_oracle(build_basis(10, {10, 10})), Error);
}

TEST_CASE("kernel basis completeness on small bases") {
  for (const auto& b : small_bases()) {
    const auto k = kernel_basis(b);
    CHECK(k.size() == kernel_dimension_oracle(b));
    for (const auto& e : k) {
      CHECK(quadratic_form(b.monomials(), e.matrix).is_zero());
      CHECK(e.kind != KernelKind::Generic);
    }
    CHECK(stacked_rank(k, b.size()) == k.size());
  }
}

TEST_CASE("reduced monomial sets get a kernel basis too") {
  // Motzkin's reduced support (1, z1 z2, z1^2 z2, z1 z2^2): no relations.
  std::vector<MultiIndex> monos{{0, 0}, {1, 1}, {2, 1}, {1, 2}};
  CHECK(kernel_basis(monos, 3).empty());
  // (1, z1^2, z1^4) is not a box: 1 * z1^4 = z1^2 * z1^2 needs a generic element.
  std::vector<MultiIndex> gaps{{0}, {2}, {4}};
  auto k = kernel_basis(gaps, 4);
  REQUIRE(k.size() == 1);
  CHECK(quadratic_form(gaps, k[0].matrix).is_zero());
}

TEST_CASE("defect completion with the displayed blocks") {
  // Triple element on (z1^2, z1 z2, z2^2) completed along z3.
  auto b = build_basis(2, {2, 2, 1});
  const std::size_t x = *b.index_of({1, 1, 0}), y = *b.index_of({2, 0, 0}),
                    w = *b.index_of({0, 2, 0});
  SymMatrix s(b.size());
  s.set(x, x, 2);
  s.set(y, w, -1);
  auto pencil = defect_completion(s, b, 2);
  CHECK(annihilates(pencil));
  CHECK(pencil.matrices[3] == s);
  const std::size_t z31 = *b.index_of({1, 0, 1}), z32 = *b.index_of({0, 1, 1});
  // Entries of the block are +-z1, +-z2 on the rows z3 z1, z3 z2.
  std::size_t nonzero = 0;
  for (std::size_t m = 1; m <= 2; ++m) nonzero += pencil.matrices[m].upper().size();
  CHECK(nonzero == 4);
  CHECK(pencil.matrices[0].is_zero());
  for (std::size_t m = 1; m <= 2; ++m) {
    for (const auto& [ij, v] : pencil.matrices[m].upper()) {
      CHECK((ij.first == z31 || ij.first == z32 || ij.second == z31 || ij.second == z32));
      CHECK(abs(v) == 1);
    }
  }

  // Quad element on (1, z1 z2, z1, z2) completed along z3: z0 enters S_0.
  b = build_basis(2, {1, 1, 1});
  SymMatrix q(b.size());
  q.set(*b.index_of({0, 0, 0}), *b.index_of({1, 1, 0}), 1);
  q.set(*b.index_of({1, 0, 0}), *b.index_of({0, 1, 0}), -1);
  pencil = defect_completion(q, b, 2);
  CHECK(annihilates(pencil));
  CHECK(pencil.matrices[3] == q);
  std::size_t entries = 0;
  for (const auto& m : pencil.matrices) entries += m.upper().size();
  CHECK(entries == 6);

  CHECK(defect_completion(SymMatrix(b.size()), b, 0).is_zero());
}

TEST_CASE("defect completion rejects bad hypotheses") {
  auto b = build_basis(2, {2});
  SymMatrix s(b.size());
  s.set(0, 0, 1);
  CHECK_THROWS_AS(defect_completion(s, b, 0), Error);
  // In the kernel but touching the top z1 power.
  SymMatrix k(b.size());
  k.set(1, 1, 2);
  k.set(0, 2, -1);
  CHECK(!completion_hypothesis_failure(k, b, 0).empty());
}

TEST_CASE("completion fails when a component moves exponent through the axis") {
  // Psi = (1, z, z^2, z^3), S = 2 E(z, z) - E(1, z^2): no symmetric S_0 exists.
  auto b = build_basis(3, {3});
  SymMatrix s(b.size());
  s.set(1, 1, 2);
  s.set(0, 2, -1);
  CHECK(completion_hypothesis_failure(s, b, 0).empty());
  try {
    defect_completion(s, b, 0);
    FAIL("expected no completion");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoCompletion);
  }
}

namespace {

// Independent check: all entries of every S_k (k != axis) as unknowns, one
// equation per coefficient of each row of S(z) Psi^T.
bool completion_exists_dense(const SymMatrix& s_axis, const MonomialBasis& b, std::size_t axis) {
  const std::size_t n = b.size(), d = b.nvars();
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> unknowns;
  for (std::size_t k = 0; k <= d; ++k) {
    if (k == axis + 1) continue;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) unknowns.emplace_back(k, i, j);
    }
  }
  std::map<std::pair<std::size_t, MultiIndex>, std::size_t> eq;
  auto row_of = [&](std::size_t i, const MultiIndex& m) {
    return eq.try_emplace({i, m}, eq.size()).first->second;
  };
  auto shift = [&](std::size_t k) { return k == 0 ? MultiIndex(d) : unit_index(d, k - 1); };
  std::vector<std::vector<std::size_t>> touches;
  for (const auto& [k, i, j] : unknowns) {
    std::vector<std::size_t> t{row_of(i, b[j] + shift(k))};
    if (i != j) t.push_back(row_of(j, b[i] + shift(k)));
    touches.push_back(t);
  }
  std::vector<std::pair<std::size_t, Rational>> rhs_entries;
  for (const auto& [ij, v] : s_axis.upper()) {
    rhs_entries.push_back({row_of(ij.first, b[ij.second] + shift(axis + 1)), -v});
    if (ij.first != ij.second) {
      rhs_entries.push_back({row_of(ij.second, b[ij.first] + shift(axis + 1)), -v});
    }
  }
  Matrix m(eq.size(), unknowns.size());
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    for (auto r : touches[u]) m(r, u) += 1;
  }
  std::vector<Rational> rhs(eq.size());
  for (const auto& [r, v] : rhs_entries) rhs[r] += v;
  return solve(m, rhs).has_value();
}

}  // namespace

TEST_CASE("completion verdicts agree with a dense solve") {
  std::mt19937 rng(41);
  int checked = 0;
  while (checked < 40) {
    std::uniform_int_distribution<int> dd(1, 2);
    const std::size_t d = dd(rng);
    auto b = testing::random_basis(rng, d, 3);
    std::uniform_int_distribution<std::size_t> ax(0, d - 1);
    const std::size_t axis = ax(rng);
    auto caps = b.var_caps();
    if (caps[axis] == 0) continue;
    caps[axis] -= 1;
    auto sub = build_basis(b.total_cap(), caps);
    SymMatrix s(b.size());
    for (const auto& e : kernel_basis(sub)) {
      const Rational c = testing::random_rational(rng, 3);
      for (const auto& [ij, v] : e.matrix.upper()) {
        s.add(*b.index_of(sub[ij.first]), *b.index_of(sub[ij.second]), c * v);
      }
    }
    if (s.is_zero()) continue;
    const bool exists = completion_exists_dense(s, b, axis);
    bool built = true;
    try {
      const auto pencil = defect_completion(s, b, axis);
      CHECK(annihilates(pencil));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NoCompletion);
      built = false;
    }
    CHECK(built == exists);
    ++checked;
  }
}

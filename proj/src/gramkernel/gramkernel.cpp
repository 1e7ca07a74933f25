#include "wronsos/gramkernel.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "wronsos/error.hpp"

namespace wronsos {

using IndexPair = std::pair<std::size_t, std::size_t>;

PairClass pairs_for_beta(const MultiIndex& beta, const MonomialBasis& basis) {
  if (beta.size() != basis.nvars()) {
    throw Error(ErrorKind::Structural, "beta and basis have different variable counts");
  }
  PairClass out{beta, {}};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (!divides(basis[i], beta)) continue;
    auto j = basis.index_of(beta - basis[i]);
    if (j && *j >= i) out.pairs.emplace_back(i, *j);
  }
  return out;
}

MultiIndex elementary_transform(const MultiIndex& m, std::size_t r, std::size_t l,
                                const std::vector<int>& caps) {
  if (r >= m.size() || l >= m.size() || caps.size() != m.size() || r == l) {
    throw Error(ErrorKind::InapplicableTransform, "bad variable indices for the transform");
  }
  if (m[r] >= caps[r]) {
    throw Error(ErrorKind::InapplicableTransform,
                "exponent of z" + std::to_string(r + 1) + " is already at its cap");
  }
  if (m[l] <= 0) {
    throw Error(ErrorKind::InapplicableTransform,
                "exponent of z" + std::to_string(l + 1) + " is zero");
  }
  MultiIndex out = m;
  out[r] += 1;
  out[l] -= 1;
  return out;
}

std::string_view to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::Triple: return "triple";
    case KernelKind::Quad: return "quad";
    case KernelKind::Generic: return "generic";
  }
  return "generic";
}

namespace {

MultiIndex homogenized(const MultiIndex& a, int n) {
  MultiIndex h(a.size() + 1);
  std::copy(a.exps.begin(), a.exps.end(), h.exps.begin());
  h[a.size()] = n - a.degree();
  return h;
}

MultiIndex dehomogenized(const MultiIndex& h) {
  return MultiIndex(std::vector<int>(h.exps.begin(), h.exps.end() - 1));
}

struct TreeEdge {
  IndexPair parent, child;
  // child = parent with one member u replaced by u + e_g - e_h (and the other
  // member compensating); elementary is false for edges joining components.
  bool elementary = false;
  std::size_t u = 0, v = 0, g = 0, h = 0;
};

KernelElement element_from_edge(const TreeEdge& e, const std::vector<MultiIndex>& hom,
                                std::size_t size, const MultiIndex& beta) {
  KernelElement k;
  k.matrix = SymMatrix(size);
  k.beta = beta;
  const auto [a, b] = e.parent;
  const auto [c, f] = e.child;
  const bool parent_sq = a == b, child_sq = c == f;

  if (!e.elementary) {
    k.kind = KernelKind::Generic;
    const Rational w1 = parent_sq ? 1 : 2, w2 = child_sq ? 1 : 2;
    k.matrix.add(a, b, w2);
    k.matrix.add(c, f, -w1);
    k.support = {a, b, c, f};
    std::sort(k.support.begin(), k.support.end());
    k.support.erase(std::unique(k.support.begin(), k.support.end()), k.support.end());
    return k;
  }

  k.var_r = e.h;
  k.var_l = e.g;
  if (parent_sq || child_sq) {
    const std::size_t x = parent_sq ? a : c;
    const IndexPair off = parent_sq ? e.child : e.parent;
    MultiIndex y_exp = hom[x];
    y_exp[e.h] += 1;
    y_exp[e.g] -= 1;
    const std::size_t y = hom[off.first] == y_exp ? off.first : off.second;
    const std::size_t w = y == off.first ? off.second : off.first;
    k.kind = KernelKind::Triple;
    k.matrix.set(x, x, 2);
    k.matrix.set(y, w, -1);
    k.support = {y, x, w};
    return k;
  }

  const std::size_t u = e.u, v = e.v;
  const std::size_t u2 = (u == a) ? b : a;
  const std::size_t v2 = (v == c) ? f : c;
  MultiIndex g1 = hom[u], g2 = hom[u2];
  g1[e.h] -= 1;
  g2[e.g] -= 1;
  if (g1 == g2) {
    throw Error(ErrorKind::InternalConsistency, "quad kernel element with equal cofactors");
  }
  k.kind = KernelKind::Quad;
  k.matrix.set(u, u2, 1);
  k.matrix.set(v, v2, -1);
  k.support = {u, v, u2, v2};
  return k;
}

}  // namespace

std::vector<KernelElement> kernel_basis(std::span<const MultiIndex> monomials, int n) {
  const std::size_t size = monomials.size();
  std::vector<MultiIndex> hom;
  std::map<MultiIndex, std::size_t, GradedLess> index;
  for (std::size_t i = 0; i < size; ++i) {
    if (monomials[i].degree() > n) {
      throw Error(ErrorKind::Precondition, "monomial degree exceeds the homogenization degree");
    }
    hom.push_back(homogenized(monomials[i], n));
    if (!index.emplace(hom.back(), i).second) {
      throw Error(ErrorKind::Structural, "repeated monomial in kernel basis input");
    }
  }
  if (size == 0) return {};
  const std::size_t vars = hom.front().size();

  std::map<MultiIndex, std::vector<IndexPair>, GradedLess> classes;
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i; j < size; ++j) {
      classes[dehomogenized(hom[i] + hom[j])].emplace_back(i, j);
    }
  }

  std::vector<KernelElement> out;
  for (const auto& [beta, pairs] : classes) {
    if (pairs.size() < 2) continue;
    const MultiIndex hbeta = homogenized(beta, 2 * n);
    std::map<IndexPair, bool> seen;
    for (const auto& pr : pairs) seen[pr] = false;
    std::vector<TreeEdge> edges;

    auto bfs = [&](IndexPair root) {
      std::deque<IndexPair> queue{root};
      seen[root] = true;
      while (!queue.empty()) {
        const IndexPair cur = queue.front();
        queue.pop_front();
        std::vector<std::size_t> members{cur.first};
        if (cur.second != cur.first) members.push_back(cur.second);
        for (std::size_t u : members) {
          for (std::size_t g = 0; g < vars; ++g) {
            for (std::size_t h = 0; h < vars; ++h) {
              if (g == h || hom[u][h] == 0) continue;
              MultiIndex moved = hom[u];
              moved[g] += 1;
              moved[h] -= 1;
              auto v = index.find(moved);
              if (v == index.end()) continue;
              const MultiIndex rest = hbeta - moved;
              if (std::any_of(rest.exps.begin(), rest.exps.end(), [](int x) { return x < 0; })) {
                continue;
              }
              auto v2 = index.find(rest);
              if (v2 == index.end()) continue;
              const IndexPair next{std::min(v->second, v2->second),
                                   std::max(v->second, v2->second)};
              if (seen[next]) continue;
              seen[next] = true;
              edges.push_back({cur, next, true, u, v->second, g, h});
              queue.push_back(next);
            }
          }
        }
      }
    };

    bfs(pairs.front());
    for (const auto& pr : pairs) {
      if (seen[pr]) continue;
      edges.push_back({pairs.front(), pr, false});
      bfs(pr);
    }
    for (const auto& e : edges) out.push_back(element_from_edge(e, hom, size, beta));
  }
  return out;
}

std::vector<KernelElement> kernel_basis(const MonomialBasis& basis) {
  return kernel_basis(std::span<const MultiIndex>(basis.monomials()), basis.total_cap());
}

std::size_t kernel_dimension_oracle(const MonomialBasis& basis) {
  const std::size_t n = basis.size();
  if (n > kOracleCapacity) {
    throw Error(ErrorKind::Capacity, "kernel dimension oracle is limited to " +
                                         std::to_string(kOracleCapacity) + " monomials");
  }
  // Column (i, j) is the polynomial Psi E_ij Psi^T; rows are its monomials.
  std::map<MultiIndex, std::size_t, GradedLess> rows;
  std::vector<Polynomial> columns;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const Polynomial col = Polynomial::monomial(basis[i]) * Polynomial::monomial(basis[j]) *
                             Rational(i == j ? 1 : 2);
      for (const auto& [m, c] : col.terms()) rows.try_emplace(m, rows.size());
      columns.push_back(col);
    }
  }
  Matrix m(rows.size(), columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    for (const auto& [mono, v] : columns[c].terms()) m(rows[mono], c) = v;
  }
  return columns.size() - rank(m);
}

std::string completion_hypothesis_failure(const SymMatrix& s_last, const MonomialBasis& basis,
                                          std::size_t axis) {
  if (s_last.size() != basis.size()) throw Error(ErrorKind::Structural, "matrix/basis size mismatch");
  if (axis >= basis.nvars()) throw Error(ErrorKind::Structural, "axis out of range");
  if (!quadratic_form(basis.monomials(), s_last).is_zero()) {
    return "Psi S Psi^T is not identically zero";
  }
  const int top = basis.var_caps()[axis];
  std::vector<Polynomial> deriv;
  for (const auto& m : basis.monomials()) {
    deriv.push_back(Polynomial::monomial(m).derivative(axis, top));
  }
  std::vector<Polynomial> rows(basis.size(), Polynomial(basis.nvars()));
  for (const auto& [ij, v] : s_last.upper()) {
    const auto [i, j] = ij;
    rows[i] += v * deriv[j];
    if (i != j) rows[j] += v * deriv[i];
  }
  for (const auto& r : rows) {
    if (!r.is_zero()) {
      return "S does not annihilate the top z" + std::to_string(axis + 1) + " derivative of Psi";
    }
  }
  return {};
}

bool annihilates(const SymmetricPencil& pencil) {
  const auto rows = apply_to_basis(pencil);
  return std::all_of(rows.begin(), rows.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<SymmetricPencil> solve_completion(const SymMatrix& s_axis,
                                                const MonomialBasis& basis, std::size_t axis) {
  const std::size_t d = basis.nvars(), n = basis.size();
  if (axis >= d) throw Error(ErrorKind::Structural, "axis out of range");
  const auto hom = basis.homogenized();

  // Unknown T_k[i][j] (k != axis, homogenized variable k) contributes to rows
  // i and j at monomials x^{H_j} z_k and x^{H_i} z_k. Everything splits by
  // the weight H_i + H_j + e_k.
  struct Block {
    std::map<std::pair<std::size_t, MultiIndex>, std::size_t> eq;
    std::vector<Rational> rhs;
    std::vector<std::tuple<std::size_t, std::size_t, std::size_t>> unknowns;
    std::vector<std::vector<std::size_t>> touches;
  };
  std::map<MultiIndex, Block, GradedLess> blocks;
  auto equation = [](Block& b, std::size_t row, const MultiIndex& mono) {
    auto [it, inserted] = b.eq.try_emplace({row, mono}, b.rhs.size());
    if (inserted) b.rhs.emplace_back(0);
    return it->second;
  };

  for (const auto& [ij, v] : s_axis.upper()) {
    const auto [i, j] = ij;
    const MultiIndex e = unit_index(d + 1, axis);
    Block& b = blocks[hom[i] + hom[j] + e];
    b.rhs[equation(b, i, hom[j] + e)] -= v;
    if (i != j) b.rhs[equation(b, j, hom[i] + e)] -= v;
  }
  // Only weights that carry a right-hand side need unknowns; the rest are
  // solved by zero.
  for (auto& [omega, b] : blocks) {
    for (std::size_t k = 0; k <= d; ++k) {
      if (k == axis || omega[k] == 0) continue;
      MultiIndex rest = omega;
      rest[k] -= 1;
      for (std::size_t i = 0; i < n; ++i) {
        if (!divides(hom[i], rest)) continue;
        auto j = basis.index_of(dehomogenized(rest - hom[i]));
        if (!j || *j < i || hom[*j] != rest - hom[i]) continue;
        b.unknowns.emplace_back(k, i, *j);
        std::vector<std::size_t> t{equation(b, i, hom[*j] + unit_index(d + 1, k))};
        if (*j != i) t.push_back(equation(b, *j, hom[i] + unit_index(d + 1, k)));
        b.touches.push_back(t);
      }
    }
  }

  SymmetricPencil out(basis);
  out.matrices[axis + 1] = s_axis;
  for (auto& [omega, b] : blocks) {
    if (std::all_of(b.rhs.begin(), b.rhs.end(), [](const Rational& r) { return r == 0; })) {
      continue;
    }
    Matrix m(b.rhs.size(), b.unknowns.size());
    for (std::size_t u = 0; u < b.unknowns.size(); ++u) {
      for (std::size_t row : b.touches[u]) m(row, u) += 1;
    }
    auto x = solve(m, b.rhs);
    if (!x) return std::nullopt;
    for (std::size_t u = 0; u < b.unknowns.size(); ++u) {
      const auto [k, i, j] = b.unknowns[u];
      out.matrices[k == d ? 0 : k + 1].add(i, j, (*x)[u]);
    }
  }
  return out;
}

namespace {

struct BlockEntry {
  std::size_t a, b;  // positions in the block's monomial list
  std::size_t var;   // homogenized variable multiplying the entry
  int coef;
};

// Completion of 2 E_xx - E_yw on (z_axis z_r g, z_axis z_l g, y, x, w).
constexpr BlockEntry kTripleBlock[] = {
    {0, 3, 1, -1}, {0, 4, 0, 1}, {1, 2, 1, 1}, {1, 3, 0, -1}, {2, 4, 2, -1}, {3, 3, 2, 2},
};
// Completion of E(z_r g1, z_l g2) - E(z_l g1, z_r g2) on
// (z_axis g2, z_axis g1, z_r g1, z_l g1, z_l g2, z_r g2).
constexpr BlockEntry kQuadBlock[] = {
    {0, 2, 1, -1}, {0, 3, 0, 1}, {1, 4, 0, -1}, {1, 5, 1, 1}, {2, 4, 2, 1}, {3, 5, 2, -1},
};

}  // namespace

SymmetricPencil defect_completion(const SymMatrix& s_last, const MonomialBasis& basis,
                                  std::size_t axis) {
  const std::string failure = completion_hypothesis_failure(s_last, basis, axis);
  if (!failure.empty()) throw Error(ErrorKind::Precondition, "completion hypothesis: " + failure);
  SymmetricPencil out(basis);
  if (s_last.is_zero()) return out;

  const std::size_t d = basis.nvars();
  std::vector<int> caps = basis.var_caps();
  caps[axis] -= 1;
  const MonomialBasis sub = build_basis(basis.total_cap(), caps);
  std::vector<std::size_t> to_full;
  std::map<std::size_t, std::size_t> to_sub;
  for (std::size_t i = 0; i < sub.size(); ++i) {
    to_full.push_back(*basis.index_of(sub[i]));
    to_sub[to_full.back()] = i;
  }
  const auto elements = kernel_basis(sub);
  const auto sub_hom = sub.homogenized();

  // Coordinates of s_last in the kernel basis, one small system per beta.
  std::map<MultiIndex, std::vector<std::size_t>, GradedLess> by_beta;
  for (std::size_t t = 0; t < elements.size(); ++t) by_beta[elements[t].beta].push_back(t);
  std::map<MultiIndex, std::vector<std::pair<IndexPair, Rational>>, GradedLess> target;
  for (const auto& [ij, v] : s_last.upper()) {
    const std::size_t i = to_sub.at(ij.first), j = to_sub.at(ij.second);
    target[sub[i] + sub[j]].push_back({{i, j}, v});
  }
  std::vector<Rational> coord(elements.size());
  for (const auto& [beta, entries] : target) {
    const auto& ids = by_beta[beta];
    std::map<IndexPair, std::size_t> rows;
    for (std::size_t t : ids) {
      for (const auto& [ij, v] : elements[t].matrix.upper()) rows.try_emplace(ij, rows.size());
    }
    for (const auto& [ij, v] : entries) rows.try_emplace(ij, rows.size());
    Matrix m(rows.size(), ids.size());
    std::vector<Rational> rhs(rows.size());
    for (std::size_t c = 0; c < ids.size(); ++c) {
      for (const auto& [ij, v] : elements[ids[c]].matrix.upper()) m(rows[ij], c) = v;
    }
    for (const auto& [ij, v] : entries) rhs[rows[ij]] = v;
    auto x = solve(m, rhs);
    if (!x) throw Error(ErrorKind::InternalConsistency, "matrix is not in the kernel span");
    for (std::size_t c = 0; c < ids.size(); ++c) coord[ids[c]] = (*x)[c];
  }

  SymMatrix residual(basis.size());
  auto place = [&](const MultiIndex& h) {
    auto i = basis.index_of(dehomogenized(h));
    if (!i) throw Error(ErrorKind::InternalConsistency, "completion monomial outside the basis");
    return *i;
  };
  auto add_block = [&](std::span<const BlockEntry> entries, const std::vector<std::size_t>& at,
                       const std::size_t vars[3], const Rational& c) {
    for (const auto& e : entries) {
      const std::size_t u = at[e.a], v = at[e.b], var = vars[e.var];
      const Rational value = c * e.coef * ((e.a != e.b && u == v) ? 2 : 1);
      out.matrices[var == d ? 0 : var + 1].add(u, v, value);
    }
  };

  for (std::size_t t = 0; t < elements.size(); ++t) {
    if (coord[t] == 0) continue;
    const auto& el = elements[t];
    const bool touches_axis = el.var_r == axis || el.var_l == axis;
    const std::size_t vars[3] = {el.var_r, el.var_l, axis};  // indices in BlockEntry::var
    if (el.kind == KernelKind::Triple && !touches_axis) {
      const auto& x = sub_hom[el.support[1]];
      MultiIndex zr = x, zl = x;
      zr[el.var_l] -= 1;
      zr[axis] += 1;
      zl[el.var_r] -= 1;
      zl[axis] += 1;
      std::vector<std::size_t> at{place(zr), place(zl), to_full[el.support[0]],
                                  to_full[el.support[1]], to_full[el.support[2]]};
      add_block(kTripleBlock, at, vars, coord[t]);
    } else if (el.kind == KernelKind::Quad && !touches_axis) {
      MultiIndex g1 = sub_hom[el.support[0]], g2 = sub_hom[el.support[2]];
      g1[el.var_r] -= 1;
      g2[el.var_l] -= 1;
      g1[axis] += 1;
      g2[axis] += 1;
      std::vector<std::size_t> at{place(g2), place(g1)};
      for (std::size_t s : el.support) at.push_back(to_full[s]);
      add_block(kQuadBlock, at, vars, coord[t]);
    } else {
      for (const auto& [ij, v] : el.matrix.upper()) {
        residual.add(to_full[ij.first], to_full[ij.second], coord[t] * v);
      }
    }
  }

  if (!residual.is_zero()) {
    auto rest = solve_completion(residual, basis, axis);
    if (!rest) {
      throw Error(ErrorKind::NoCompletion,
                  "no symmetric completion exists for the z" + std::to_string(axis + 1) +
                      " components that move exponent through z" + std::to_string(axis + 1));
    }
    out += *rest;
  }
  if (out.matrices[axis + 1] != s_last || !annihilates(out)) {
    throw Error(ErrorKind::InternalConsistency, "completion does not annihilate Psi");
  }
  return out;
}

}  // namespace wronsos

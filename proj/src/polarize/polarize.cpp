#include "wronsos/polarize.hpp"

#include <algorithm>
#include <sstream>

#include "wronsos/error.hpp"

namespace wronsos {

SymmetricPencil::SymmetricPencil(MonomialBasis b)
    : basis(std::move(b)), matrices(basis.nvars() + 1, SymMatrix(basis.size())) {}

bool SymmetricPencil::is_zero() const {
  return std::all_of(matrices.begin(), matrices.end(),
                     [](const SymMatrix& m) { return m.is_zero(); });
}

SymmetricPencil& SymmetricPencil::operator+=(const SymmetricPencil& other) {
  if (other.basis.monomials() != basis.monomials()) {
    throw Error(ErrorKind::Structural, "pencils are over different bases");
  }
  for (std::size_t k = 0; k < matrices.size(); ++k) matrices[k] += other.matrices[k];
  return *this;
}

bool SymmetricPencil::operator==(const SymmetricPencil& other) const {
  return basis.monomials() == other.basis.monomials() && matrices == other.matrices;
}

SymmetricPencil operator*(const Rational& c, SymmetricPencil pencil) {
  for (auto& m : pencil.matrices) m *= c;
  return pencil;
}

SymMatrix ChainPencil::coefficient_matrix(std::size_t slot) const {
  SymMatrix c(size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = i; j < size(); ++j) {
      auto it = entries[i][j].find(slot);
      if (it != entries[i][j].end()) c.set(i, j, it->second);
    }
  }
  return c;
}

ChainPencil chain_pencil(int k) {
  if (k < 0) throw Error(ErrorKind::Precondition, "chain pencil order must be nonnegative");
  const std::size_t size = 2 * static_cast<std::size_t>(k) + 1;
  ChainPencil chain;
  chain.k = k;
  chain.entries.assign(size, std::vector<LinearForm>(size));
  chain.mu.assign(size, MultiIndex(size));

  if (k == 0) {
    chain.entries[0][0][0] = 1;
    return chain;
  }

  // Entry rule with 1-based I, J: neighbours carry (-1)^max(I,J) sigma_min/2,
  // the two corners sigma_max/2.
  const Rational half(1, 2);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const std::size_t gap = i > j ? i - j : j - i;
      const std::size_t hi = std::max(i, j) + 1;
      if (gap == 1) {
        chain.entries[i][j][std::min(i, j)] = (hi % 2 == 0) ? half : -half;
      } else if (gap == size - 1) {
        chain.entries[i][j][std::max(i, j)] = half;
      }
    }
  }

  // mu_1 = sigma_2 sigma_4 ... sigma_2k, mu_2 = sigma_3 sigma_5 ... sigma_{2k+1},
  // mu_j = sigma_{j-2} mu_{j-2} / sigma_{j-1}.
  for (std::size_t s = 1; s < size; s += 2) chain.mu[0][s] = 1;
  for (std::size_t s = 2; s < size; s += 2) chain.mu[1][s] = 1;
  for (std::size_t j = 2; j < size; ++j) {
    chain.mu[j] = chain.mu[j - 2];
    chain.mu[j][j - 2] += 1;
    chain.mu[j][j - 1] -= 1;
  }
  return chain;
}

namespace {

struct PairLayout {
  ChainPencil chain;
  std::vector<std::size_t> slot_var;  // homogenized variable of each slot; d means z_0
  std::vector<MultiIndex> rows;       // dehomogenized row monomials
};

PairLayout layout_pair(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.size() != beta.size()) throw Error(ErrorKind::Structural, "variable count mismatch");
  const std::size_t d = alpha.size();
  const int a = alpha.degree(), b = beta.degree();
  const int m = std::max(a, b - 1);

  MultiIndex ha(d + 1), hb(d + 1);
  std::copy(alpha.exps.begin(), alpha.exps.end(), ha.exps.begin());
  std::copy(beta.exps.begin(), beta.exps.end(), hb.exps.begin());
  ha[d] = m - a;
  hb[d] = m + 1 - b;

  MultiIndex common(d + 1);
  for (std::size_t v = 0; v <= d; ++v) common[v] = std::min(ha[v], hb[v]);
  const MultiIndex m1 = ha - common, m2 = hb - common;

  // z_1..z_d in order with multiplicity, z_0 last.
  auto expand = [d](const MultiIndex& mono) {
    std::vector<std::size_t> vars;
    for (std::size_t v = 0; v <= d; ++v) {
      for (int e = 0; e < mono[v]; ++e) vars.push_back(v);
    }
    return vars;
  };
  const auto evens = expand(m1);
  const auto odds = expand(m2);
  const int k = static_cast<int>(evens.size());
  if (static_cast<int>(odds.size()) != k + 1) {
    throw Error(ErrorKind::InternalConsistency, "pair pencil degree bookkeeping failed");
  }

  PairLayout layout{chain_pencil(k), std::vector<std::size_t>(2 * k + 1), {}};
  for (int s = 0; s < k; ++s) layout.slot_var[2 * s + 1] = evens[s];
  for (int s = 0; s <= k; ++s) layout.slot_var[2 * s] = odds[s];

  for (const auto& mu : layout.chain.mu) {
    MultiIndex h = common;
    for (std::size_t s = 0; s < mu.size(); ++s) h[layout.slot_var[s]] += mu[s];
    layout.rows.emplace_back(std::vector<int>(h.exps.begin(), h.exps.begin() + d));
  }
  if (layout.rows.front() != alpha) {
    throw Error(ErrorKind::InternalConsistency, "pair pencil first row is not alpha");
  }
  return layout;
}

}  // namespace

std::vector<MultiIndex> pair_pencil_rows(const MultiIndex& alpha, const MultiIndex& beta) {
  return layout_pair(alpha, beta).rows;
}

SymmetricPencil pair_pencil(const MultiIndex& alpha, const MultiIndex& beta,
                            const MonomialBasis& basis) {
  if (alpha.size() != basis.nvars() || beta.size() != basis.nvars()) {
    throw Error(ErrorKind::Structural, "monomials and basis have different variable counts");
  }
  if (!basis.contains(alpha)) throw Error(ErrorKind::Structural, "alpha is not in the basis");
  if (beta.degree() > basis.total_cap()) {
    throw Error(ErrorKind::Precondition, "beta exceeds the basis degree cap");
  }
  for (std::size_t k = 0; k < basis.nvars(); ++k) {
    if (beta[k] > basis.var_caps()[k]) {
      throw Error(ErrorKind::Precondition, "beta exceeds a basis variable cap");
    }
  }

  const PairLayout layout = layout_pair(alpha, beta);
  const std::size_t d = basis.nvars();
  std::vector<std::size_t> idx;
  for (const auto& row : layout.rows) {
    auto i = basis.index_of(row);
    if (!i) throw Error(ErrorKind::InternalConsistency, "intermediate monomial left the basis");
    idx.push_back(*i);
  }

  // Merging duplicate rows is B^T D B with a 0/1 matrix B: sum entries into
  // their representatives. Each unordered pair is visited once per orientation.
  SymmetricPencil pencil(basis);
  const std::size_t size = layout.chain.size();
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      const std::size_t u = idx[i], v = idx[j];
      if (u > v) continue;
      for (const auto& [slot, c] : layout.chain.entries[i][j]) {
        const std::size_t var = layout.slot_var[slot];
        const std::size_t mat = (var == d) ? 0 : var + 1;
        pencil.matrices[mat].add(u, v, c);
      }
    }
  }
  return pencil;
}

SymmetricPencil product_polarization(const Polynomial& q, const Polynomial& p) {
  if (q.is_zero() && p.is_zero()) {
    throw Error(ErrorKind::Degenerate, "product polarization of two zero polynomials");
  }
  return product_polarization(q, p, basis_for(q, p));
}

SymmetricPencil product_polarization(const Polynomial& q, const Polynomial& p,
                                     const MonomialBasis& basis) {
  if (q.nvars() != p.nvars() || q.nvars() != basis.nvars()) {
    throw Error(ErrorKind::Structural, "polynomials and basis have different variable counts");
  }
  if (q.is_zero() && p.is_zero()) {
    throw Error(ErrorKind::Degenerate, "product polarization of two zero polynomials");
  }
  SymmetricPencil total(basis);
  for (const auto& [alpha, a] : q.terms()) {
    for (const auto& [beta, b] : p.terms()) {
      total += (a * b) * pair_pencil(alpha, beta, basis);
    }
  }
  return total;
}

Polynomial bilinear_form(const SymmetricPencil& pencil) {
  const std::size_t d = pencil.nvars();
  const auto& monos = pencil.basis.monomials();
  auto split = [d](const MultiIndex& left, const MultiIndex& right) {
    MultiIndex m(2 * d);
    for (std::size_t v = 0; v < d; ++v) {
      m[v] = left[v];
      m[d + v] = right[v];
    }
    return m;
  };
  Polynomial out(2 * d);
  for (std::size_t k = 0; k <= d; ++k) {
    for (const auto& [ij, c] : pencil.matrices[k].upper()) {
      const auto [i, j] = ij;
      MultiIndex shift(2 * d);
      if (k > 0) shift[d + k - 1] = 1;
      out.add_term(split(monos[i], monos[j]) + shift, c);
      if (i != j) out.add_term(split(monos[j], monos[i]) + shift, c);
    }
  }
  return out;
}

std::vector<Polynomial> apply_to_basis(const SymmetricPencil& pencil) {
  const std::size_t d = pencil.nvars();
  const auto& monos = pencil.basis.monomials();
  std::vector<Polynomial> rows(monos.size(), Polynomial(d));
  for (std::size_t k = 0; k <= d; ++k) {
    const MultiIndex shift = k == 0 ? MultiIndex(d) : unit_index(d, k - 1);
    for (const auto& [ij, c] : pencil.matrices[k].upper()) {
      const auto [i, j] = ij;
      rows[i].add_term(monos[j] + shift, c);
      if (i != j) rows[j].add_term(monos[i] + shift, c);
    }
  }
  return rows;
}

std::string first_difference(const Polynomial& lhs, const Polynomial& rhs) {
  const Polynomial diff = lhs - rhs;
  if (diff.is_zero()) return {};
  const auto& [alpha, c] = *diff.terms().begin();
  std::ostringstream out;
  out << "coefficient of " << to_string(Polynomial::monomial(alpha)) << " is "
      << to_string(lhs.coefficient(alpha)) << ", expected " << to_string(rhs.coefficient(alpha));
  return out.str();
}

PencilCheck verify_pencil(const SymmetricPencil& pencil, const Polynomial& q,
                          const Polynomial& p) {
  const std::size_t d = pencil.nvars();
  if (q.nvars() != d || p.nvars() != d) {
    throw Error(ErrorKind::Structural, "pencil and polynomials have different variable counts");
  }
  // q(zeta) p(z) in the 2d variables (zeta, z).
  Polynomial q_left(2 * d), p_right(2 * d);
  for (const auto& [alpha, c] : q.terms()) {
    MultiIndex m(2 * d);
    std::copy(alpha.exps.begin(), alpha.exps.end(), m.exps.begin());
    q_left.add_term(m, c);
  }
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex m(2 * d);
    std::copy(alpha.exps.begin(), alpha.exps.end(), m.exps.begin() + d);
    p_right.add_term(m, c);
  }
  const std::string bilinear = first_difference(bilinear_form(pencil), q_left * p_right);
  if (!bilinear.empty()) return {false, "bilinear identity: " + bilinear};

  for (std::size_t k = 0; k < d; ++k) {
    const std::string diag = first_difference(
        quadratic_form(pencil.basis.monomials(), pencil.matrices[k + 1]), wronskian(q, p, k));
    if (!diag.empty()) {
      return {false, "Wronskian identity for z" + std::to_string(k + 1) + ": " + diag};
    }
  }
  return {};
}

}  // namespace wronsos

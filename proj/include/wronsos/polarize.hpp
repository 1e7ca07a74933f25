#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "wronsos/basis.hpp"
#include "wronsos/matrix.hpp"
#include "wronsos/polynomial.hpp"

namespace wronsos {

/// A_0 + z_1 A_1 + ... + z_d A_d over a monomial basis. matrices[0] is the
/// constant part, matrices[k + 1] multiplies z_{k+1}.
struct SymmetricPencil {
  MonomialBasis basis;
  std::vector<SymMatrix> matrices;

  SymmetricPencil() = default;
  explicit SymmetricPencil(MonomialBasis b);

  std::size_t nvars() const { return basis.nvars(); }
  bool is_zero() const;

  SymmetricPencil& operator+=(const SymmetricPencil& other);
  bool operator==(const SymmetricPencil& other) const;
};

SymmetricPencil operator*(const Rational& c, SymmetricPencil pencil);

/// Linear form sum_s c_s * sigma_s, keyed by 0-based slot.
using LinearForm = std::map<std::size_t, Rational>;

/// Size (2k+1) pencil C(sigma) = sigma_1 C_1 + ... + sigma_{2k+1} C_{2k+1}
/// with C(sigma) * (sigma^{mu_1}, ..., sigma^{mu_{2k+1}})^T = (sigma_1 sigma_3
/// ... sigma_{2k+1}, 0, ..., 0)^T. Slots are 0-based here: sigma_1 is slot 0.
struct ChainPencil {
  int k = 0;
  std::vector<std::vector<LinearForm>> entries;  // (2k+1) x (2k+1), symmetric
  std::vector<MultiIndex> mu;                    // exponent vectors over 2k+1 slots

  std::size_t size() const { return entries.size(); }
  // Coefficient matrix of slot s.
  SymMatrix coefficient_matrix(std::size_t slot) const;
};

ChainPencil chain_pencil(int k);

/// Pencil B(z) over `basis` with B(z) Psi(z)^T = z^beta e_{idx(alpha)}.
SymmetricPencil pair_pencil(const MultiIndex& alpha, const MultiIndex& beta,
                            const MonomialBasis& basis);

/// Monomials z^{alpha-hat_j} indexing the rows of the chain before duplicate
/// rows are merged (first entry equals alpha).
std::vector<MultiIndex> pair_pencil_rows(const MultiIndex& alpha, const MultiIndex& beta);

/// Pencil with q(zeta) p(z) = Psi(zeta) A(z) Psi(z)^T over basis_for(q, p).
SymmetricPencil product_polarization(const Polynomial& q, const Polynomial& p);

/// Same construction over a caller-supplied basis that covers q and p.
SymmetricPencil product_polarization(const Polynomial& q, const Polynomial& p,
                                     const MonomialBasis& basis);

struct PencilCheck {
  bool ok = true;
  std::string failure;  // first offending coefficient, empty when ok
};

/// Psi(zeta) A(z) Psi(z)^T as a polynomial in 2d variables (zeta_1..zeta_d,
/// z_1..z_d).
Polynomial bilinear_form(const SymmetricPencil& pencil);

/// Exact check of q(zeta) p(z) = Psi(zeta) A(z) Psi(z)^T and of
/// W_k[q, p] = Psi(z) A_k Psi(z)^T for every k.
PencilCheck verify_pencil(const SymmetricPencil& pencil, const Polynomial& q,
                          const Polynomial& p);

/// Rows of A(z) Psi(z)^T as polynomials in z_1..z_d.
std::vector<Polynomial> apply_to_basis(const SymmetricPencil& pencil);

/// First coefficient where lhs and rhs differ, rendered for reports.
std::string first_difference(const Polynomial& lhs, const Polynomial& rhs);

}  // namespace wronsos

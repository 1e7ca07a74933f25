#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wronsos/basis.hpp"
#include "wronsos/matrix.hpp"
#include "wronsos/polarize.hpp"

namespace wronsos {

/// All unordered pairs (i, j), i <= j, of basis indices whose monomials
/// multiply to z^beta, sorted lexicographically.
struct PairClass {
  MultiIndex beta;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

PairClass pairs_for_beta(const MultiIndex& beta, const MonomialBasis& basis);

/// Moves one unit of exponent from z_l to z_r. caps[k] bounds the exponent of
/// variable k; r, l index into m (and caps).
MultiIndex elementary_transform(const MultiIndex& m, std::size_t r, std::size_t l,
                                const std::vector<int>& caps);

enum class KernelKind { Triple, Quad, Generic };

std::string_view to_string(KernelKind kind);

/// S with Psi S Psi^T = 0.
///
/// Triple: 2 at (x, x) and -1 at (y, w), where x = z_r z_l z^gamma,
/// y = z_r^2 z^gamma, w = z_l^2 z^gamma; support lists (y, x, w).
/// Quad: +1 at (z_r g1, z_l g2) and -1 at (z_l g1, z_r g2); support lists
/// (z_r g1, z_l g1, z_l g2, z_r g2).
/// Generic: w2 E(pi1) - w1 E(pi2) for two pairs not related by an elementary
/// transform; only produced for sets that are not full boxes.
///
/// var_r, var_l index the homogenized variables: k < d is z_{k+1}, d is z_0.
struct KernelElement {
  SymMatrix matrix;
  MultiIndex beta;
  KernelKind kind = KernelKind::Generic;
  std::vector<std::size_t> support;
  std::size_t var_r = 0;
  std::size_t var_l = 0;
};

std::vector<KernelElement> kernel_basis(const MonomialBasis& basis);

/// Kernel of Psi for an arbitrary list of distinct monomials of degree <= n,
/// using the same spanning-tree construction. Used for reduced Gram bases.
std::vector<KernelElement> kernel_basis(std::span<const MultiIndex> monomials, int n);

/// Nullity of S -> Psi S Psi^T on symmetric matrices by exact elimination.
std::size_t kernel_dimension_oracle(const MonomialBasis& basis);

inline constexpr std::size_t kOracleCapacity = 60;

/// Checks the two hypotheses of the completion: Psi S Psi^T = 0 and
/// S d^{n_axis} Psi^T / dz_axis^{n_axis} = 0. Returns an empty string when
/// both hold, otherwise names the failing one.
std::string completion_hypothesis_failure(const SymMatrix& s_last, const MonomialBasis& basis,
                                          std::size_t axis);

/// Pencil (S_0, ..., S_d) with S_axis = s_last and S(z) Psi(z)^T = 0.
/// Throws Precondition when a hypothesis fails and NoCompletion when no
/// symmetric completion exists (possible when a kernel component moves
/// exponent through z_axis itself).
SymmetricPencil defect_completion(const SymMatrix& s_last, const MonomialBasis& basis,
                                  std::size_t axis);

/// Direct exact solve of the linear system for the other matrices given
/// S_axis; nullopt when it is inconsistent.
std::optional<SymmetricPencil> solve_completion(const SymMatrix& s_axis,
                                                const MonomialBasis& basis, std::size_t axis);

/// True iff (S_0 + z_1 S_1 + ... ) Psi^T vanishes identically.
bool annihilates(const SymmetricPencil& pencil);

}  // namespace wronsos

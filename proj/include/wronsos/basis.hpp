#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "wronsos/polynomial.hpp"

namespace wronsos {

/// Row vector Psi(z) of every monomial with total degree <= total_cap and
/// k-th exponent <= var_caps[k], sorted by GradedLess.
class MonomialBasis {
 public:
  MonomialBasis() = default;

  std::size_t size() const { return monomials_.size(); }
  std::size_t nvars() const { return var_caps_.size(); }
  int total_cap() const { return total_cap_; }
  const std::vector<int>& var_caps() const { return var_caps_; }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  const MultiIndex& operator[](std::size_t i) const { return monomials_[i]; }

  std::optional<std::size_t> index_of(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const { return index_of(alpha).has_value(); }

  // Psi as polynomials, entry i is z^{alpha_i}.
  std::vector<Polynomial> as_polynomials() const;

  // The same monomials as degree-n forms in (z_1..z_d, z_0).
  std::vector<MultiIndex> homogenized() const;

  friend MonomialBasis build_basis(int n, std::vector<int> caps);

 private:
  int total_cap_ = 0;
  std::vector<int> var_caps_;
  std::vector<MultiIndex> monomials_;
  std::map<MultiIndex, std::size_t, GradedLess> index_;
};

MonomialBasis build_basis(int n, std::vector<int> caps);

/// Basis for the polarization of a pair of polynomials: n is the larger total
/// degree, caps the larger per-variable degrees (zero polynomials ignored).
MonomialBasis basis_for(const Polynomial& q, const Polynomial& p);

}  // namespace wronsos

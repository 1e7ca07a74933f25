#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wronsos/basis.hpp"
#include "wronsos/gramkernel.hpp"
#include "wronsos/matrix.hpp"
#include "wronsos/polynomial.hpp"

namespace wronsos {

/// A0 with Psi A0 Psi^T = F, plus the kernel that parametrizes every other
/// Gram matrix of F over the same basis.
struct GramForm {
  MonomialBasis basis;
  SymMatrix a0;
  std::vector<KernelElement> kernel;
};

/// Squared pairs take the whole coefficient; otherwise c_beta is split evenly
/// over the off-diagonal pairs. Throws NotRepresentable when some monomial of
/// F is not a product of two basis monomials.
GramForm initial_gram(const Polynomial& f, const MonomialBasis& basis);

struct WeightedSquare {
  Rational weight;
  Polynomial form;
};

/// P A P^T = L D L^T with D >= 0, and F = sum d_i l_i^2 where
/// l_i = (L^T P Psi^T)_i. Squares with d_i = 0 are dropped.
struct SosCertificate {
  MonomialBasis basis;
  SymMatrix gram;
  Ldlt ldlt;
  std::vector<WeightedSquare> squares;
};

/// sum d_i l_i^2, recomputed exactly.
Polynomial reconstruct(const SosCertificate& cert);

/// Numeric dual witness: W PSD with unit trace, <W, S_i> ~ 0 for every kernel
/// direction and <W, A0> = -margin. Expressed over the reduced basis that
/// survives diagonal pruning.
struct InfeasibilityEvidence {
  std::vector<MultiIndex> reduced_basis;
  std::vector<std::vector<double>> dual_matrix;
  double margin = 0;
  double residual = 0;
  std::string reason;
};

struct SosOutcome {
  std::optional<SosCertificate> certificate;
  std::optional<InfeasibilityEvidence> evidence;

  bool certified() const { return certificate.has_value(); }
};

inline constexpr std::size_t kSosCapacity = 120;

/// Basis with n = deg F / 2 and caps ceil(deg_k F / 2).
MonomialBasis sos_basis(const Polynomial& f);

SosOutcome sos_certify(const Polynomial& f);

/// Same search over a caller-chosen basis; the certificate's Gram matrix is
/// indexed by that basis.
SosOutcome sos_certify(const Polynomial& f, const MonomialBasis& basis);

/// (s, certificate) for the first candidate s with s^2 F SOS.
std::optional<std::pair<Polynomial, SosCertificate>> artin_certify(
    const Polynomial& f, const std::vector<Polynomial>& candidates);

/// (z_1^2 + ... + z_d^2)^m for m = 1..max_power.
std::vector<Polynomial> default_candidates(std::size_t nvars, int max_power = 2);

using FactoredPolynomial = std::vector<std::pair<Polynomial, int>>;

Polynomial expand(const FactoredPolynomial& factors, std::size_t nvars);

/// Drops factor occurrences one at a time in list order while s^2 F still
/// certifies. Throws Precondition when the input product does not certify.
FactoredPolynomial artin_minimize(const Polynomial& f, const FactoredPolynomial& s);

struct GridSpec {
  Rational lo = -3;
  Rational hi = 3;
  Rational step = 1;
};

struct SampleCheck {
  bool ok = true;
  std::vector<Rational> worst_point;
  Rational worst_value = 0;
  std::size_t samples = 0;
};

/// Exact evaluation on the product grid; fails on any negative value.
SampleCheck psd_sample_check(const Polynomial& f, const GridSpec& grid = {});

}  // namespace wronsos

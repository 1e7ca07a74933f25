#include "wronsos/basis.hpp"

#include <algorithm>

#include "wronsos/error.hpp"

namespace wronsos {

std::optional<std::size_t> MonomialBasis::index_of(const MultiIndex& alpha) const {
  auto it = index_.find(alpha);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Polynomial> MonomialBasis::as_polynomials() const {
  std::vector<Polynomial> out;
  out.reserve(monomials_.size());
  for (const auto& m : monomials_) out.push_back(Polynomial::monomial(m));
  return out;
}

std::vector<MultiIndex> MonomialBasis::homogenized() const {
  std::vector<MultiIndex> out;
  out.reserve(monomials_.size());
  for (const auto& m : monomials_) {
    MultiIndex h(m.size() + 1);
    std::copy(m.exps.begin(), m.exps.end(), h.exps.begin());
    h[m.size()] = total_cap_ - m.degree();
    out.push_back(std::move(h));
  }
  return out;
}

namespace {

void enumerate(std::size_t k, int budget, const std::vector<int>& caps, MultiIndex& current,
               std::vector<MultiIndex>& out) {
  if (k == caps.size()) {
    out.push_back(current);
    return;
  }
  for (int e = 0; e <= std::min(caps[k], budget); ++e) {
    current[k] = e;
    enumerate(k + 1, budget - e, caps, current, out);
  }
  current[k] = 0;
}

}  // namespace

MonomialBasis build_basis(int n, std::vector<int> caps) {
  if (n < 0) throw Error(ErrorKind::Precondition, "basis degree cap must be nonnegative");
  for (int c : caps) {
    if (c < 0) throw Error(ErrorKind::Precondition, "basis variable caps must be nonnegative");
  }
  MonomialBasis basis;
  basis.total_cap_ = n;
  basis.var_caps_ = std::move(caps);
  MultiIndex current(basis.var_caps_.size());
  enumerate(0, n, basis.var_caps_, current, basis.monomials_);
  std::sort(basis.monomials_.begin(), basis.monomials_.end(), GradedLess{});
  for (std::size_t i = 0; i < basis.monomials_.size(); ++i) {
    basis.index_.emplace(basis.monomials_[i], i);
  }
  return basis;
}

MonomialBasis basis_for(const Polynomial& q, const Polynomial& p) {
  if (q.nvars() != p.nvars()) throw Error(ErrorKind::Structural, "variable count mismatch");
  const std::size_t d = q.nvars();
  int n = 0;
  std::vector<int> caps(d, 0);
  for (const Polynomial* poly : {&q, &p}) {
    if (poly->is_zero()) continue;
    n = std::max(n, poly->degree());
    for (std::size_t k = 0; k < d; ++k) caps[k] = std::max(caps[k], poly->degree_in(k));
  }
  return build_basis(n, std::move(caps));
}

}  // namespace wronsos

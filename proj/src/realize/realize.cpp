#include "wronsos/realize.hpp"

#include "wronsos/gramkernel.hpp"

namespace wronsos {

namespace {

// Psi differentiated m times in z_k, entry by entry.
std::vector<Polynomial> derived_basis(const MonomialBasis& basis, std::size_t k, int m) {
  std::vector<Polynomial> out;
  for (const auto& psi : basis.as_polynomials()) out.push_back(psi.derivative(k, m));
  return out;
}

// True when a * v vanishes, with v a column of polynomials.
bool kills(const SymMatrix& a, const std::vector<Polynomial>& v, std::size_t nvars) {
  std::vector<Polynomial> rows(a.size(), Polynomial(nvars));
  for (const auto& [ij, c] : a.upper()) {
    rows[ij.first] += v[ij.second] * c;
    if (ij.first != ij.second) rows[ij.second] += v[ij.first] * c;
  }
  for (const auto& r : rows) {
    if (!r.is_zero()) return false;
  }
  return true;
}

[[noreturn]] void broken(const std::string& what) {
  throw Error(ErrorKind::InternalConsistency, what + " does not hold");
}

}  // namespace

Realization wronskian_realization(const Polynomial& p, const Polynomial& q, const Polynomial& s) {
  if (p.nvars() != q.nvars() || p.nvars() != s.nvars()) {
    throw Error(ErrorKind::Structural, "p, q and s must have the same variable count");
  }
  if (s.is_zero()) throw Error(ErrorKind::Precondition, "s must be nonzero");
  if (p.nvars() == 0) throw Error(ErrorKind::Precondition, "need at least one variable");
  if (q.is_zero()) throw Error(ErrorKind::Degenerate, "q is zero");

  const std::size_t d = p.nvars();
  const Polynomial qs = q * s, ps = p * s;
  const MonomialBasis basis = basis_for(qs, ps);
  const int m1 = basis.var_caps()[0];

  // B(z) with q(zeta)s(zeta) p(z)s(z) = Psi(zeta) B(z) Psi(z)^T.
  const SymmetricPencil b = product_polarization(qs, ps, basis);
  const auto top = derived_basis(basis, 0, m1);
  if (!kills(b.matrices[1], top, d)) broken("B_1 times the top z_1-derivative of Psi vanishing");

  const Polynomial w = s * s * wronskian(q, p, 0);
  Realization out{b, p, q, s, {}};

  auto outcome = sos_certify(w, basis);
  if (!outcome.certified()) {
    const std::string message = "s^2 W_1[q, p] = " + to_string(w) + " did not certify: " + outcome.evidence->reason;
    throw CertificationFailure(message, std::move(*outcome.evidence));
  }
  out.certificate = std::move(*outcome.certificate);

  if (w.is_zero() && b.matrices[1].is_zero()) {
    // Nothing depends on z_1: A = B with A_1 = 0.
    if (!verify_realization(out).ok) broken("the realization identities");
    return out;
  }

  // A_1 from the certificate, with the diagonal at z_1-degree m_1 cleared.
  SymMatrix a1 = out.certificate.gram;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i][0] == m1) a1.set(i, i, 0);
  }
  if (quadratic_form(basis.monomials(), a1) != w) broken("Psi A_1 Psi^T = s^2 W_1 after clearing the top diagonal");
  if (!kills(a1, top, d)) broken("A_1 times the top z_1-derivative of Psi vanishing");
  if (a1 != out.certificate.gram) {
    out.certificate.gram = a1;
    out.certificate.ldlt = ldlt_psd(a1);
    if (!out.certificate.ldlt.psd) broken("A_1 PSD after clearing the top diagonal");
  }

  const SymMatrix s1 = a1 - b.matrices[1];
  const std::string why = completion_hypothesis_failure(s1, basis, 0);
  if (!why.empty()) broken("the completion hypothesis (" + why + ")");
  const SymmetricPencil defect = defect_completion(s1, basis, 0);
  out.pencil += defect;

  const auto report = verify_realization(out);
  for (const auto& c : report.checks) {
    if (!c.ok) broken(c.name + " (" + c.detail + ")");
  }
  return out;
}

RealizationReport verify_realization(const Realization& r) {
  RealizationReport rep;
  auto record = [&](std::string name, bool ok, std::string detail) {
    rep.ok = rep.ok && ok;
    rep.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  const auto& pencil = r.pencil;
  const std::size_t d = pencil.nvars();
  if (pencil.matrices.size() != d + 1 || r.p.nvars() != d || r.q.nvars() != d || r.s.nvars() != d) {
    record("structure", false, "pencil and polynomials disagree on the variable count");
    return rep;
  }

  // q(zeta) s(zeta) p(z) s(z) in (zeta, z).
  std::vector<Polynomial> zeta_side, z_side;
  {
    const Polynomial qs = r.q * r.s, ps = r.p * r.s;
    Polynomial lhs(2 * d);
    Polynomial left(2 * d), right(2 * d);
    for (const auto& [alpha, c] : qs.terms()) {
      MultiIndex a(2 * d);
      for (std::size_t k = 0; k < d; ++k) a[k] = alpha[k];
      left.add_term(a, c);
    }
    for (const auto& [alpha, c] : ps.terms()) {
      MultiIndex a(2 * d);
      for (std::size_t k = 0; k < d; ++k) a[d + k] = alpha[k];
      right.add_term(a, c);
    }
    lhs = left * right;
    const Polynomial rhs = bilinear_form(pencil);
    record("cross_multiplied", lhs == rhs, lhs == rhs ? "" : first_difference(lhs, rhs));
  }

  const auto& monos = pencil.basis.monomials();
  for (std::size_t k = 0; k < d; ++k) {
    const Polynomial want = r.s * r.s * wronskian(r.q, r.p, k);
    const Polynomial got = quadratic_form(monos, pencil.matrices[k + 1]);
    record("wronskian_" + std::to_string(k + 1), got == want, got == want ? "" : first_difference(got, want));
  }

  const Polynomial a1_form = quadratic_form(monos, pencil.matrices[1]);
  const Polynomial squares = reconstruct(r.certificate);
  record("sum_of_squares", a1_form == squares, a1_form == squares ? "" : first_difference(a1_form, squares));

  const auto ldlt = ldlt_psd(pencil.matrices[1]);
  record("a1_psd", ldlt.psd, ldlt.psd ? "" : "exact LDL^T meets a negative pivot");
  return rep;
}

}  // namespace wronsos

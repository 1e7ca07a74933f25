#pragma once

#include <string>
#include <vector>

#include "wronsos/error.hpp"
#include "wronsos/polarize.hpp"
#include "wronsos/soscert.hpp"

namespace wronsos {

/// Pencil A(z) over the basis with caps (n + deg s, n_k + deg_k s) such that
/// Psi(zeta) A(z) Psi(z)^T = q(zeta) s(zeta) p(z) s(z), with A_1 PSD and
/// Psi A_1 Psi^T equal to the certified sum of squares for s^2 W_1[q, p].
struct Realization {
  SymmetricPencil pencil;
  Polynomial p, q, s;
  SosCertificate certificate;
};

/// Thrown when s^2 W_1[q, p] does not certify; carries the numeric evidence.
class CertificationFailure : public Error {
 public:
  CertificationFailure(const std::string& message, InfeasibilityEvidence evidence)
      : Error(ErrorKind::NoCertificate, message), evidence_(std::move(evidence)) {}

  const InfeasibilityEvidence& evidence() const { return evidence_; }

 private:
  InfeasibilityEvidence evidence_;
};

/// Builds the realization: polarize (qs, ps), take A_1 from an SOS
/// certificate over the same basis, complete S_1 = A_1 - B_1 to a kernel
/// pencil along z_1 and add it. Every identity is checked before returning.
/// Throws CertificationFailure, NoCompletion (see defect_completion) or
/// InternalConsistency naming the identity that failed.
Realization wronskian_realization(const Polynomial& p, const Polynomial& q, const Polynomial& s);

struct IdentityCheck {
  std::string name;  // cross_multiplied, wronskian_<k>, sum_of_squares, a1_psd
  bool ok = true;
  std::string detail;
};

struct RealizationReport {
  bool ok = true;
  std::vector<IdentityCheck> checks;
};

/// Re-derives every identity exactly and reruns the exact PSD test on A_1.
RealizationReport verify_realization(const Realization& r);

}  // namespace wronsos

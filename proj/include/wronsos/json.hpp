#pragma once

#include <json.hpp>

#include <vector>

#include "wronsos/basis.hpp"
#include "wronsos/error.hpp"
#include "wronsos/gramkernel.hpp"
#include "wronsos/herglotz.hpp"
#include "wronsos/matrix.hpp"
#include "wronsos/polarize.hpp"
#include "wronsos/polynomial.hpp"
#include "wronsos/realize.hpp"
#include "wronsos/soscert.hpp"

namespace wronsos::io {

using nlohmann::json;

inline constexpr int kSchema = 1;

// Rationals are "num/den" strings (or "num" for integers) so nothing is lost.
json rational(const Rational& r);
json polynomial(const Polynomial& p);
json basis(const MonomialBasis& b);
json monomials(const std::vector<MultiIndex>& m);
// Upper triangle as [row, col, "numerator", "denominator"] quadruples.
json sparse(const SymMatrix& s);
json pencil(const SymmetricPencil& p);
json kernel(const MonomialBasis& b, const std::vector<KernelElement>& elements);
json certificate(const SosCertificate& c);
json evidence(const InfeasibilityEvidence& e);
json realization(const Realization& r, const RealizationReport& report);
json complex_point(const std::vector<std::complex<double>>& z);
json scan(const ScanReport& r, const RealGrid& real, const HalfPlaneGrid& half);
json holomorphy(const HolomorphyReport& r);
json crosscheck(const CrosscheckReport& r, const RealGrid& real, const HalfPlaneGrid& half);
json error(const Error& e);

// Adds "schema": 1 and the command name.
json document(const std::string& command, json body);

}  // namespace wronsos::io

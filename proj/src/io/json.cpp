#include "wronsos/json.hpp"

namespace wronsos::io {

json rational(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : r.get_str();
}

json polynomial(const Polynomial& p) { return {{"nvars", p.nvars()}, {"text", to_string(p)}}; }

json monomials(const std::vector<MultiIndex>& m) {
  json out = json::array();
  for (const auto& a : m) out.push_back(a.exps);
  return out;
}

json basis(const MonomialBasis& b) {
  return {{"total_cap", b.total_cap()}, {"var_caps", b.var_caps()}, {"monomials", monomials(b.monomials())}};
}

json sparse(const SymMatrix& s) {
  json entries = json::array();
  for (const auto& [ij, v] : s.upper()) {
    entries.push_back({ij.first, ij.second, v.get_num().get_str(), v.get_den().get_str()});
  }
  return {{"size", s.size()}, {"symmetric", true}, {"entries", entries}};
}

json pencil(const SymmetricPencil& p) {
  json mats = json::array();
  for (const auto& m : p.matrices) mats.push_back(sparse(m));
  return {{"basis", basis(p.basis)}, {"matrices", mats}};
}

json kernel(const MonomialBasis& b, const std::vector<KernelElement>& elements) {
  json items = json::array();
  for (const auto& k : elements) {
    items.push_back({{"beta", k.beta.exps},
                     {"kind", std::string(to_string(k.kind))},
                     {"matrix", sparse(k.matrix)}});
  }
  return {{"basis", basis(b)}, {"dimension", elements.size()}, {"elements", items}};
}

json certificate(const SosCertificate& c) {
  json lower = json::array();
  const auto& l = c.ldlt.lower;
  for (std::size_t i = 0; i < l.rows(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (l(i, j) != 0) lower.push_back({i, j, l(i, j).get_num().get_str(), l(i, j).get_den().get_str()});
    }
  }
  json diag = json::array();
  for (const auto& x : c.ldlt.diag) diag.push_back(rational(x));
  json squares = json::array();
  std::string text;
  for (const auto& sq : c.squares) {
    squares.push_back({{"weight", rational(sq.weight)}, {"form", to_string(sq.form)}});
    if (!text.empty()) text += " + ";
    text += sq.weight.get_str() + "*(" + to_string(sq.form) + ")^2";
  }
  if (text.empty()) text = "0";
  return {{"basis", basis(c.basis)},
          {"gram", sparse(c.gram)},
          {"permutation", c.ldlt.perm},
          {"L", {{"size", l.rows()}, {"unit_diagonal", true}, {"entries", lower}}},
          {"D", diag},
          {"rank", c.ldlt.rank},
          {"squares", squares},
          {"rendering", text}};
}

json evidence(const InfeasibilityEvidence& e) {
  return {{"reason", e.reason},
          {"reduced_basis", monomials(e.reduced_basis)},
          {"dual_matrix", e.dual_matrix},
          {"margin", e.margin},
          {"residual", e.residual}};
}

json realization(const Realization& r, const RealizationReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks) checks.push_back({{"identity", c.name}, {"ok", c.ok}, {"detail", c.detail}});
  return {{"p", to_string(r.p)},
          {"q", to_string(r.q)},
          {"s", to_string(r.s)},
          {"pencil", pencil(r.pencil)},
          {"certificate", certificate(r.certificate)},
          {"verified", report.ok},
          {"checks", checks}};
}

json complex_point(const std::vector<std::complex<double>>& z) {
  json out = json::array();
  for (const auto& c : z) out.push_back({c.real(), c.imag()});
  return out;
}

json scan(const ScanReport& r, const RealGrid& real, const HalfPlaneGrid& half) {
  return {{"verdict", r.pass ? "pass" : "fail"},
          {"min_im", r.min_im},
          {"witness", complex_point(r.witness)},
          {"samples", r.samples},
          {"skipped", r.skipped},
          {"tolerance", kScanTolerance},
          {"grid",
           {{"real", {{"lo", real.lo}, {"hi", real.hi}, {"step", real.step}}},
            {"z1", {{"x_lo", half.x_lo}, {"x_hi", half.x_hi}, {"x_step", half.x_step}, {"y", half.ys}}}}}};
}

json holomorphy(const HolomorphyReport& r) {
  return {{"ok", r.ok}, {"samples", r.samples}, {"witness", complex_point(r.witness)}};
}

json crosscheck(const CrosscheckReport& r, const RealGrid& real, const HalfPlaneGrid& half) {
  json sos = {{"certified", r.sos.certified()}};
  if (r.sos.certificate) sos["certificate"] = certificate(*r.sos.certificate);
  if (r.sos.evidence) sos["evidence"] = evidence(*r.sos.evidence);
  json out = {{"verdict", std::string(to_string(r.verdict))},
              {"wronskian", to_string(r.wronskian)},
              {"sos", sos},
              {"scan", scan(r.scan, real, half)},
              {"holomorphy_sample", holomorphy(r.holomorphy)}};
  out["artin_multiplier"] = r.artin_multiplier ? json(to_string(*r.artin_multiplier)) : json(nullptr);
  return out;
}

json error(const Error& e) {
  json out = {{"schema", kSchema}, {"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}}}};
  if (const auto* cf = dynamic_cast<const CertificationFailure*>(&e)) out["error"]["evidence"] = evidence(cf->evidence());
  return out;
}

json document(const std::string& command, json body) {
  json out = {{"schema", kSchema}, {"command", command}};
  out.update(body);
  return out;
}

}  // namespace wronsos::io

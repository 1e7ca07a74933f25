// One PASS/FAIL line per acceptance criterion, plus a few informational
// lines. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "wronsos/error.hpp"
#include "wronsos/gramkernel.hpp"
#include "wronsos/herglotz.hpp"
#include "wronsos/parse.hpp"
#include "wronsos/polarize.hpp"
#include "wronsos/realize.hpp"
#include "wronsos/soscert.hpp"

using namespace wronsos;

namespace {

Polynomial P(const std::string& s, std::size_t n = 0) { return parse_polynomial(s, n); }

struct Outcome {
  bool ok = true;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out = {false, std::string("threw: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs >= limit_s) {
    out.ok = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(limit_s)) + " s limit]";
  }
  if (!out.ok) ++failures;
  std::printf("criterion %d %s: %s (%.2f s) %s\n", id, title, out.ok ? "PASS" : "FAIL", secs, out.detail.c_str());
  std::fflush(stdout);
}

void info(const std::string& line) {
  std::printf("  info: %s\n", line.c_str());
  std::fflush(stdout);
}

// C(sigma) (sigma^mu_1, ..., sigma^mu_{2k+1})^T computed entry by entry.
std::vector<Polynomial> chain_rows(const ChainPencil& c) {
  const std::size_t n = c.size();
  std::vector<Polynomial> rows(n, Polynomial(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (c.entries[i][j] != c.entries[j][i]) rows[i].add_term(MultiIndex(n), 1);  // poisons the check
      for (const auto& [slot, coef] : c.entries[i][j]) rows[i].add_term(c.mu[j] + unit_index(n, slot), coef);
    }
  }
  return rows;
}

Outcome chain_identity() {
  std::ostringstream msg;
  for (int k = 0; k <= 5; ++k) {
    const auto c = chain_pencil(k);
    const std::size_t n = c.size();
    MultiIndex nu(n);
    for (std::size_t s = 0; s < n; s += 2) nu[s] = 1;
    const auto rows = chain_rows(c);
    if (rows[0] != Polynomial::monomial(nu)) return {false, "k = " + std::to_string(k) + ": first row is wrong"};
    for (std::size_t i = 1; i < n; ++i) {
      if (!rows[i].is_zero()) return {false, "k = " + std::to_string(k) + ": row " + std::to_string(i) + " nonzero"};
    }
  }
  // k = 1 by hand: mu = (s2, s3, s1), C = [[0, s1/2, s3/2], [s1/2, 0, -s2/2], [s3/2, -s2/2, 0]].
  const auto c = chain_pencil(1);
  const Rational h(1, 2);
  const std::vector<std::vector<LinearForm>> want{{{}, {{0, h}}, {{2, h}}},
                                                  {{{0, h}}, {}, {{1, -h}}},
                                                  {{{2, h}}, {{1, -h}}, {}}};
  const std::vector<MultiIndex> mu{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
  if (c.entries != want || c.mu != mu) return {false, "k = 1 differs from the hand derivation"};
  return {true, "k = 0..5 exact, k = 1 matches by hand"};
}

// q(zeta) p(z) in 2d variables, zeta first.
Polynomial cross_product(const Polynomial& q, const Polynomial& p) {
  const std::size_t d = q.nvars();
  Polynomial left(2 * d), right(2 * d);
  for (const auto& [a, c] : q.terms()) {
    MultiIndex m(2 * d);
    for (std::size_t k = 0; k < d; ++k) m[k] = a[k];
    left.add_term(m, c);
  }
  for (const auto& [a, c] : p.terms()) {
    MultiIndex m(2 * d);
    for (std::size_t k = 0; k < d; ++k) m[d + k] = a[k];
    right.add_term(m, c);
  }
  return left * right;
}

Outcome polarization() {
  std::mt19937 rng(100);
  int done = 0;
  while (done < 100) {
    std::uniform_int_distribution<int> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto q = testing::random_polynomial(rng, d, 4, 4, 5);
    const auto p = testing::random_polynomial(rng, d, 4, 4, 5);
    if (q.is_zero() && p.is_zero()) continue;
    const auto a = product_polarization(q, p);
    const auto check = verify_pencil(a, q, p);
    if (!check.ok) return {false, "verify_pencil: " + check.failure};
    // Independent recomputation of both identities.
    if (bilinear_form(a) != cross_product(q, p)) return {false, "bilinear identity for " + to_string(q)};
    for (std::size_t k = 0; k < d; ++k) {
      if (quadratic_form(a.basis.monomials(), a.matrices[k + 1]) != wronskian(q, p, k)) {
        return {false, "Wronskian identity for " + to_string(q) + ", " + to_string(p)};
      }
    }
    ++done;
  }
  return {true, "100 random pairs exact"};
}

Outcome kernel_completeness() {
  std::size_t bases = 0, elements = 0;
  for (int d = 1; d <= 3; ++d) {
    for (int n = 0; n <= 3; ++n) {
      std::vector<int> caps(d, 0);
      while (true) {
        const auto b = build_basis(n, caps);
        const auto ks = kernel_basis(b);
        if (ks.size() != kernel_dimension_oracle(b)) return {false, "count differs from the oracle"};
        for (const auto& k : ks) {
          if (!quadratic_form(b.monomials(), k.matrix).is_zero()) return {false, "an element misses the kernel"};
        }
        // Exact independence: stack vectorized elements and take the rank.
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> col;
        for (const auto& k : ks) {
          for (const auto& [ij, v] : k.matrix.upper()) col.try_emplace(ij, col.size());
        }
        Matrix m(ks.size(), col.size());
        for (std::size_t r = 0; r < ks.size(); ++r) {
          for (const auto& [ij, v] : ks[r].matrix.upper()) m(r, col[ij]) = v;
        }
        if (rank(m) != ks.size()) return {false, "elements are dependent"};
        ++bases;
        elements += ks.size();
        int i = 0;
        while (i < d && caps[i] == n) caps[i++] = 0;
        if (i == d) break;
        ++caps[i];
      }
    }
  }
  return {true, std::to_string(bases) + " bases, " + std::to_string(elements) + " elements"};
}

bool completion_holds(const SymMatrix& s, const MonomialBasis& b, std::size_t axis) {
  const auto pencil = defect_completion(s, b, axis);
  return pencil.matrices[axis + 1] == s && annihilates(pencil);
}

Outcome defect_completion_check() {
  // The two displayed blocks: a triple element along an unrelated axis and a
  // quad element whose completion reaches S_0.
  auto b = build_basis(2, {2, 2, 1});
  SymMatrix t(b.size());
  t.set(*b.index_of({1, 1, 0}), *b.index_of({1, 1, 0}), 2);
  t.set(*b.index_of({2, 0, 0}), *b.index_of({0, 2, 0}), -1);
  if (!completion_holds(t, b, 2)) return {false, "5x5 block"};
  b = build_basis(2, {1, 1, 1});
  SymMatrix q(b.size());
  q.set(*b.index_of({0, 0, 0}), *b.index_of({1, 1, 0}), 1);
  q.set(*b.index_of({1, 0, 0}), *b.index_of({0, 1, 0}), -1);
  if (!completion_holds(q, b, 2)) return {false, "6x6 block"};

  // 50 random combinations satisfying both hypotheses: kernel elements of the
  // basis with the axis cap lowered by one, embedded in the full basis.
  std::mt19937 rng(2024);
  int done = 0, held = 0, axis_free = 0, axis_free_held = 0;
  while (done < 50) {
    std::uniform_int_distribution<int> dd(1, 3);
    const std::size_t d = dd(rng);
    const auto full = testing::random_basis(rng, d, 3);
    std::uniform_int_distribution<std::size_t> ax(0, d - 1);
    const std::size_t axis = ax(rng);
    auto caps = full.var_caps();
    if (caps[axis] == 0) continue;
    --caps[axis];
    const auto sub = build_basis(full.total_cap(), caps);
    SymMatrix s(full.size());
    bool touches_axis = false;
    for (const auto& e : kernel_basis(sub)) {
      const Rational c = testing::random_rational(rng, 3);
      if (c == 0) continue;
      touches_axis |= e.var_r == axis || e.var_l == axis || e.kind == KernelKind::Generic;
      for (const auto& [ij, v] : e.matrix.upper()) {
        s.add(*full.index_of(sub[ij.first]), *full.index_of(sub[ij.second]), c * v);
      }
    }
    if (s.is_zero() || !completion_hypothesis_failure(s, full, axis).empty()) continue;
    ++done;
    bool ok = false;
    try {
      ok = completion_holds(s, full, axis);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoCompletion) throw;
    }
    held += ok;
    if (!touches_axis) {
      ++axis_free;
      axis_free_held += ok;
    }
  }
  info("completion, combinations avoiding the axis variable: " + std::to_string(axis_free_held) + "/" +
       std::to_string(axis_free) + " hold");
  return {held == done, "blocks hold; random combinations " + std::to_string(held) + "/" + std::to_string(done) +
                            " hold (the rest have no symmetric completion)"};
}

Outcome sos_soundness() {
  // Corpus fixed up front from seed 2026.
  std::mt19937 rng(2026);
  std::vector<Polynomial> corpus;
  std::uniform_int_distribution<int> dd(1, 3), kk(1, 3);
  while (corpus.size() < 50) {
    const std::size_t d = dd(rng);
    const int k = kk(rng);
    Polynomial f(d);
    for (int i = 0; i < k; ++i) {
      const auto h = testing::random_polynomial(rng, d, 2, 4, 5);
      f += h * h;
    }
    corpus.push_back(f);
  }
  int ok = 0;
  std::string first_bad;
  for (const auto& f : corpus) {
    const auto out = sos_certify(f);
    const bool exact = out.certified() && reconstruct(*out.certificate) == f && out.certificate->ldlt.psd;
    ok += exact;
    if (!exact && first_bad.empty()) first_bad = " first failure: " + to_string(f);
  }
  return {ok == 50, std::to_string(ok) + "/50 certified with exact reconstruction" + first_bad};
}

const char* kMotzkin = "z1^4*z2^2 + z1^2*z2^4 - 3*z1^2*z2^2 + 1";

Outcome motzkin() {
  const Polynomial f = P(kMotzkin);
  const auto out = sos_certify(f);
  if (out.certified()) return {false, "Motzkin certified as SOS"};
  const double margin = out.evidence->margin;
  if (!(margin > 1e-6)) return {false, "margin " + std::to_string(margin)};
  const Polynomial s = P("z1^2 + z2^2");
  const auto a = artin_certify(f, {s});
  if (!a) return {false, "no certificate for (z1^2 + z2^2)^2 * Motzkin"};
  const Polynomial target = s * s * f;
  const bool exact = reconstruct(a->second) == target && a->second.ldlt.psd &&
                     quadratic_form(a->second.basis.monomials(), a->second.gram) == target;
  std::ostringstream d;
  d << "margin " << margin << ", Artin certificate with " << a->second.squares.size() << " squares"
    << (exact ? " verified" : " NOT verified");
  return {exact, d.str()};
}

Outcome realization() {
  std::string detail;
  for (auto [p, q] : {std::pair{"-1", "z1"}, std::pair{"-(z1 + z2)", "z1*z2"}}) {
    const Polynomial qq = P(q), pp = P(p, qq.nvars()), one = P("1", qq.nvars());
    const auto r = wronskian_realization(pp, qq, one);
    const auto rep = verify_realization(r);
    if (!rep.ok) return {false, std::string("verification failed for ") + p + " / " + q};
    if (!ldlt_psd(r.pencil.matrices[1]).psd) return {false, "A_1 not PSD"};
    detail += std::string(detail.empty() ? "" : "; ") + p + " / " + q + ": N = " + std::to_string(r.pencil.basis.size());
  }
  return {true, detail};
}

Outcome crosscheck() {
  struct Case {
    const char* p;
    const char* q;
    Verdict want;
  };
  std::string detail;
  bool ok = true;
  for (const Case& c : {Case{"-1", "z1", Verdict::AgreeSosHerglotz},
                        Case{"-(z1 + z2)", "z1*z2", Verdict::AgreeSosHerglotz},
                        Case{"1", "z1", Verdict::AgreeNonsosNonherglotz},
                        Case{"z1*z2", "1", Verdict::AgreeNonsosNonherglotz}}) {
    const std::size_t n = std::max(P(c.p).nvars(), P(c.q).nvars());
    const auto r = crosscheck_main_theorem(P(c.p, n), P(c.q, n));
    ok = ok && r.verdict == c.want;
    detail += std::string(detail.empty() ? "" : "; ") + c.p + " / " + c.q + " -> " + std::string(to_string(r.verdict));
  }
  const auto cubic = crosscheck_main_theorem(P("z1^3"), P("1", 1));
  info("z1^3 / 1 -> " + std::string(to_string(cubic.verdict)) + " (W = 3 z1^2 is SOS, min Im = " +
       std::to_string(cubic.scan.min_im) + ")");
  return {ok, detail};
}

Outcome herglotz_direction() {
  // Every (p, q) pair used by the realize and herglotz tests, plus a fixed
  // family of sums of simple fractions.
  std::vector<std::pair<Polynomial, Polynomial>> corpus;
  for (auto [p, q] : {std::pair{"-1", "z1"}, std::pair{"-(z1 + z2)", "z1*z2"}, std::pair{"1", "z1"},
                      std::pair{"z1*z2", "1"}, std::pair{"z1^3", "1"}, std::pair{"z1*z2", "z1"},
                      std::pair{"-(2*z1 - 1)*z2^2 + z1^2 - z1", "z1^2 - z1"}, std::pair{"-z2", "z1*z2"}}) {
    const std::size_t n = std::max(P(p).nvars(), P(q).nvars());
    corpus.push_back({P(p, n), P(q, n)});
  }
  std::mt19937 rng(13);
  std::uniform_int_distribution<int> pole(-4, 4), weight(1, 3);
  for (int t = 0; t < 10; ++t) {
    Polynomial p = P("0", 1), q = P("1", 1);
    for (int i = 0; i < 2; ++i) {
      const Polynomial lin = P("z1") - P("1", 1) * Rational(pole(rng)) + P("1", 1) * Rational(1, 3);
      p = p * lin - q * Rational(weight(rng));
      q = q * lin;
    }
    corpus.push_back({p, q});
  }
  int certified = 0, passed = 0, realized = 0, realized_passed = 0;
  std::string bad;
  for (const auto& [p, q] : corpus) {
    if (!sos_certify(wronskian(q, p, 0)).certified()) continue;
    ++certified;
    const auto scan = slice_scan(p, q);
    passed += scan.pass;
    bool has_realization = true;
    try {
      wronskian_realization(p, q, Polynomial::constant(p.nvars(), 1));
    } catch (const Error&) {
      has_realization = false;
    }
    if (has_realization) {
      ++realized;
      realized_passed += scan.pass;
    }
    if (!scan.pass) bad += " " + to_string(p) + " / " + to_string(q) + " (min Im " + std::to_string(scan.min_im) + ")";
  }
  info("pairs that also admit a realization: " + std::to_string(realized_passed) + "/" + std::to_string(realized) +
       " scan as Herglotz");
  return {passed == certified, std::to_string(passed) + "/" + std::to_string(certified) +
                                   " certified Wronskians scan with min Im >= -1e-9" +
                                   (bad.empty() ? "" : "; failing:" + bad)};
}

}  // namespace

int main() {
  criterion(1, "chain pencil identity", 5, chain_identity);
  criterion(2, "polarization identities", 60, polarization);
  criterion(3, "kernel completeness", 30, kernel_completeness);
  criterion(4, "defect completion", 30, defect_completion_check);
  criterion(5, "SOS certifier soundness", 120, sos_soundness);
  criterion(6, "Motzkin pipeline", 120, motzkin);
  criterion(7, "realization", 30, realization);
  criterion(8, "crosscheck fixtures", 30, crosscheck);
  criterion(9, "SOS Wronskian implies Herglotz slices", 30, herglotz_direction);
  std::printf("%d of 9 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}

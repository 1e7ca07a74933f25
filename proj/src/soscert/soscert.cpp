#include "wronsos/soscert.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "barrier.hpp"
#include "lattice.hpp"
#include "zeros.hpp"
#include "wronsos/error.hpp"

namespace wronsos {

using IndexPair = std::pair<std::size_t, std::size_t>;

namespace {

using PairMap = std::map<MultiIndex, std::vector<IndexPair>, GradedLess>;

PairMap pair_map(const std::vector<MultiIndex>& monos) {
  PairMap out;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    for (std::size_t j = i; j < monos.size(); ++j) out[monos[i] + monos[j]].emplace_back(i, j);
  }
  return out;
}

// The initial Gram rule over an arbitrary monomial list; nullopt names no
// culprit, the caller reports it.
std::optional<SymMatrix> initial_matrix(const Polynomial& f, const std::vector<MultiIndex>& monos,
                                        MultiIndex* missing = nullptr) {
  const PairMap pairs = pair_map(monos);
  SymMatrix a(monos.size());
  for (const auto& [beta, c] : f.terms()) {
    auto it = pairs.find(beta);
    if (it == pairs.end()) {
      if (missing) *missing = beta;
      return std::nullopt;
    }
    const auto& list = it->second;
    auto sq = std::find_if(list.begin(), list.end(), [](const IndexPair& p) { return p.first == p.second; });
    if (sq != list.end()) {
      a.add(sq->first, sq->first, c);
    } else {
      const Rational share = c / Rational(2 * static_cast<long>(list.size()));
      for (const auto& [i, j] : list) a.add(i, j, share);
    }
  }
  return a;
}

Eigen::MatrixXd to_dense(const SymMatrix& s) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s.size(), s.size());
  for (const auto& [ij, v] : s.upper()) {
    m(ij.first, ij.second) = to_double(v);
    m(ij.second, ij.first) = to_double(v);
  }
  return m;
}

std::vector<detail::Entry> to_entries(const SymMatrix& s) {
  std::vector<detail::Entry> out;
  for (const auto& [ij, v] : s.upper()) {
    out.push_back({ij.first, ij.second, to_double(v)});
    if (ij.first != ij.second) out.push_back({ij.second, ij.first, to_double(v)});
  }
  return out;
}

// base + sum_j y_j dirs_j over the reduced monomials.
struct Family {
  SymMatrix base;
  std::vector<SymMatrix> dirs;

  SymMatrix at(const std::vector<Rational>& y) const {
    SymMatrix a = base;
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      if (y[j] != 0) a += y[j] * dirs[j];
    }
    return a;
  }
};

detail::AffineSdp numeric(const Family& fam, const Eigen::MatrixXd& shift) {
  detail::AffineSdp sdp;
  sdp.c = to_dense(fam.base);
  sdp.shift = shift;
  for (const auto& d : fam.dirs) sdp.f.push_back(to_entries(d));
  return sdp;
}

const double kDenominators[] = {10, 100, 1e4, 1e6};

std::optional<SymMatrix> round_and_check(const Family& fam, const Eigen::VectorXd& y) {
  for (double bound : kDenominators) {
    std::vector<Rational> exact(y.size());
    for (Eigen::Index j = 0; j < y.size(); ++j) exact[j] = approximate(y[j], Integer(bound));
    SymMatrix a = fam.at(exact);
    if (ldlt_psd(a).psd) return a;
  }
  return std::nullopt;
}

// Exact columns spanning the same space as the numeric columns of k, read
// off a numerically pivoted reduced row echelon form of k^T.
Matrix rationalize_columns(const Eigen::MatrixXd& k, double bound) {
  Eigen::MatrixXd m = k.transpose();
  const Eigen::Index r = m.rows(), n = m.cols();
  std::vector<bool> used(n, false);
  std::vector<Eigen::Index> pivot(r);
  for (Eigen::Index i = 0; i < r; ++i) {
    Eigen::Index best = -1;
    for (Eigen::Index c = 0; c < n; ++c) {
      if (!used[c] && (best < 0 || std::abs(m(i, c)) > std::abs(m(i, best)))) best = c;
    }
    used[best] = true;
    pivot[i] = best;
    m.row(i) /= m(i, best);
    for (Eigen::Index o = 0; o < r; ++o) {
      if (o != i) m.row(o) -= m(o, best) * m.row(i);
    }
  }
  Matrix out(n, r);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index c = 0; c < n; ++c) {
      bool is_pivot = false;
      for (Eigen::Index p = 0; p < r; ++p) is_pivot |= pivot[p] == c;
      if (is_pivot) {
        out(c, i) = pivot[i] == c ? 1 : 0;
      } else {
        out(c, i) = approximate(m(i, c), Integer(bound));
      }
    }
  }
  return out;
}

// Restricts fam to {y : A(y) k = 0}; nullopt when that is inconsistent.
std::optional<Family> restrict_to_kernel(const Family& fam, const Matrix& k) {
  const std::size_t n = fam.base.size(), r = k.cols(), m = fam.dirs.size();
  auto times_k = [&](const SymMatrix& s) {
    Matrix out(n, r);
    for (const auto& [ij, v] : s.upper()) {
      const auto [a, b] = ij;
      for (std::size_t c = 0; c < r; ++c) {
        if (k(b, c) != 0) out(a, c) += v * k(b, c);
        if (a != b && k(a, c) != 0) out(b, c) += v * k(a, c);
      }
    }
    return out;
  };
  Matrix sys(n * r, m);
  std::vector<Rational> rhs(n * r);
  const Matrix bk = times_k(fam.base);
  for (std::size_t i = 0; i < n * r; ++i) rhs[i] = -bk(i / r, i % r);
  for (std::size_t j = 0; j < m; ++j) {
    const Matrix dk = times_k(fam.dirs[j]);
    for (std::size_t i = 0; i < n * r; ++i) sys(i, j) = dk(i / r, i % r);
  }
  auto particular = solve(sys, rhs);
  if (!particular) return std::nullopt;
  const Matrix z = nullspace(sys);
  Family out{fam.at(*particular), {}};
  for (std::size_t c = 0; c < z.cols(); ++c) {
    SymMatrix d(n);
    for (std::size_t j = 0; j < m; ++j) {
      if (z(j, c) != 0) d += z(j, c) * fam.dirs[j];
    }
    out.dirs.push_back(std::move(d));
  }
  return out;
}

// Restriction to the smallest rational subspace containing the given
// columns, spanned by the common null space of integer relations found by
// lattice reduction. Relations are taken in order of quality; the longest
// prefix whose restriction stays consistent wins, which weeds out spurious
// short vectors.
std::optional<std::pair<Family, Matrix>> restrict_to_closure(const Family& fam, const detail::MpColumns& columns,
                                                             const std::vector<mpf_class>& weights,
                                                             const mpf_class& tolerance) {
  const auto q = detail::orthonormalize(columns);
  if (q.empty()) return std::nullopt;
  const std::size_t n = q[0].size(), r = q.size();
  for (const auto& weight : weights) {
    const auto rel = detail::integer_relations(q, weight, tolerance);
    for (std::size_t count = std::min(rel.size(), n - r); count > 0; --count) {
      Matrix w(count, n);
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t c = 0; c < n; ++c) w(i, c) = Rational(rel[i][c]);
      }
      Matrix z = nullspace(w);
      if (auto next = restrict_to_kernel(fam, z)) return std::make_pair(std::move(*next), std::move(z));
    }
  }
  return std::nullopt;
}

// Closure of a numeric kernel: first from the double-precision vectors, then
// from Psi at the real zeros behind it after refining them to high precision.
std::optional<std::pair<Family, Matrix>> restrict_to_closure(const Family& fam, const Polynomial& f,
                                                             const std::vector<MultiIndex>& monos,
                                                             const Eigen::MatrixXd& k,
                                                             const std::vector<std::vector<Rational>>& known) {
  constexpr unsigned kLow = 128, kHigh = 384;
  detail::MpColumns columns(k.cols(), std::vector<mpf_class>(k.rows()));
  for (Eigen::Index c = 0; c < k.cols(); ++c) {
    for (Eigen::Index i = 0; i < k.rows(); ++i) columns[c][i] = mpf_class(k(i, c), kLow);
  }
  std::vector<mpf_class> weights;
  for (double w : {1e6, 1e8, 1e10}) weights.emplace_back(w, kLow);
  if (auto out = restrict_to_closure(fam, columns, weights, mpf_class(1e-5, kLow))) return out;

  const auto points = detail::kernel_points(monos, k);
  if (!points) return std::nullopt;
  columns.clear();
  for (const auto& v : known) {
    std::vector<mpf_class> col;
    for (const auto& e : v) col.emplace_back(e, kHigh);
    columns.push_back(std::move(col));
  }
  for (const auto& x : *points) {
    auto refined = detail::refine_zero(f, x, kHigh);
    if (!refined) return std::nullopt;
    for (auto& col : detail::monomial_columns(monos, *refined)) columns.push_back(std::move(col));
  }
  mpf_class weight(1, kHigh), tolerance(1, kHigh);
  mpf_mul_2exp(weight.get_mpf_t(), weight.get_mpf_t(), 150);
  mpf_div_2exp(tolerance.get_mpf_t(), tolerance.get_mpf_t(), 250);
  return restrict_to_closure(fam, columns, {weight}, tolerance);
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
  std::vector<std::vector<double>> out(m.rows(), std::vector<double>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
  }
  return out;
}

SosCertificate make_certificate(const Polynomial& f, const MonomialBasis& basis,
                                const std::vector<std::size_t>& kept, const SymMatrix& reduced) {
  SosCertificate cert;
  cert.basis = basis;
  cert.gram = SymMatrix(basis.size());
  for (const auto& [ij, v] : reduced.upper()) cert.gram.set(kept[ij.first], kept[ij.second], v);
  cert.ldlt = ldlt_psd(cert.gram);
  if (!cert.ldlt.psd) throw Error(ErrorKind::InternalConsistency, "certified Gram matrix is not PSD");
  const std::size_t n = basis.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (cert.ldlt.diag[k] == 0) continue;
    Polynomial form(basis.nvars());
    for (std::size_t i = k; i < n; ++i) {
      const Rational& l = cert.ldlt.lower(i, k);
      if (l != 0) form.add_term(basis[cert.ldlt.perm[i]], l);
    }
    cert.squares.push_back({cert.ldlt.diag[k], std::move(form)});
  }
  if (quadratic_form(basis.monomials(), cert.gram) != f || reconstruct(cert) != f) {
    throw Error(ErrorKind::InternalConsistency, "certificate does not reproduce the polynomial");
  }
  return cert;
}

InfeasibilityEvidence immediate(std::vector<MultiIndex> basis, std::string reason) {
  InfeasibilityEvidence ev;
  ev.reduced_basis = std::move(basis);
  ev.margin = 0;
  ev.reason = std::move(reason);
  return ev;
}

}  // namespace

GramForm initial_gram(const Polynomial& f, const MonomialBasis& basis) {
  if (f.nvars() != basis.nvars()) {
    throw Error(ErrorKind::Structural, "polynomial and basis have different variable counts");
  }
  MultiIndex missing;
  auto a0 = initial_matrix(f, basis.monomials(), &missing);
  if (!a0) {
    throw Error(ErrorKind::NotRepresentable,
                "monomial " + to_string(Polynomial::monomial(missing)) +
                    " is not a product of two basis monomials");
  }
  if (quadratic_form(basis.monomials(), *a0) != f) {
    throw Error(ErrorKind::InternalConsistency, "initial Gram matrix does not reproduce F");
  }
  return {basis, *a0, kernel_basis(basis)};
}

Polynomial reconstruct(const SosCertificate& cert) {
  Polynomial sum(cert.basis.nvars());
  for (const auto& sq : cert.squares) sum += sq.weight * (sq.form * sq.form);
  return sum;
}

MonomialBasis sos_basis(const Polynomial& f) {
  const std::size_t d = f.nvars();
  if (f.is_zero()) return build_basis(0, std::vector<int>(d, 0));
  std::vector<int> caps(d);
  for (std::size_t k = 0; k < d; ++k) caps[k] = (f.degree_in(k) + 1) / 2;
  return build_basis(f.degree() / 2, caps);
}

SosOutcome sos_certify(const Polynomial& f) {
  if (!f.is_zero() && f.degree() % 2 != 0) {
    return {std::nullopt, immediate({}, "odd total degree")};
  }
  return sos_certify(f, sos_basis(f));
}

SosOutcome sos_certify(const Polynomial& f, const MonomialBasis& basis) {
  if (f.nvars() != basis.nvars()) {
    throw Error(ErrorKind::Structural, "polynomial and basis have different variable counts");
  }
  if (basis.size() > kSosCapacity) {
    throw Error(ErrorKind::Capacity, "Gram basis has " + std::to_string(basis.size()) +
                                         " monomials, limit is " + std::to_string(kSosCapacity));
  }
  if (!f.is_zero() && f.degree() % 2 != 0) {
    return {std::nullopt, immediate({}, "odd total degree")};
  }

  // A monomial x whose square has coefficient 0 and no other representation
  // forces G_xx = 0, so its row vanishes in every PSD Gram matrix.
  const auto& monos = basis.monomials();
  const PairMap all_pairs = pair_map(monos);
  std::vector<bool> active(monos.size(), true);
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t x = 0; x < monos.size(); ++x) {
      if (!active[x]) continue;
      const MultiIndex beta = monos[x] + monos[x];
      std::size_t live = 0;
      for (const auto& [i, j] : all_pairs.at(beta)) live += active[i] && active[j];
      if (live != 1) continue;
      const Rational c = f.coefficient(beta);
      if (c < 0) {
        std::vector<MultiIndex> kept;
        for (std::size_t i = 0; i < monos.size(); ++i) {
          if (active[i]) kept.push_back(monos[i]);
        }
        InfeasibilityEvidence ev;
        ev.reduced_basis = kept;
        const std::size_t pos = std::count(active.begin(), active.begin() + x, true);
        Eigen::MatrixXd w = Eigen::MatrixXd::Zero(kept.size(), kept.size());
        w(pos, pos) = 1;
        ev.dual_matrix = to_rows(w);
        ev.margin = -to_double(c);
        ev.reason = "the Gram entry of " + to_string(Polynomial::monomial(monos[x])) +
                    " squared is forced to be negative";
        return {std::nullopt, ev};
      }
      if (c == 0) {
        active[x] = false;
        changed = true;
      }
    }
  }
  std::vector<std::size_t> kept;
  std::vector<MultiIndex> reduced;
  for (std::size_t i = 0; i < monos.size(); ++i) {
    if (active[i]) {
      kept.push_back(i);
      reduced.push_back(monos[i]);
    }
  }

  MultiIndex missing;
  auto a0 = initial_matrix(f, reduced, &missing);
  if (!a0) {
    return {std::nullopt, immediate(reduced, "monomial " + to_string(Polynomial::monomial(missing)) +
                                                 " lies outside the reduced Gram support")};
  }
  Family fam{*a0, {}};
  for (const auto& k : kernel_basis(reduced, basis.total_cap())) fam.dirs.push_back(k.matrix);

  const std::size_t n = reduced.size();
  if (n == 0) return {make_certificate(f, basis, kept, SymMatrix(0)), std::nullopt};

  const double scale = std::max(1.0, to_dense(fam.base).cwiseAbs().maxCoeff());
  Eigen::MatrixXd shift = Eigen::MatrixXd::Zero(n, n);
  std::vector<Eigen::VectorXd> kernel;  // accumulated exact kernel, as doubles
  std::vector<std::vector<Rational>> known;
  std::optional<detail::SdpResult> first;

  for (int round = 0; round < 4; ++round) {
    const auto res = detail::maximize_min_eigenvalue(numeric(fam, shift));
    if (!first) first = res;
    if (res.t > 0) {
      if (auto a = round_and_check(fam, res.y)) {
        return {make_certificate(f, basis, kept, *a), std::nullopt};
      }
    }
    if (round == 0 && res.t < -1e-6 * scale) break;
    if (res.t > 1e-3 * scale) break;

    // Boundary case: find the directions every optimal Gram matrix kills,
    // make them exact and restrict the family to matrices that kill them.
    Eigen::MatrixXd a = to_dense(fam.base) + shift;
    for (std::size_t j = 0; j < fam.dirs.size(); ++j) {
      for (const auto& e : to_entries(fam.dirs[j])) a(e.row, e.col) += res.y[j] * e.value;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(a);
    const double top = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
    // Kernel size candidates, best eigenvalue gap first: convergence leaves
    // the true kernel eigenvalues anywhere from 1e-10 to 1e-6, so a fixed
    // cutoff misclassifies them.
    const Eigen::VectorXd ev = eig.eigenvalues();
    std::vector<std::pair<double, std::size_t>> sizes;
    for (std::size_t i = 1; i < n; ++i) {
      if (ev[i - 1] > 1e-4 * top) break;
      sizes.push_back({ev[i] / std::max(std::abs(ev[i - 1]), 1e-14 * top), i});
    }
    std::sort(sizes.begin(), sizes.end(), std::greater<>());
    std::optional<Family> next;
    Matrix kexact;
    for (const auto& [gap, count] : sizes) {
      if (gap < 10) break;
      const Eigen::MatrixXd knum = eig.eigenvectors().leftCols(count);
      for (double bound : {10.0, 100.0, 1e3, 1e4, 1e5, 1e6}) {
        kexact = rationalize_columns(knum, bound);
        next = restrict_to_kernel(fam, kexact);
        if (next) break;
      }
      if (!next) {
        // An irrational kernel (a zero with irrational coordinates) cannot be
        // rounded; use the smallest rational subspace holding it. Later
        // rounds see only the part orthogonal to the known kernel, so hand
        // over the whole span.
        Eigen::MatrixXd full(n, kernel.size() + knum.cols());
        for (std::size_t c = 0; c < kernel.size(); ++c) full.col(c) = kernel[c];
        full.rightCols(knum.cols()) = knum;
        if (auto closure = restrict_to_closure(fam, f, reduced, full, known)) {
          next = std::move(closure->first);
          kexact = std::move(closure->second);
        }
      }
      if (next) break;
    }
    if (!next) break;
    fam = std::move(*next);
    for (std::size_t c = 0; c < kexact.cols(); ++c) {
      Eigen::VectorXd v(n);
      for (std::size_t i = 0; i < n; ++i) v[i] = to_double(kexact(i, c));
      std::vector<Rational> exact(n);
      for (std::size_t i = 0; i < n; ++i) exact[i] = kexact(i, c);
      known.push_back(std::move(exact));
      kernel.push_back(v);
    }
    Eigen::MatrixXd kmat(n, kernel.size());
    for (std::size_t c = 0; c < kernel.size(); ++c) kmat.col(c) = kernel[c];
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(kmat);
    const Eigen::Index rank = Eigen::FullPivLU<Eigen::MatrixXd>(kmat).rank();
    const Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, rank);
    shift = scale * q * q.transpose();
  }

  InfeasibilityEvidence ev;
  ev.reduced_basis = reduced;
  ev.dual_matrix = to_rows(first->dual);
  ev.margin = -(first->dual.cwiseProduct(to_dense(*a0))).sum();
  ev.residual = first->residual;
  ev.reason = first->t < -1e-6 * scale ? "no PSD Gram matrix: the best minimum eigenvalue is negative"
                                       : "no rational PSD Gram matrix found near the boundary";
  return {std::nullopt, ev};
}

std::optional<std::pair<Polynomial, SosCertificate>> artin_certify(
    const Polynomial& f, const std::vector<Polynomial>& candidates) {
  for (const auto& s : candidates) {
    if (s.is_zero()) throw Error(ErrorKind::Precondition, "zero candidate denominator");
    auto out = sos_certify(s * s * f);
    if (out.certified()) return std::make_pair(s, std::move(*out.certificate));
  }
  return std::nullopt;
}

std::vector<Polynomial> default_candidates(std::size_t nvars, int max_power) {
  Polynomial base(nvars);
  for (std::size_t k = 0; k < nvars; ++k) base.add_term(unit_index(nvars, k) + unit_index(nvars, k), 1);
  std::vector<Polynomial> out;
  for (int m = 1; m <= max_power; ++m) out.push_back(pow(base, m));
  return out;
}

Polynomial expand(const FactoredPolynomial& factors, std::size_t nvars) {
  Polynomial s = Polynomial::constant(nvars, 1);
  for (const auto& [factor, mult] : factors) s = s * pow(factor, mult);
  return s;
}

FactoredPolynomial artin_minimize(const Polynomial& f, const FactoredPolynomial& s) {
  auto works = [&](const FactoredPolynomial& fs) {
    const Polynomial d = expand(fs, f.nvars());
    return sos_certify(d * d * f).certified();
  };
  for (const auto& [factor, mult] : s) {
    if (mult < 0) throw Error(ErrorKind::Precondition, "negative multiplicity");
    if (factor.is_zero()) throw Error(ErrorKind::Precondition, "zero factor");
  }
  if (!works(s)) {
    throw Error(ErrorKind::Precondition, "the supplied denominator does not certify");
  }
  FactoredPolynomial cur = s;
  for (std::size_t i = 0; i < cur.size(); ++i) {
    while (cur[i].second > 0) {
      FactoredPolynomial trial = cur;
      trial[i].second -= 1;
      if (!works(trial)) break;
      cur = std::move(trial);
    }
  }
  FactoredPolynomial out;
  for (auto& fm : cur) {
    if (fm.second > 0) out.push_back(std::move(fm));
  }
  return out;
}

SampleCheck psd_sample_check(const Polynomial& f, const GridSpec& grid) {
  if (grid.step <= 0 || grid.hi < grid.lo) throw Error(ErrorKind::Precondition, "bad grid");
  std::vector<Rational> axis;
  for (Rational x = grid.lo; x <= grid.hi; x += grid.step) axis.push_back(x);
  const std::size_t d = f.nvars();
  SampleCheck out;
  std::vector<std::size_t> idx(d, 0);
  std::vector<Rational> pt(d);
  bool first = true;
  while (true) {
    for (std::size_t k = 0; k < d; ++k) pt[k] = axis[idx[k]];
    const Rational v = f.evaluate(pt);
    ++out.samples;
    if (first || v < out.worst_value) {
      out.worst_value = v;
      out.worst_point = pt;
      first = false;
    }
    std::size_t k = 0;
    while (k < d && ++idx[k] == axis.size()) idx[k++] = 0;
    if (k == d) break;
  }
  out.ok = out.worst_value >= 0;
  return out;
}

}  // namespace wronsos

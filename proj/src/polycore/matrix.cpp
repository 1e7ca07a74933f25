#include "wronsos/matrix.hpp"

#include <algorithm>

#include "wronsos/error.hpp"

namespace wronsos {

void SymMatrix::check(std::size_t i, std::size_t j) const {
  if (i >= n_ || j >= n_) throw Error(ErrorKind::Structural, "matrix index out of range");
}

Rational SymMatrix::get(std::size_t i, std::size_t j) const {
  check(i, j);
  auto it = upper_.find({std::min(i, j), std::max(i, j)});
  return it == upper_.end() ? Rational(0) : it->second;
}

void SymMatrix::set(std::size_t i, std::size_t j, const Rational& v) {
  check(i, j);
  const std::pair key{std::min(i, j), std::max(i, j)};
  if (v == 0) {
    upper_.erase(key);
  } else {
    upper_[key] = v;
  }
}

void SymMatrix::add(std::size_t i, std::size_t j, const Rational& v) {
  check(i, j);
  if (v == 0) return;
  const std::pair key{std::min(i, j), std::max(i, j)};
  auto [it, inserted] = upper_.try_emplace(key, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) upper_.erase(it);
  }
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::Structural, "matrix size mismatch");
  for (const auto& [ij, v] : other.upper_) add(ij.first, ij.second, v);
  return *this;
}

SymMatrix& SymMatrix::operator-=(const SymMatrix& other) {
  if (other.n_ != n_) throw Error(ErrorKind::Structural, "matrix size mismatch");
  for (const auto& [ij, v] : other.upper_) add(ij.first, ij.second, -v);
  return *this;
}

SymMatrix& SymMatrix::operator*=(const Rational& c) {
  if (c == 0) {
    upper_.clear();
    return *this;
  }
  for (auto& [ij, v] : upper_) v *= c;
  return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(SymMatrix a, const Rational& c) { return a *= c; }
SymMatrix operator*(const Rational& c, SymMatrix a) { return a *= c; }

Polynomial quadratic_form(std::span<const MultiIndex> monomials, const SymMatrix& s) {
  if (monomials.size() != s.size()) throw Error(ErrorKind::Structural, "basis/matrix size mismatch");
  const std::size_t nvars = monomials.empty() ? 0 : monomials.front().size();
  Polynomial out(nvars);
  for (const auto& [ij, v] : s.upper()) {
    const auto [i, j] = ij;
    out.add_term(monomials[i] + monomials[j], i == j ? v : 2 * v);
  }
  return out;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from(const SymMatrix& s) {
  Matrix m(s.size(), s.size());
  for (const auto& [ij, v] : s.upper()) {
    m(ij.first, ij.second) = v;
    m(ij.second, ij.first) = v;
  }
  return m;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::Structural, "matrix product size mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  }
  return c;
}

Matrix transpose(const Matrix& a) {
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  }
  return t;
}

std::vector<std::size_t> reduce_to_rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t piv = row;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(row, j));
    }
    const Rational inv = 1 / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      const Rational f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(Matrix m) { return reduce_to_rref(m).size(); }

Matrix nullspace(Matrix m) {
  const auto pivots = reduce_to_rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  Matrix basis(m.cols(), free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    basis(free_cols[f], f) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], f) = -m(r, free_cols[f]);
  }
  return basis;
}

std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& rhs) {
  if (rhs.size() != m.rows()) throw Error(ErrorKind::Structural, "right-hand side size mismatch");
  Matrix aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto pivots = reduce_to_rref(aug);
  std::vector<Rational> x(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] == m.cols()) return std::nullopt;
    x[pivots[r]] = aug(r, m.cols());
  }
  return x;
}

Ldlt ldlt_psd(const SymMatrix& a) {
  const std::size_t n = a.size();
  Matrix w = Matrix::from(a);
  Ldlt out;
  out.lower = Matrix::identity(n);
  out.diag.assign(n, Rational(0));
  out.perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.perm[i] = i;

  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < n; ++c) std::swap(w(i, c), w(j, c));
    for (std::size_t r = 0; r < n; ++r) std::swap(w(r, i), w(r, j));
    for (std::size_t c = 0; c < i; ++c) std::swap(out.lower(i, c), out.lower(j, c));
    std::swap(out.perm[i], out.perm[j]);
  };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t best = k;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, i) > w(best, best)) best = i;
    }
    if (w(best, best) < 0) {
      out.rank = k;
      out.psd = false;
      return out;
    }
    if (w(best, best) == 0) {
      // PSD with a zero diagonal forces the whole remaining block to vanish.
      for (std::size_t i = k; i < n; ++i) {
        for (std::size_t j = k; j < n; ++j) {
          if (w(i, j) != 0) {
            out.rank = k;
            out.psd = false;
            return out;
          }
        }
      }
      out.rank = k;
      out.psd = true;
      return out;
    }
    swap_index(k, best);
    const Rational pivot = w(k, k);
    out.diag[k] = pivot;
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      out.lower(i, k) = w(i, k) / pivot;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      if (w(i, k) == 0) continue;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (w(k, j) == 0) continue;
        w(i, j) -= out.lower(i, k) * w(k, j);
      }
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      w(i, k) = 0;
      w(k, i) = 0;
    }
  }
  out.rank = n;
  out.psd = true;
  return out;
}

}  // namespace wronsos

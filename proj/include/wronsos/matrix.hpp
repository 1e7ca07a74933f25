#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "wronsos/polynomial.hpp"
#include "wronsos/rational.hpp"

namespace wronsos {

/// Sparse symmetric N x N matrix over Q; only the upper triangle is stored.
class SymMatrix {
 public:
  using Entries = std::map<std::pair<std::size_t, std::size_t>, Rational>;

  SymMatrix() = default;
  explicit SymMatrix(std::size_t n) : n_(n) {}

  std::size_t size() const { return n_; }
  bool is_zero() const { return upper_.empty(); }
  // (i, j) with i <= j, nonzero values only.
  const Entries& upper() const { return upper_; }

  Rational get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, const Rational& v);
  void add(std::size_t i, std::size_t j, const Rational& v);

  SymMatrix& operator+=(const SymMatrix& other);
  SymMatrix& operator-=(const SymMatrix& other);
  SymMatrix& operator*=(const Rational& c);

  bool operator==(const SymMatrix& other) const = default;

 private:
  void check(std::size_t i, std::size_t j) const;

  std::size_t n_ = 0;
  Entries upper_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(SymMatrix a, const Rational& c);
SymMatrix operator*(const Rational& c, SymMatrix a);

/// Sum_{i,j} S_ij x^{a_i} x^{a_j}.
Polynomial quadratic_form(std::span<const MultiIndex> monomials, const SymMatrix& s);

/// Dense rows x cols rational matrix, row-major.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  static Matrix identity(std::size_t n);
  static Matrix from(const SymMatrix& s);

  bool operator==(const Matrix& other) const = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);

/// In-place reduced row echelon form; returns the pivot column of each
/// nonzero row. Pivots are chosen as the first nonzero entry in row order.
std::vector<std::size_t> reduce_to_rref(Matrix& m);

std::size_t rank(Matrix m);

/// Basis of {x : m x = 0} as columns of the returned matrix.
Matrix nullspace(Matrix m);

/// A solution of m x = rhs with free variables set to zero, or nullopt.
std::optional<std::vector<Rational>> solve(const Matrix& m, const std::vector<Rational>& rhs);

/// Exact symmetric pivoted factorization P A P^T = L D L^T. Pivoting takes
/// the largest remaining diagonal entry. When the largest remaining diagonal
/// is zero the remaining Schur complement must vanish for A to be PSD.
struct Ldlt {
  std::vector<std::size_t> perm;  // row k of P A P^T is row perm[k] of A
  Matrix lower;                   // unit lower triangular
  std::vector<Rational> diag;     // D
  std::size_t rank = 0;
  bool psd = false;
};

Ldlt ldlt_psd(const SymMatrix& a);

}  // namespace wronsos

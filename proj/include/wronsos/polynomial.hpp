#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "wronsos/rational.hpp"

namespace wronsos {

// Degree of the zero polynomial, and per-variable degree of the zero polynomial.
inline constexpr int kZeroDegree = std::numeric_limits<int>::min();

/// Exponent vector of a monomial z^alpha. When a polynomial is homogenized the
/// auxiliary variable z_0 is stored as the LAST entry, so z_1..z_d keep their
/// positions.
struct MultiIndex {
  std::vector<int> exps;

  MultiIndex() = default;
  explicit MultiIndex(std::size_t nvars) : exps(nvars, 0) {}
  MultiIndex(std::initializer_list<int> e) : exps(e) {}
  explicit MultiIndex(std::vector<int> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  int operator[](std::size_t k) const { return exps[k]; }
  int& operator[](std::size_t k) { return exps[k]; }
  int degree() const;

  bool operator==(const MultiIndex&) const = default;
  // Plain lexicographic order, for use as a key only.
  auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
// Componentwise difference; entries may go negative, callers check.
MultiIndex operator-(const MultiIndex& a, const MultiIndex& b);
bool divides(const MultiIndex& a, const MultiIndex& b);
MultiIndex unit_index(std::size_t nvars, std::size_t k);

/// Monomial order used for storage and for monomial bases: total degree
/// ascending, then within one degree the index with the larger exponent in the
/// first differing variable comes first. So for d = 2 the order reads
/// 1, z1, z2, z1^2, z1*z2, z2^2, ...
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

/// Graded-lex comparison with z_1 > z_2 > ... used to pick leading terms.
bool grlex_greater(const MultiIndex& a, const MultiIndex& b);

/// Sparse multivariate polynomial with exact rational coefficients. No zero
/// coefficients are ever stored.
class Polynomial {
 public:
  using Terms = std::map<MultiIndex, Rational, GradedLess>;

  explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial monomial(const MultiIndex& alpha, const Rational& c = 1);
  static Polynomial variable(std::size_t nvars, std::size_t k);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  int degree() const;
  int degree_in(std::size_t k) const;
  Rational coefficient(const MultiIndex& alpha) const;

  // Leading term in graded-lex order with z_1 > z_2 > ...; precondition: nonzero.
  const MultiIndex& leading_monomial() const;
  const Rational& leading_coefficient() const;

  void add_term(const MultiIndex& alpha, const Rational& c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  Polynomial derivative(std::size_t k, int times = 1) const;

  // Same polynomial seen in more variables (new variables appended).
  Polynomial lifted(std::size_t nvars) const;

  Rational evaluate(std::span<const Rational> point) const;

  bool operator==(const Polynomial& other) const;

 private:
  void check_compatible(const Polynomial& other) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Rational& c);
Polynomial operator*(const Rational& c, Polynomial a);
Polynomial pow(const Polynomial& a, int e);

/// W_k[q, p] = q * dp/dz_k - p * dq/dz_k (k is 0-based).
Polynomial wronskian(const Polynomial& q, const Polynomial& p, std::size_t k);

/// H(z, z_0) = z_0^n h(z/z_0); z_0 is appended as the last variable.
Polynomial homogenize(const Polynomial& h, int n);

/// Sets the last variable to 1 and drops it.
Polynomial dehomogenize(const Polynomial& h);

/// Exact quotient a / b; throws if b does not divide a.
Polynomial divide_exact(const Polynomial& a, const Polynomial& b);

/// GCD in Q[z], normalized to be primitive with positive leading coefficient.
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Scales by a nonzero rational so that the coefficients are coprime integers
/// and the leading coefficient is positive. Zero stays zero.
Polynomial primitive_normalized(const Polynomial& a);

std::complex<double> eval_complex(const Polynomial& p,
                                  std::span<const std::complex<double>> point);

/// Renders in the CLI grammar, e.g. "z1^2 - 2/3*z1*z2 + 1".
std::string to_string(const Polynomial& p);

/// f = p / q with q != 0.
struct RationalFunction {
  Polynomial p;
  Polynomial q;

  // Cancels gcd(p, q), makes q primitive with positive leading coefficient.
  static RationalFunction normalized(const Polynomial& p, const Polynomial& q);
};

}  // namespace wronsos

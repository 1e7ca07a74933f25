#include "wronsos/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "wronsos/error.hpp"

namespace wronsos {

int MultiIndex::degree() const { return std::accumulate(exps.begin(), exps.end(), 0); }

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += b[k];
  return r;
}

MultiIndex operator-(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r = a;
  for (std::size_t k = 0; k < r.size(); ++k) r[k] -= b[k];
  return r;
}

bool divides(const MultiIndex& a, const MultiIndex& b) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] > b[k]) return false;
  }
  return true;
}

MultiIndex unit_index(std::size_t nvars, std::size_t k) {
  MultiIndex e(nvars);
  e[k] = 1;
  return e;
}

bool GradedLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps > b.exps;
}

bool grlex_greater(const MultiIndex& a, const MultiIndex& b) {
  const int da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exps > b.exps;
}

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(MultiIndex(nvars), c);
  return p;
}

Polynomial Polynomial::monomial(const MultiIndex& alpha, const Rational& c) {
  Polynomial p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t k) {
  if (k >= nvars) throw Error(ErrorKind::Structural, "variable index out of range");
  return monomial(unit_index(nvars, k));
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
}

int Polynomial::degree() const {
  if (terms_.empty()) return kZeroDegree;
  return terms_.rbegin()->first.degree();
}

int Polynomial::degree_in(std::size_t k) const {
  if (k >= nvars_) throw Error(ErrorKind::Structural, "variable index out of range");
  if (terms_.empty()) return kZeroDegree;
  int d = 0;
  for (const auto& [alpha, c] : terms_) d = std::max(d, alpha[k]);
  return d;
}

Rational Polynomial::coefficient(const MultiIndex& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

const MultiIndex& Polynomial::leading_monomial() const {
  if (terms_.empty()) throw Error(ErrorKind::Precondition, "zero polynomial has no leading term");
  // Inside the top-degree block the lex-largest index is stored first.
  auto it = std::prev(terms_.end());
  const int top = it->first.degree();
  while (it != terms_.begin() && std::prev(it)->first.degree() == top) --it;
  return it->first;
}

const Rational& Polynomial::leading_coefficient() const {
  return terms_.find(leading_monomial())->second;
}

void Polynomial::add_term(const MultiIndex& alpha, const Rational& c) {
  if (alpha.size() != nvars_) {
    throw Error(ErrorKind::Structural, "monomial has wrong number of variables");
  }
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_compatible(const Polynomial& other) const {
  if (nvars_ != other.nvars_) {
    throw Error(ErrorKind::Structural, "polynomials have different variable counts (" +
                                           std::to_string(nvars_) + " vs " +
                                           std::to_string(other.nvars_) + ")");
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  check_compatible(other);
  for (const auto& [alpha, c] : other.terms_) add_term(alpha, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [alpha, coef] : terms_) coef *= c;
  return *this;
}

Polynomial Polynomial::derivative(std::size_t k, int times) const {
  if (k >= nvars_) throw Error(ErrorKind::Structural, "variable index out of range");
  Polynomial r(nvars_);
  for (const auto& [alpha, c] : terms_) {
    if (alpha[k] < times) continue;
    Rational factor = c;
    for (int t = 0; t < times; ++t) factor *= alpha[k] - t;
    MultiIndex beta = alpha;
    beta[k] -= times;
    r.add_term(beta, factor);
  }
  return r;
}

Polynomial Polynomial::lifted(std::size_t nvars) const {
  if (nvars < nvars_) throw Error(ErrorKind::Structural, "cannot drop variables by lifting");
  Polynomial r(nvars);
  for (const auto& [alpha, c] : terms_) {
    MultiIndex beta(nvars);
    std::copy(alpha.exps.begin(), alpha.exps.end(), beta.exps.begin());
    r.add_term(beta, c);
  }
  return r;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars_) throw Error(ErrorKind::Structural, "point has wrong dimension");
  Rational sum = 0;
  for (const auto& [alpha, c] : terms_) {
    Rational term = c;
    for (std::size_t k = 0; k < nvars_; ++k) {
      for (int e = 0; e < alpha[k]; ++e) term *= point[k];
    }
    sum += term;
  }
  return sum;
}

bool Polynomial::operator==(const Polynomial& other) const {
  return nvars_ == other.nvars_ && terms_ == other.terms_;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) {
    throw Error(ErrorKind::Structural, "polynomials have different variable counts");
  }
  Polynomial r(a.nvars());
  for (const auto& [alpha, ca] : a.terms()) {
    for (const auto& [beta, cb] : b.terms()) r.add_term(alpha + beta, ca * cb);
  }
  return r;
}

Polynomial pow(const Polynomial& a, int e) {
  if (e < 0) throw Error(ErrorKind::Precondition, "negative exponent");
  Polynomial r = Polynomial::constant(a.nvars(), 1);
  for (int i = 0; i < e; ++i) r = r * a;
  return r;
}

Polynomial wronskian(const Polynomial& q, const Polynomial& p, std::size_t k) {
  if (q.nvars() != p.nvars()) {
    throw Error(ErrorKind::Structural, "wronskian arguments have different variable counts");
  }
  return q * p.derivative(k) - p * q.derivative(k);
}

Polynomial homogenize(const Polynomial& h, int n) {
  if (h.degree() > n) {
    throw Error(ErrorKind::Precondition, "cannot homogenize: degree " +
                                             std::to_string(h.degree()) + " exceeds " +
                                             std::to_string(n));
  }
  Polynomial r(h.nvars() + 1);
  for (const auto& [alpha, c] : h.terms()) {
    MultiIndex beta(h.nvars() + 1);
    std::copy(alpha.exps.begin(), alpha.exps.end(), beta.exps.begin());
    beta[h.nvars()] = n - alpha.degree();
    r.add_term(beta, c);
  }
  return r;
}

Polynomial dehomogenize(const Polynomial& h) {
  if (h.nvars() == 0) throw Error(ErrorKind::Structural, "nothing to dehomogenize");
  const std::size_t d = h.nvars() - 1;
  Polynomial r(d);
  for (const auto& [alpha, c] : h.terms()) {
    r.add_term(MultiIndex(std::vector<int>(alpha.exps.begin(), alpha.exps.begin() + d)), c);
  }
  return r;
}

Polynomial divide_exact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorKind::Precondition, "division by the zero polynomial");
  if (a.nvars() != b.nvars()) throw Error(ErrorKind::Structural, "variable count mismatch");
  Polynomial quotient(a.nvars());
  Polynomial rest = a;
  const MultiIndex lead_b = b.leading_monomial();
  const Rational lc_b = b.leading_coefficient();
  while (!rest.is_zero()) {
    const MultiIndex lead_r = rest.leading_monomial();
    if (!divides(lead_b, lead_r)) {
      throw Error(ErrorKind::Precondition, "polynomial division is not exact");
    }
    Polynomial t = Polynomial::monomial(lead_r - lead_b, rest.leading_coefficient() / lc_b);
    quotient += t;
    rest -= t * b;
  }
  return quotient;
}

Polynomial primitive_normalized(const Polynomial& a) {
  if (a.is_zero()) return a;
  Integer den_lcm = 1, num_gcd = 0;
  for (const auto& [alpha, c] : a.terms()) {
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num_mpz_t());
  }
  Rational scale(den_lcm, num_gcd);
  scale.canonicalize();
  if (a.leading_coefficient() < 0) scale = -scale;
  return a * scale;
}

namespace {

// p viewed in Q[others][z_v]: exponent of z_v -> coefficient (z_v exponent zeroed).
std::map<int, Polynomial> coefficients_in(const Polynomial& p, std::size_t v) {
  std::map<int, Polynomial> out;
  for (const auto& [alpha, c] : p.terms()) {
    MultiIndex rest = alpha;
    rest[v] = 0;
    auto [it, inserted] = out.try_emplace(alpha[v], Polynomial(p.nvars()));
    it->second.add_term(rest, c);
  }
  return out;
}

Polynomial content_in(const Polynomial& p, std::size_t v) {
  Polynomial g(p.nvars());
  for (const auto& [e, coef] : coefficients_in(p, v)) {
    g = g.is_zero() ? primitive_normalized(coef) : gcd(g, coef);
    if (g.is_constant()) break;
  }
  return g;
}

Polynomial primitive_part_in(const Polynomial& p, std::size_t v) {
  return primitive_normalized(divide_exact(p, content_in(p, v)));
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t v) {
  const int db = b.degree_in(v);
  const Polynomial lead_b = coefficients_in(b, v).rbegin()->second;
  Polynomial r = a;
  while (!r.is_zero() && r.degree_in(v) >= db) {
    auto coefs = coefficients_in(r, v);
    const int dr = coefs.rbegin()->first;
    MultiIndex shift(a.nvars());
    shift[v] = dr - db;
    r = lead_b * r - coefs.rbegin()->second * Polynomial::monomial(shift) * b;
    r = primitive_normalized(r);
  }
  return r;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.nvars() != b.nvars()) throw Error(ErrorKind::Structural, "variable count mismatch");
  if (a.is_zero() && b.is_zero()) {
    throw Error(ErrorKind::UndefinedGcd, "gcd of two zero polynomials is undefined");
  }
  if (a.is_zero()) return primitive_normalized(b);
  if (b.is_zero()) return primitive_normalized(a);
  const Polynomial one = Polynomial::constant(a.nvars(), 1);
  if (a.is_constant() || b.is_constant()) return one;

  std::size_t v = 0;
  while (a.degree_in(v) == 0 && b.degree_in(v) == 0) ++v;
  if (a.degree_in(v) == 0) return gcd(a, content_in(b, v));
  if (b.degree_in(v) == 0) return gcd(content_in(a, v), b);

  const Polynomial ca = content_in(a, v), cb = content_in(b, v);
  const Polynomial c = gcd(ca, cb);
  Polynomial x = divide_exact(a, ca), y = divide_exact(b, cb);
  if (x.degree_in(v) < y.degree_in(v)) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y, v);
    x = std::move(y);
    y = r.is_zero() ? r : primitive_part_in(r, v);
  }
  return primitive_normalized(c * primitive_part_in(x, v));
}

std::complex<double> eval_complex(const Polynomial& p,
                                  std::span<const std::complex<double>> point) {
  if (point.size() != p.nvars()) throw Error(ErrorKind::Structural, "point has wrong dimension");
  // powers[k][e] = point[k]^e
  std::vector<std::vector<std::complex<double>>> powers(p.nvars());
  for (std::size_t k = 0; k < p.nvars(); ++k) {
    const int top = p.is_zero() ? 0 : p.degree_in(k);
    powers[k].resize(top + 1);
    powers[k][0] = 1.0;
    for (int e = 1; e <= top; ++e) powers[k][e] = powers[k][e - 1] * point[k];
  }
  std::complex<double> sum = 0.0;
  for (const auto& [alpha, c] : p.terms()) {
    std::complex<double> term = to_double(c);
    for (std::size_t k = 0; k < p.nvars(); ++k) term *= powers[k][alpha[k]];
    sum += term;
  }
  return sum;
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<MultiIndex, Rational>> terms(p.terms().begin(), p.terms().end());
  std::sort(terms.begin(), terms.end(),
            [](const auto& a, const auto& b) { return grlex_greater(a.first, b.first); });
  std::ostringstream out;
  bool first = true;
  for (const auto& [alpha, c] : terms) {
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    const Rational mag = abs(c);
    std::string mono;
    for (std::size_t k = 0; k < alpha.size(); ++k) {
      if (alpha[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "z" + std::to_string(k + 1);
      if (alpha[k] > 1) mono += "^" + std::to_string(alpha[k]);
    }
    if (mono.empty()) {
      out << to_string(mag);
    } else if (mag == 1) {
      out << mono;
    } else {
      out << to_string(mag) << "*" << mono;
    }
  }
  return out.str();
}

RationalFunction RationalFunction::normalized(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw Error(ErrorKind::Precondition, "denominator is the zero polynomial");
  if (p.nvars() != q.nvars()) throw Error(ErrorKind::Structural, "variable count mismatch");
  const Polynomial g = gcd(p, q);
  Polynomial num = divide_exact(p, g), den = divide_exact(q, g);
  const Polynomial den_norm = primitive_normalized(den);
  // den_norm = scale * den for a rational scale; apply the same to num.
  const MultiIndex& lead = den.leading_monomial();
  const Rational scale = den_norm.coefficient(lead) / den.coefficient(lead);
  return {num * scale, den_norm};
}

}  // namespace wronsos

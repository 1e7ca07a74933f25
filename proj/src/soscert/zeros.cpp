#include "zeros.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <tuple>
#include <utility>

namespace wronsos::detail {

std::optional<std::vector<Eigen::VectorXcd>> kernel_points(const std::vector<MultiIndex>& monos,
                                                           const Eigen::MatrixXd& k) {
  const Eigen::Index n = k.rows(), r = k.cols();
  if (monos.empty() || r == 0) return std::nullopt;
  const std::size_t d = monos[0].size();
  std::map<MultiIndex, Eigen::Index> where;
  for (Eigen::Index i = 0; i < n; ++i) where[monos[i]] = i;

  // Greedy pivot rows in basis order, so low degree monomials come first.
  // Only rows whose shift by z_v is also a row are eligible, so that the
  // multiplication matrix for z_v is complete.
  auto pick = [&](std::optional<std::size_t> var) {
    std::vector<Eigen::Index> pivots;
    Eigen::MatrixXd chosen(0, r);
    for (Eigen::Index i = 0; i < n && static_cast<Eigen::Index>(pivots.size()) < r; ++i) {
      if (var) {
        MultiIndex shifted = monos[i];
        ++shifted[*var];
        if (!where.count(shifted)) continue;
      }
      Eigen::MatrixXd trial(chosen.rows() + 1, r);
      trial << chosen, k.row(i);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(trial);
      const auto& s = svd.singularValues();
      if (s[s.size() - 1] < 1e-6 * s[0]) continue;
      chosen = trial;
      pivots.push_back(i);
    }
    return std::make_pair(pivots, chosen);
  };
  std::vector<Eigen::Index> pivots;
  Eigen::MatrixXd chosen;
  for (std::size_t v = 0; v <= d && static_cast<Eigen::Index>(pivots.size()) < r; ++v) {
    std::tie(pivots, chosen) = v < d ? pick(v) : pick(std::nullopt);
  }
  if (static_cast<Eigen::Index>(pivots.size()) < r) return std::nullopt;
  const Eigen::MatrixXd u = k * chosen.inverse();

  // Multiplication matrices where every shifted pivot is available; one
  // generic combination of them separates the points.
  Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(r, r);
  bool any = false;
  for (std::size_t v = 0; v < d; ++v) {
    Eigen::MatrixXd mult(r, r);
    bool complete = true;
    for (Eigen::Index p = 0; p < r && complete; ++p) {
      MultiIndex shifted = monos[pivots[p]];
      ++shifted[v];
      auto it = where.find(shifted);
      if (it == where.end()) {
        complete = false;
      } else {
        mult.row(p) = u.row(it->second);
      }
    }
    if (!complete) continue;
    combo += (1.0 + 0.6180339887 * (v + 1) * (v + 1)) * mult;
    any = true;
  }
  if (!any && r > 1) return std::nullopt;

  std::vector<Eigen::VectorXcd> psi;
  if (r == 1) {
    psi.push_back(u.col(0).cast<std::complex<double>>());
  } else {
    Eigen::EigenSolver<Eigen::MatrixXd> eig(combo);
    if (eig.info() != Eigen::Success) return std::nullopt;
    for (Eigen::Index j = 0; j < r; ++j) {
      // One point per conjugate pair.
      if (eig.eigenvalues()[j].imag() < -1e-9 * (1 + std::abs(eig.eigenvalues()[j]))) continue;
      psi.push_back(u.cast<std::complex<double>>() * eig.eigenvectors().col(j));
    }
  }

  // Coordinates from ratios of monomials one unit apart.
  std::vector<Eigen::VectorXcd> points;
  for (const auto& y : psi) {
    Eigen::VectorXcd x(d);
    for (std::size_t v = 0; v < d; ++v) {
      double best = 0;
      for (Eigen::Index i = 0; i < n; ++i) {
        MultiIndex shifted = monos[i];
        ++shifted[v];
        auto it = where.find(shifted);
        if (it == where.end() || std::abs(y[i]) <= best) continue;
        best = std::abs(y[i]);
        x[v] = y[it->second] / y[i];
      }
      if (best < 1e-8 * y.cwiseAbs().maxCoeff()) return std::nullopt;
    }
    points.push_back(x);
  }
  if (points.empty()) return std::nullopt;
  return points;
}

namespace {

MpComplex operator+(const MpComplex& a, const MpComplex& b) { return {a.re + b.re, a.im + b.im}; }
MpComplex operator-(const MpComplex& a, const MpComplex& b) { return {a.re - b.re, a.im - b.im}; }
MpComplex operator*(const MpComplex& a, const MpComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
MpComplex operator/(const MpComplex& a, const MpComplex& b) {
  const mpf_class den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}
mpf_class norm(const MpComplex& a) { return sqrt(a.re * a.re + a.im * a.im); }

MpComplex zero(unsigned bits) { return {mpf_class(0, bits), mpf_class(0, bits)}; }

MpComplex eval(const Polynomial& p, const std::vector<MpComplex>& x, unsigned bits) {
  MpComplex s = zero(bits);
  for (const auto& [alpha, c] : p.terms()) {
    MpComplex t{mpf_class(c, bits), mpf_class(0, bits)};
    for (std::size_t v = 0; v < x.size(); ++v) {
      for (int e = 0; e < alpha[v]; ++e) t = t * x[v];
    }
    s = s + t;
  }
  return s;
}

// Solves a x = b by Gaussian elimination with partial pivoting.
std::optional<std::vector<MpComplex>> solve_dense(std::vector<std::vector<MpComplex>> a,
                                                  std::vector<MpComplex> b, unsigned bits) {
  const std::size_t n = b.size();
  mpf_class top(0, bits);
  for (const auto& row : a) {
    for (const auto& x : row) top = std::max(top, norm(x));
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t best = c;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (norm(a[i][c]) > norm(a[best][c])) best = i;
    }
    if (norm(a[best][c]) <= top * 1e-30) return std::nullopt;
    std::swap(a[best], a[c]);
    std::swap(b[best], b[c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const MpComplex f = a[i][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[i][j] = a[i][j] - f * a[c][j];
      b[i] = b[i] - f * b[c];
    }
  }
  std::vector<MpComplex> x(n, zero(bits));
  for (std::size_t i = n; i-- > 0;) {
    MpComplex s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s = s - a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace

std::optional<std::vector<MpComplex>> refine_zero(const Polynomial& f, const Eigen::VectorXcd& start,
                                                  unsigned bits) {
  const std::size_t d = f.nvars();
  std::vector<Polynomial> grad(d);
  std::vector<std::vector<Polynomial>> hess(d, std::vector<Polynomial>(d));
  for (std::size_t i = 0; i < d; ++i) {
    grad[i] = f.derivative(i);
    for (std::size_t j = 0; j < d; ++j) hess[i][j] = grad[i].derivative(j);
  }
  std::vector<MpComplex> x(d);
  for (std::size_t i = 0; i < d; ++i) x[i] = {mpf_class(start[i].real(), bits), mpf_class(start[i].imag(), bits)};

  mpf_class size(1, bits);
  for (const auto& xi : x) size = std::max(size, norm(xi));
  mpf_class tiny(1, bits);
  mpf_div_2exp(tiny.get_mpf_t(), tiny.get_mpf_t(), bits - 24);

  for (int iter = 0; iter < 200; ++iter) {
    std::vector<MpComplex> g(d);
    std::vector<std::vector<MpComplex>> h(d, std::vector<MpComplex>(d));
    for (std::size_t i = 0; i < d; ++i) {
      g[i] = zero(bits) - eval(grad[i], x, bits);
      for (std::size_t j = 0; j < d; ++j) h[i][j] = eval(hess[i][j], x, bits);
    }
    auto step = solve_dense(h, g, bits);
    if (!step) return std::nullopt;
    mpf_class len(0, bits);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = x[i] + (*step)[i];
      len = std::max(len, norm((*step)[i]));
    }
    if (len > 1e3 * size) return std::nullopt;
    if (len <= tiny * size) {
      // The kernel points are zeros of f, hence critical points of it.
      mpf_class scale(0, bits);
      for (const auto& [alpha, c] : f.terms()) scale = std::max(scale, mpf_class(abs(mpf_class(c, bits))));
      mpf_class pw(1, bits);
      for (int e = 0; e < f.degree(); ++e) pw *= size;
      if (norm(eval(f, x, bits)) > scale * pw * 1e-20) return std::nullopt;
      return x;
    }
  }
  return std::nullopt;
}

MpColumns monomial_columns(const std::vector<MultiIndex>& monos, const std::vector<MpComplex>& x) {
  const auto bits = x.empty() ? 64 : x[0].re.get_prec();
  std::vector<mpf_class> re, im;
  bool complex = false;
  for (const auto& m : monos) {
    MpComplex t{mpf_class(1, bits), mpf_class(0, bits)};
    for (std::size_t v = 0; v < x.size(); ++v) {
      for (int e = 0; e < m[v]; ++e) t = t * x[v];
    }
    complex |= abs(t.im) > 1e-30 * (1 + norm(t));
    re.push_back(t.re);
    im.push_back(t.im);
  }
  MpColumns out{re};
  if (complex) out.push_back(im);
  return out;
}

}  // namespace wronsos::detail

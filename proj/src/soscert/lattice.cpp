#include "lattice.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <utility>

namespace wronsos::detail {

namespace {

using Row = std::vector<mpf_class>;

mpf_class dot(const Row& a, const Row& b) {
  mpf_class s(0, a.empty() ? 64 : a[0].get_prec());
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

mpf_class nearest(const mpf_class& x) { return floor(x + 0.5); }

// LLL with delta = 0.99 and incremental Gram-Schmidt updates.
void lll(std::vector<Row>& b) {
  const std::size_t n = b.size();
  if (n < 2) return;
  const auto prec = b[0][0].get_prec();
  std::vector<Row> mu(n, Row(n, mpf_class(0, prec)));
  std::vector<mpf_class> norms(n, mpf_class(0, prec));
  {
    std::vector<Row> star = b;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        mu[i][j] = dot(b[i], star[j]) / norms[j];
        for (std::size_t c = 0; c < star[i].size(); ++c) star[i][c] -= mu[i][j] * star[j][c];
      }
      norms[i] = dot(star[i], star[i]);
    }
  }
  auto reduce = [&](std::size_t k, std::size_t l) {
    const mpf_class q = nearest(mu[k][l]);
    if (q == 0) return;
    for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
    mu[k][l] -= q;
  };
  const mpf_class delta(0.99, prec);
  std::size_t k = 1;
  for (long guard = 0; k < n && guard < 2000000; ++guard) {
    reduce(k, k - 1);
    if (norms[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * norms[k - 1]) {
      const mpf_class m = mu[k][k - 1];
      const mpf_class big = norms[k] + m * m * norms[k - 1];
      mu[k][k - 1] = m * norms[k - 1] / big;
      norms[k] = norms[k - 1] * norms[k] / big;
      norms[k - 1] = big;
      std::swap(b[k], b[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      for (std::size_t i = k + 1; i < n; ++i) {
        const mpf_class t = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * t;
        mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
      }
      if (k > 1) --k;
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
}

}  // namespace

MpColumns orthonormalize(MpColumns columns) {
  MpColumns out;
  for (auto& v : columns) {
    const mpf_class before = sqrt(dot(v, v));
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& u : out) {
        const mpf_class s = dot(v, u);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= s * u[i];
      }
    }
    const mpf_class len = sqrt(dot(v, v));
    // Dependent columns leave only rounding noise behind.
    if (len <= before * 1e-40) continue;
    for (auto& x : v) x /= len;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<Integer>> integer_relations(const MpColumns& columns, const mpf_class& weight,
                                                    const mpf_class& tolerance) {
  if (columns.empty()) return {};
  const std::size_t n = columns[0].size(), r = columns.size();
  const auto prec = columns[0][0].get_prec();
  std::vector<Row> b(n, Row(n + r, mpf_class(0, prec)));
  for (std::size_t i = 0; i < n; ++i) {
    b[i][i] = 1;
    for (std::size_t c = 0; c < r; ++c) b[i][n + c] = weight * columns[c][i];
  }
  lll(b);

  // Rank candidate rows by relative residual so true relations come first.
  std::vector<std::pair<mpf_class, std::size_t>> order;
  for (std::size_t i = 0; i < n; ++i) {
    mpf_class len(0, prec), resid(0, prec);
    for (std::size_t c = 0; c < n; ++c) len += b[i][c] * b[i][c];
    for (std::size_t c = 0; c < r; ++c) {
      mpf_class s(0, prec);
      for (std::size_t j = 0; j < n; ++j) s += b[i][j] * columns[c][j];
      resid += s * s;
    }
    if (len == 0) continue;
    const mpf_class ratio = sqrt(resid / len);
    if (ratio <= tolerance) order.push_back({ratio, i});
  }
  std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  std::vector<std::vector<Integer>> out;
  Eigen::MatrixXd accepted(n, 0);
  for (const auto& [ratio, i] : order) {
    std::vector<Integer> rel(n);
    Eigen::VectorXd w(n);
    for (std::size_t c = 0; c < n; ++c) {
      rel[c] = Integer(nearest(b[i][c]));
      w[c] = rel[c].get_d();
    }
    Eigen::MatrixXd trial(n, accepted.cols() + 1);
    trial << accepted, w.normalized();
    if (Eigen::FullPivLU<Eigen::MatrixXd>(trial).rank() != trial.cols()) continue;
    accepted = trial;
    out.push_back(std::move(rel));
  }
  return out;
}

}  // namespace wronsos::detail

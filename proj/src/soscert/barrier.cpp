#include "barrier.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace wronsos::detail {

namespace {

Eigen::MatrixXd assemble(const AffineSdp& sdp, const Eigen::VectorXd& y, double t) {
  Eigen::MatrixXd x = sdp.c + sdp.shift;
  for (std::size_t j = 0; j < sdp.f.size(); ++j) {
    if (y[j] == 0) continue;
    for (const auto& e : sdp.f[j]) x(e.row, e.col) += y[j] * e.value;
  }
  x.diagonal().array() -= t;
  return x;
}

// -t - mu log det X, or +inf outside the cone.
double barrier_value(const Eigen::MatrixXd& x, double t, double mu) {
  Eigen::LLT<Eigen::MatrixXd> llt(x);
  if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
  const auto& l = llt.matrixL();
  double logdet = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double v = l(i, i);
    if (!(v > 0)) return std::numeric_limits<double>::infinity();
    logdet += 2 * std::log(v);
  }
  return -t - mu * logdet;
}

}  // namespace

SdpResult maximize_min_eigenvalue(const AffineSdp& sdp) {
  const std::size_t m = sdp.f.size();
  const Eigen::Index n = sdp.c.rows();
  SdpResult out;
  out.y = Eigen::VectorXd::Zero(m);
  if (n == 0) return out;

  const Eigen::MatrixXd start = sdp.c + sdp.shift;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(start, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, eig.eigenvalues().cwiseAbs().maxCoeff());
  out.t = eig.eigenvalues().minCoeff() - scale;

  Eigen::VectorXd z(m + 1);
  z.head(m) = out.y;
  z[m] = out.t;

  double best_score = std::numeric_limits<double>::infinity();
  auto consider = [&](const Eigen::VectorXd& at, double weight) {
    Eigen::LLT<Eigen::MatrixXd> llt(assemble(sdp, at.head(m), at[m]));
    if (llt.info() != Eigen::Success) return;
    Eigen::MatrixXd dual = weight * llt.solve(Eigen::MatrixXd::Identity(n, n));
    const double tr = dual.trace();
    if (!(tr > 0)) return;
    dual /= tr;
    double residual = 0;
    for (std::size_t j = 0; j < m; ++j) {
      double s = 0;
      for (const auto& e : sdp.f[j]) s += e.value * dual(e.col, e.row);
      residual = std::max(residual, std::abs(s));
    }
    const double value = dual.cwiseProduct(start).sum();
    const double score = value < 0 ? residual / -value : std::numeric_limits<double>::infinity();
    if (out.dual.size() == 0 || score < best_score) {
      best_score = score;
      out.dual = std::move(dual);
      out.residual = residual;
    }
  };

  double mu = scale;
  const double mu_min = 1e-11 * scale;
  while (true) {
    for (int inner = 0; inner < 60; ++inner) {
      const Eigen::MatrixXd x = assemble(sdp, z.head(m), z[m]);
      Eigen::LLT<Eigen::MatrixXd> llt(x);
      const Eigen::MatrixXd g = llt.solve(Eigen::MatrixXd::Identity(n, n));

      // Gradient and Hessian of -t - mu log det X in (y, t); F_t = -I.
      Eigen::VectorXd grad(m + 1);
      Eigen::MatrixXd hess(m + 1, m + 1);
      std::vector<Eigen::MatrixXd> gfg(m);
      for (std::size_t j = 0; j < m; ++j) {
        double tr = 0;
        Eigen::MatrixXd prod = Eigen::MatrixXd::Zero(n, n);
        for (const auto& e : sdp.f[j]) {
          tr += e.value * g(e.col, e.row);
          prod.noalias() += e.value * g.col(e.row) * g.row(e.col);
        }
        grad[j] = -mu * tr;
        gfg[j] = std::move(prod);
      }
      grad[m] = -1 + mu * g.trace();
      for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t k = j; k < m; ++k) {
          double s = 0;
          for (const auto& e : sdp.f[k]) s += e.value * gfg[j](e.col, e.row);
          hess(j, k) = hess(k, j) = mu * s;
        }
        // tr(G F_j G (-I)) = -tr(G F_j G)
        hess(j, m) = hess(m, j) = -mu * gfg[j].trace();
      }
      hess(m, m) = mu * (g * g).trace();

      Eigen::LDLT<Eigen::MatrixXd> solver(hess);
      Eigen::VectorXd step = solver.solve(-grad);
      if (!step.allFinite()) {
        step = hess.completeOrthogonalDecomposition().solve(-grad);
      }
      const double decrement = -grad.dot(step);
      ++out.newton_steps;
      if (!(decrement > 1e-14 * mu)) break;

      // Close to the center (Newton decrement below 1/4 for the
      // self-concordant f/mu) the full step is safe; checking it by value
      // would drown in rounding once mu is tiny.
      if (decrement < 0.25 * mu) {
        const Eigen::VectorXd trial = z + step;
        Eigen::LLT<Eigen::MatrixXd> check(assemble(sdp, trial.head(m), trial[m]));
        if (check.info() == Eigen::Success) {
          z = trial;
          continue;
        }
      }
      const double f0 = barrier_value(x, z[m], mu);
      double alpha = 1;
      bool moved = false;
      for (int halvings = 0; halvings < 60; ++halvings, alpha *= 0.5) {
        const Eigen::VectorXd trial = z + alpha * step;
        const double f1 = barrier_value(assemble(sdp, trial.head(m), trial[m]), trial[m], mu);
        if (f1 <= f0 - 0.25 * alpha * decrement) {
          z = trial;
          moved = true;
          break;
        }
      }
      if (!moved) break;
    }
    // Keep the dual with the best margin to residual ratio: at tiny mu the
    // inverse of a nearly singular X loses accuracy.
    consider(z, mu);
    if (mu <= mu_min) break;
    mu = std::max(mu * 0.2, mu_min);
  }

  out.y = z.head(m);
  out.t = z[m];
  return out;
}

}  // namespace wronsos::detail

#pragma once

#include <Eigen/Dense>
#include <gmpxx.h>

#include <optional>
#include <vector>

#include "lattice.hpp"
#include "wronsos/polynomial.hpp"

namespace wronsos::detail {

/// Points x_j (possibly complex, one per conjugate pair) with Psi(x_j) in the
/// complexified numeric kernel k (columns over monos), read off
/// multiplication matrices. nullopt when the kernel is not of that shape.
std::optional<std::vector<Eigen::VectorXcd>> kernel_points(const std::vector<MultiIndex>& monos,
                                                           const Eigen::MatrixXd& k);

struct MpComplex {
  mpf_class re, im;
};

/// Newton on grad f = 0 from x, at `bits` of precision. nullopt when the
/// Hessian is singular or the iteration does not settle on a zero of f.
std::optional<std::vector<MpComplex>> refine_zero(const Polynomial& f, const Eigen::VectorXcd& x,
                                                  unsigned bits);

/// Real and imaginary parts of Psi(x) over monos; the second is dropped for
/// real points.
MpColumns monomial_columns(const std::vector<MultiIndex>& monos, const std::vector<MpComplex>& x);

}  // namespace wronsos::detail

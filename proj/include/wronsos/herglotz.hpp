#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "wronsos/polynomial.hpp"
#include "wronsos/soscert.hpp"

namespace wronsos {

/// Real lattice for x_2..x_d: every coordinate runs lo, lo + step, ..., hi.
struct RealGrid {
  double lo = -3;
  double hi = 3;
  double step = 0.5;
};

/// z_1 = x + iy with x on [x_lo, x_hi] by x_step and y from ys (all > 0).
struct HalfPlaneGrid {
  double x_lo = -3;
  double x_hi = 3;
  double x_step = 0.5;
  std::vector<double> ys{0.1, 0.5, 1, 2};

  std::vector<std::complex<double>> points() const;
};

std::vector<double> grid_values(const RealGrid& g);

inline constexpr double kSkipThreshold = 1e-12;
inline constexpr double kScanTolerance = 1e-9;

struct ScanReport {
  double min_im = 0;
  std::vector<std::complex<double>> witness;  // (z_1, x_2, ..., x_d)
  std::size_t samples = 0;
  std::size_t skipped = 0;
  bool pass = true;  // min_im >= -kScanTolerance
};

/// Evaluates Im p/q at every (z_1, x_2..x_d) of the product grid, skipping
/// points with |q| <= kSkipThreshold. The first point attaining the minimum
/// is the witness. Throws InconclusiveScan when every point is skipped.
ScanReport slice_scan(const Polynomial& p, const Polynomial& q, const RealGrid& real = {},
                      const HalfPlaneGrid& half = {});
ScanReport slice_scan(const RationalFunction& f, const RealGrid& real = {}, const HalfPlaneGrid& half = {});

struct HolomorphyReport {
  bool ok = true;
  std::vector<std::complex<double>> witness;  // first point with |q| small
  std::size_t samples = 0;
};

/// Every coordinate drawn from the same half-plane grid. This only samples:
/// passing is necessary for q to be zero-free on the poly-halfplane, not
/// sufficient.
HolomorphyReport holomorphy_sample_check(const Polynomial& q, const HalfPlaneGrid& grid = {-3, 3, 1, {0.1, 0.5, 1, 2}});

/// Same check over explicit points.
HolomorphyReport holomorphy_sample_check(const Polynomial& q,
                                         const std::vector<std::vector<std::complex<double>>>& points);

enum class Verdict { AgreeSosHerglotz, AgreeNonsosNonherglotz, Disagree };

std::string_view to_string(Verdict v);

struct CrosscheckReport {
  Verdict verdict = Verdict::Disagree;
  Polynomial wronskian;  // W_1[q, p]
  SosOutcome sos;
  ScanReport scan;
  HolomorphyReport holomorphy;
  // Informational: first candidate s with s^2 W SOS when W itself is not.
  std::optional<Polynomial> artin_multiplier;
};

/// Side A is sos_certify(W_1[q, p]), side B the slice scan. A disagreement is
/// reported, never resolved. Throws Precondition when the holomorphy sampler
/// finds q near zero.
CrosscheckReport crosscheck_main_theorem(const Polynomial& p, const Polynomial& q,
                                         const std::vector<Polynomial>& candidates = {},
                                         const RealGrid& real = {}, const HalfPlaneGrid& half = {});

}  // namespace wronsos

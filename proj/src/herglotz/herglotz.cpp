#include "wronsos/herglotz.hpp"

#include <cmath>

#include "wronsos/error.hpp"

namespace wronsos {

namespace {

using C = std::complex<double>;

std::vector<double> lattice(double lo, double hi, double step) {
  if (!(step > 0) || hi < lo) throw Error(ErrorKind::Precondition, "grid needs step > 0 and lo <= hi");
  std::vector<double> out;
  // Index based so the values do not drift.
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
  for (long i = 0; i <= n; ++i) out.push_back(lo + i * step);
  return out;
}

// Calls f on every point of values^count in odometer order.
template <class F>
void product(const std::vector<C>& values, std::size_t count, F&& f) {
  std::vector<std::size_t> at(count, 0);
  std::vector<C> point(count);
  if (values.empty() && count > 0) return;
  while (true) {
    for (std::size_t i = 0; i < count; ++i) point[i] = values[at[i]];
    f(point);
    std::size_t i = count;
    while (i > 0 && ++at[i - 1] == values.size()) at[--i] = 0;
    if (i == 0) return;
  }
}

}  // namespace

std::vector<double> grid_values(const RealGrid& g) { return lattice(g.lo, g.hi, g.step); }

std::vector<C> HalfPlaneGrid::points() const {
  std::vector<C> out;
  for (double y : ys) {
    if (!(y > 0)) throw Error(ErrorKind::Precondition, "half-plane grid needs Im z > 0");
  }
  for (double x : lattice(x_lo, x_hi, x_step)) {
    for (double y : ys) out.emplace_back(x, y);
  }
  return out;
}

ScanReport slice_scan(const Polynomial& p, const Polynomial& q, const RealGrid& real, const HalfPlaneGrid& half) {
  if (p.nvars() != q.nvars()) throw Error(ErrorKind::Structural, "p and q must have the same variable count");
  if (q.is_zero()) throw Error(ErrorKind::Degenerate, "q is zero");
  const std::size_t d = std::max<std::size_t>(p.nvars(), 1);
  std::vector<C> xs;
  for (double x : grid_values(real)) xs.emplace_back(x, 0);
  const auto zs = half.points();

  ScanReport rep;
  bool first = true;
  std::vector<C> z(d);
  product(xs, d - 1, [&](const std::vector<C>& rest) {
    for (std::size_t k = 1; k < d; ++k) z[k] = rest[k - 1];
    for (const C& z1 : zs) {
      z[0] = z1;
      const std::span<const C> at(z.data(), p.nvars());
      const C den = eval_complex(q, at);
      if (std::abs(den) <= kSkipThreshold) {
        ++rep.skipped;
        continue;
      }
      ++rep.samples;
      const double im = (eval_complex(p, at) / den).imag();
      if (first || im < rep.min_im) {
        rep.min_im = im;
        rep.witness.assign(z.begin(), z.end());
        first = false;
      }
    }
  });
  if (rep.samples == 0) throw Error(ErrorKind::InconclusiveScan, "every grid point has |q| below the threshold");
  rep.pass = rep.min_im >= -kScanTolerance;
  return rep;
}

ScanReport slice_scan(const RationalFunction& f, const RealGrid& real, const HalfPlaneGrid& half) {
  return slice_scan(f.p, f.q, real, half);
}

HolomorphyReport holomorphy_sample_check(const Polynomial& q, const std::vector<std::vector<C>>& points) {
  HolomorphyReport rep;
  for (const auto& z : points) {
    if (z.size() != q.nvars()) throw Error(ErrorKind::Structural, "sample point has the wrong dimension");
    for (const C& c : z) {
      if (!(c.imag() > 0)) throw Error(ErrorKind::Precondition, "sample points must lie in the open poly-halfplane");
    }
    ++rep.samples;
    if (std::abs(eval_complex(q, z)) <= kSkipThreshold) {
      rep.ok = false;
      rep.witness = z;
      return rep;
    }
  }
  return rep;
}

HolomorphyReport holomorphy_sample_check(const Polynomial& q, const HalfPlaneGrid& grid) {
  HolomorphyReport rep;
  product(grid.points(), q.nvars(), [&](const std::vector<C>& z) {
    if (!rep.ok) return;
    ++rep.samples;
    if (std::abs(eval_complex(q, z)) <= kSkipThreshold) {
      rep.ok = false;
      rep.witness = z;
    }
  });
  return rep;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::AgreeSosHerglotz:
      return "AGREE_SOS_HERGLOTZ";
    case Verdict::AgreeNonsosNonherglotz:
      return "AGREE_NONSOS_NONHERGLOTZ";
    case Verdict::Disagree:
      return "DISAGREE";
  }
  return "DISAGREE";
}

CrosscheckReport crosscheck_main_theorem(const Polynomial& p, const Polynomial& q,
                                         const std::vector<Polynomial>& candidates, const RealGrid& real,
                                         const HalfPlaneGrid& half) {
  if (p.nvars() != q.nvars()) throw Error(ErrorKind::Structural, "p and q must have the same variable count");
  if (p.nvars() == 0) throw Error(ErrorKind::Precondition, "need at least one variable");
  CrosscheckReport rep;
  rep.holomorphy = holomorphy_sample_check(q);
  if (!rep.holomorphy.ok) throw Error(ErrorKind::Precondition, "q vanishes at a sampled point of the poly-halfplane");

  rep.wronskian = wronskian(q, p, 0);
  rep.sos = sos_certify(rep.wronskian);
  if (!rep.sos.certified() && !candidates.empty()) {
    if (auto a = artin_certify(rep.wronskian, candidates)) rep.artin_multiplier = a->first;
  }
  rep.scan = slice_scan(p, q, real, half);

  const bool sos = rep.sos.certified();
  if (sos && rep.scan.pass) {
    rep.verdict = Verdict::AgreeSosHerglotz;
  } else if (!sos && !rep.scan.pass) {
    rep.verdict = Verdict::AgreeNonsosNonherglotz;
  } else {
    rep.verdict = Verdict::Disagree;
  }
  return rep;
}

}  // namespace wronsos

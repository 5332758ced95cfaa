#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "spiralrg/errors.hpp"
#include "spiralrg/precision.hpp"
#include "spiralrg/rgt.hpp"
#include "spiralrg/xi.hpp"

namespace spiralrg {

template <class Real>
using Vec3 = std::array<Real, 3>;

template <class Real>
using Mat3 = std::array<std::array<Real, 3>, 3>;

/// Constants of the spiral around the approximate fixed point, all set by gN.
template <class Real>
struct SpiralConstants {
  Real a;       // 1 / (4gN)
  Real p;       // p^2 = sqrt(a + (a/2)^2) - a/2
  Real r;       // (1-p)/(1+p), per-step contraction
  Real omega;   // 2 arcsin p, per-step rotation
  Real period;  // 2 pi / omega
};

template <class Real>
Real p_from_gN(const Real& gN) {
  using std::sqrt;
  if (!(gN > Real(0))) throw InvalidArgument("gN must be positive");
  const Real a = Real(1) / (Real(4) * gN);
  const Real half = a / Real(2);
  return sqrt(sqrt(a + half * half) - half);
}

template <class Real>
SpiralConstants<Real> spiral_constants(const Real& gN) {
  using std::asin;
  const Real p = p_from_gN(gN);
  SpiralConstants<Real> c;
  c.a = Real(1) / (Real(4) * gN);
  c.p = p;
  c.r = (Real(1) - p) / (Real(1) + p);
  c.omega = Real(2) * asin(p);
  c.period = Real(2) * boost::math::constants::pi<Real>() / c.omega;
  return c;
}

template <class Real>
struct AnalyticPair {
  XiVector<Real> plus;   // attractive
  XiVector<Real> minus;  // repulsive
  SpiralConstants<Real> constants;
  Real residual;  // max of |F(xi) - xi| over both points
};

/// Closed-form fixed points of the approximate quartic map.
template <class Real>
AnalyticPair<Real> analytic_pair(const Real& gN) {
  const auto c = spiral_constants(gN);
  const Real& p = c.p;
  const Real shift = Real(1) / (Real(6) * gN);
  const Real up = (Real(1) + p) / (Real(1) - p);
  const Real down = (Real(1) - p) / (Real(1) + p);
  AnalyticPair<Real> out{
      XiVector<Real>(ModelKind::Quartic,
                     {-shift + up / Real(6), Real(1) - down / Real(6), Real(1) / Real(2) + p / Real(2)}),
      XiVector<Real>(ModelKind::Quartic,
                     {-shift + down / Real(6), Real(1) - up / Real(6), Real(1) / Real(2) - p / Real(2)}),
      c, Real(0)};
  const Real rp = max_abs_diff(step_approx_quartic(out.plus, gN).xi, out.plus);
  const Real rm = max_abs_diff(step_approx_quartic(out.minus, gN).xi, out.minus);
  out.residual = rp > rm ? rp : rm;
  return out;
}

/// G(p) of the linearization F'(xi+) = r G. A negative p gives the matrix at xi-.
template <class Real>
Mat3<Real> spiral_matrix(const Real& p) {
  const Real one(1);
  return {{{Real(4) * (one - p * p), (one + p) / (one - p), -Real(8) / Real(3) * (one + p)},
           {(one - p) / (one + p), Real(0), Real(0)},
           {Real(3) * (one - p), Real(0), -one}}};
}

/// r G at the attractive point; linearized_map(-p) is the map at the repulsive one.
template <class Real>
Mat3<Real> linearized_map(const Real& p) {
  using std::abs;
  if (!(abs(p) < Real(1))) throw InvalidArgument("linearized_map: |p| must be below 1");
  const Real r = (Real(1) - p) / (Real(1) + p);
  auto m = spiral_matrix(p);
  for (auto& row : m) {
    for (auto& v : row) v *= r;
  }
  return m;
}

template <class Real>
struct SpiralBasis {
  Vec3<Real> v;   // eigenvalue 1
  Vec3<Real> v1;  // real part of the rotating pair
  Vec3<Real> v2;  // imaginary part
};

template <class Real>
SpiralBasis<Real> eigensystem(const Real& p) {
  using std::abs;
  using std::sqrt;
  if (p == Real(0)) throw DegenerateBasis("eigensystem: rotating pair collapses at p = 0");
  if (!(abs(p) < Real(1))) throw InvalidArgument("eigensystem: |p| must be below 1");
  const Real one(1);
  const Real two_thirds = Real(2) / Real(3);
  const Real s = sqrt(one - p * p);
  return {{two_thirds / (one - p), two_thirds / (one + p), one},
          {two_thirds * s / (one - p), two_thirds * s / (one + p), one / s},
          {two_thirds * p / (one - p), -two_thirds * p / (one + p), Real(0)}};
}

template <class Real>
Vec3<Real> mat_vec(const Mat3<Real>& m, const Vec3<Real>& x) {
  Vec3<Real> y{Real(0), Real(0), Real(0)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) y[i] += m[i][j] * x[j];
  }
  return y;
}

/// Central-difference Jacobian of a map R^d -> R^d given as a callable on XiVector.
template <class Real, class Map>
std::vector<std::vector<Real>> numeric_jacobian(const Map& map, const XiVector<Real>& x, const Real& eps) {
  using std::abs;
  const std::size_t d = x.size();
  std::vector<std::vector<Real>> jac(d, std::vector<Real>(d, Real(0)));
  for (std::size_t j = 0; j < d; ++j) {
    const Real h = eps * (abs(x[j]) > Real(1) ? abs(x[j]) : Real(1));
    XiVector<Real> up = x;
    XiVector<Real> dn = x;
    up[j] += h;
    dn[j] -= h;
    const auto fu = map(up);
    const auto fd = map(dn);
    for (std::size_t i = 0; i < d; ++i) jac[i][j] = (fu[i] - fd[i]) / (Real(2) * h);
  }
  return jac;
}

/// Eigenvalues of a small real matrix, computed in double.
std::vector<std::complex<double>> eigenvalues(const std::vector<std::vector<double>>& m);

template <class Real>
std::vector<std::complex<double>> eigenvalues(const Mat3<Real>& m) {
  std::vector<std::vector<double>> d(3, std::vector<double>(3));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) d[i][j] = to_double(m[i][j]);
  }
  return eigenvalues(d);
}

// ---------------------------------------------------------------------------
// Floating fixed points of the exact quartic recursion

template <class Real>
struct FloatingApproxRoot {
  XiVector<Real> xi;
  Real d;  // d_a at the root
};

/// All real solutions of the self-consistent system xi(n-2) = xi(n) = F_n(xi),
/// sorted by decreasing xi_1. Reduces to a quartic in d_a:
/// (d - c - 1) d (d + phi3)^2 + phi2 (d + phi3)^2 + phi1 d^2 = 0, c = (n-E)/(g phi).
template <class Real>
std::vector<FloatingApproxRoot<Real>> floating_fp_approx_all(int n, const Real& g, const Real& E);

/// The solution with the larger components (largest xi_1). Throws NoRealRoot.
template <class Real>
XiVector<Real> floating_fp_approx(int n, const Real& g, const Real& E) {
  const auto roots = floating_fp_approx_all(n, g, E);
  if (roots.empty()) {
    throw NoRealRoot("floating_fp_approx: no real solution at n = " + std::to_string(n));
  }
  return roots.front().xi;
}

/// Real roots of a real polynomial (coefficients in increasing degree), via the
/// companion matrix in double.
std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs, double imag_tolerance = 1e-9);

template <class Real>
std::vector<FloatingApproxRoot<Real>> floating_fp_approx_all(int n, const Real& g, const Real& E) {
  using std::abs;
  if (n < kExactQuarticFloor) throw InvalidArgument("floating_fp_approx: n must be at least 6");
  if (!(g > Real(0))) throw InvalidArgument("floating_fp_approx: g must be positive");
  const auto ph = phi_functions<Real>(n);
  const Real c = (Real(n) - E) / (g * ph.phi);
  const Real& f1 = ph.phi1;
  const Real& f2 = ph.phi2;
  const Real& f3 = ph.phi3;
  // expanded coefficients of the quartic, increasing degree
  const Real e = -c - Real(1);
  std::array<Real, 5> poly{f2 * f3 * f3,
                           e * f3 * f3 + Real(2) * f2 * f3,
                           Real(2) * e * f3 + f3 * f3 + f2 + f1,
                           e + Real(2) * f3,
                           Real(1)};
  auto eval = [&](const Real& x, Real& deriv) {
    Real v = poly[4];
    deriv = Real(0);
    for (int i = 3; i >= 0; --i) {
      deriv = deriv * x + v;
      v = v * x + poly[i];
    }
    return v;
  };
  std::vector<double> dcoef;
  for (const auto& q : poly) dcoef.push_back(to_double(q));
  std::vector<FloatingApproxRoot<Real>> out;
  for (double guess : real_polynomial_roots(dcoef)) {
    Real d(guess);
    for (int it = 0; it < 100; ++it) {
      Real deriv;
      const Real v = eval(d, deriv);
      if (deriv == Real(0)) break;
      const Real step = v / deriv;
      d -= step;
      if (abs(step) <= machine_epsilon<Real>() * (abs(d) + Real(1))) break;
    }
    if (d == Real(0) || d + f3 == Real(0)) continue;
    XiVector<Real> xi(ModelKind::Quartic, {d - c, Real(1) - f2 / d, d / (d + f3)});
    bool duplicate = false;
    for (const auto& r : out) {
      if (abs(r.d - d) <= Real(1e-12) * (abs(d) + Real(1))) duplicate = true;
    }
    if (!duplicate) out.push_back({std::move(xi), d});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.xi[0] > b.xi[0]; });
  return out;
}

/// Attractive floating sequence at n: evolve a seed from n_start down with the exact recursion.
template <class Real>
XiVector<Real> floating_fp_numeric(int n, const Real& g, const Real& E, int n_start, const XiVector<Real>& seed) {
  if (n_start < n || (n_start - n) % 2 != 0) {
    throw InvalidArgument("floating_fp_numeric: n_start must be >= n with the same parity");
  }
  if (n < kExactQuarticFloor) throw InvalidArgument("floating_fp_numeric: n must be at least 6");
  XiVector<Real> xi = seed;
  for (int m = n_start; m > n; m -= 2) xi = step_exact_quartic(xi, m, g, E).xi;
  return xi;
}

/// Whole attractive sequence on the grid n_start, n_start-2, ..., n_low, indexed by (n_start - n)/2.
template <class Real>
std::vector<XiVector<Real>> floating_fp_sequence(int n_low, const Real& g, const Real& E, int n_start,
                                                 const XiVector<Real>& seed) {
  if (n_start < n_low || (n_start - n_low) % 2 != 0) {
    throw InvalidArgument("floating_fp_sequence: n_start must be >= n_low with the same parity");
  }
  if (n_low < kExactQuarticFloor) throw InvalidArgument("floating_fp_sequence: n_low must be at least 6");
  std::vector<XiVector<Real>> seq{seed};
  for (int m = n_start; m > n_low; m -= 2) seq.push_back(step_exact_quartic(seq.back(), m, g, E).xi);
  return seq;
}

/// Repulsive floating sequence at n: place the seed at n - 2 depth and run the
/// inverse recursion upward, which contracts onto the repulsive sequence.
template <class Real>
XiVector<Real> repulsive_fp_numeric(int n, const Real& g, const Real& E, int depth, const XiVector<Real>& seed) {
  if (depth < 1) throw InvalidArgument("repulsive_fp_numeric: depth must be positive");
  const int low = n - 2 * depth;
  if (low + 2 < kExactQuarticFloor) {
    throw InvalidArgument("repulsive_fp_numeric: n - 2 depth + 2 must be at least 6");
  }
  XiVector<Real> xi = seed;
  for (int m = low + 2; m <= n; m += 2) xi = step_inverse_quartic(xi, m, g, E);
  return xi;
}

// ---------------------------------------------------------------------------
// Multi-start root search for the large-N maps

enum class Stability { Attractive, Repulsive, Mixed };

std::string to_string(Stability s);

/// Attractive if every |lambda| < 1, repulsive if every |lambda| > 1.
Stability classify(const std::vector<std::complex<double>>& eigenvalues);

struct FixedPointRecord {
  std::vector<double> location;
  std::vector<std::complex<double>> eigenvalues;
  Stability stability = Stability::Mixed;
  double residual = 0.0;  // |F(x) - x|_inf after polishing
  int hits = 0;           // number of starts that converged here
};

struct FixedPointSearch {
  Stepper stepper = Stepper::SexticLargeN;
  int N = 1000;
  double g = 1.0;
  std::vector<std::vector<double>> seeds;  // extra starts besides the lattice
  int lattice_points = 0;                  // per axis; 0 picks 5 (dim <= 6) or 3 (dim 10)
  double lattice_lo = -0.5;
  double lattice_hi = 1.5;
  int max_iterations = 100;
  double dedup_radius = 1e-8;
  double residual_tolerance = 1e-10;
};

struct FixedPointCensus {
  std::vector<FixedPointRecord> roots;  // sorted by stability, then location
  int starts = 0;
  int converged = 0;  // starts whose double-precision Newton converged
  int rejected = 0;   // converged starts that failed polishing or the residual bound
};

/// Parallel search (OpenMP over starts).
FixedPointCensus find_numeric(const FixedPointSearch& search);
/// Same search on one thread; kept as the reference for the parallel version.
FixedPointCensus find_numeric_serial(const FixedPointSearch& search);

/// Every start the search will use, lattice first.
std::vector<std::vector<double>> search_starts(const FixedPointSearch& search);

}  // namespace spiralrg

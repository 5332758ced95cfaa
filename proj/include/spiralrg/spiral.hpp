#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>

#include "spiralrg/errors.hpp"
#include "spiralrg/fixedpoints.hpp"
#include "spiralrg/precision.hpp"
#include "spiralrg/rgt.hpp"

namespace spiralrg {

/// Coordinates of a displacement in the basis {v, v1, v2}.
template <class Real>
struct Coordinates {
  Real alpha;
  Real beta;
  Real gamma;
};

/// Expansion coefficients of d in {v, v1, v2} at parameter p. Negative p gives
/// the basis of the repulsive point.
template <class Real>
Coordinates<Real> decompose(const Vec3<Real>& d, const Real& p) {
  using std::sqrt;
  if (p == Real(0)) throw DegenerateBasis("decompose: coordinates diverge at p = 0");
  const Real one(1);
  const Real p2 = p * p;
  const Real mix = (one - p) * d[0] + (one + p) * d[1];
  return {Real(3) / (Real(4) * p2) * mix - (one - p2) / p2 * d[2],
          sqrt(one - p2) / p2 * (d[2] - Real(3) / Real(4) * mix),
          Real(3) / (Real(4) * p) * ((one - p) * d[0] - (one + p) * d[1])};
}

template <class Real>
Vec3<Real> reconstruct(const Coordinates<Real>& c, const Real& p) {
  const auto b = eigensystem(p);
  Vec3<Real> out;
  for (int i = 0; i < 3; ++i) out[i] = c.alpha * b.v[i] + c.beta * b.v1[i] + c.gamma * b.v2[i];
  return out;
}

template <class Real>
Vec3<Real> to_vec3(const XiVector<Real>& xi) {
  if (xi.size() != 3) throw InvalidArgument("expected a quartic xi");
  return {xi[0], xi[1], xi[2]};
}

template <class Real>
struct LocalConstants {
  Real p;  // p_n, from 1/a_n = 4gn
  Real r;  // r_n = (1 - p_n)/(1 + p_n)
};

template <class Real>
LocalConstants<Real> local_constants(int n, const Real& g) {
  if (n <= 0) throw InvalidArgument("local_constants: n must be positive");
  if (!(g > Real(0))) throw InvalidArgument("local_constants: g must be positive");
  const Real p = p_from_gN(Real(g) * Real(n));
  return {p, (Real(1) - p) / (Real(1) + p)};
}

/// R(N,k) = r_{N-2} r_{N-4} ... r_{N-2k}, for k = 0..steps.
template <class Real>
std::vector<Real> cumulative_factors(int N, const Real& g, int steps) {
  std::vector<Real> out{Real(1)};
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 1; k <= steps; ++k) out.push_back(out.back() * local_constants(N - 2 * k, g).r);
  return out;
}

/// The attractive floating sequence on an even-spaced grid, n_top down to n_low.
template <class Real>
class FloatingReference {
 public:
  FloatingReference(int n_low, const Real& g, const Real& E, int n_top, const XiVector<Real>& seed)
      : n_top_(n_top), seq_(floating_fp_sequence(n_low, g, E, n_top, seed)) {}

  int top() const noexcept { return n_top_; }
  int bottom() const noexcept { return n_top_ - 2 * (static_cast<int>(seq_.size()) - 1); }

  const XiVector<Real>& at(int n) const {
    if (n > n_top_ || n < bottom() || (n_top_ - n) % 2 != 0) {
      throw InvalidArgument("FloatingReference: cutoff " + std::to_string(n) + " not on the reference grid");
    }
    return seq_[static_cast<std::size_t>((n_top_ - n) / 2)];
  }

 private:
  int n_top_;
  std::vector<XiVector<Real>> seq_;
};

template <class Real>
using Pair = std::array<Real, 2>;

template <class Real>
struct SpiralFrame {
  int k = 0;
  int n = 0;
  Vec3<Real> dxi;                // xi(n) - xi+(n)
  Coordinates<Real> fixed;       // basis at p of the initial cutoff
  Coordinates<Real> floating;    // basis at p_n (tilde coordinates)
  Pair<Real> fig1;               // r^-k (beta, gamma)
  Pair<Real> scaling1;           // R(N,k)^-1 (beta, gamma)
  Pair<Real> scaling2;           // r^-k (beta~, gamma~)
  Pair<Real> scaling3;           // R(N,k)^-1 (beta~, gamma~)
  Real r_n;
  Real R;
};

struct FrameWindow {
  int k_min = 0;
  int k_max = -1;  // -1 keeps every frame
};

/// Spiral coordinates of an exact quartic trace relative to a floating reference.
/// Throws PrecisionInsufficient when a residual is within 100 ulp of the state,
/// where the coordinates would be rounding noise.
template <class Real>
std::vector<SpiralFrame<Real>> build_frames(const FlowTrace<Real>& trace, const FloatingReference<Real>& reference,
                                            const Real& g, FrameWindow window = {}) {
  using std::abs;
  using std::pow;
  if (trace.params.stepper != Stepper::ExactQuartic) {
    throw InvalidArgument("build_frames: needs an exact quartic trace");
  }
  if (trace.frames.empty()) return {};
  const int N = trace.frames.front().n;
  const int last_k = trace.frames.back().k;
  const int k_max = window.k_max < 0 ? last_k : std::min(window.k_max, last_k);
  const auto R = cumulative_factors(N, g, last_k);
  const auto base = local_constants(N, g);
  const Real floor = Real(100) * machine_epsilon<Real>();

  std::vector<SpiralFrame<Real>> frames;
  for (const auto& f : trace.frames) {
    if (f.k < window.k_min || f.k > k_max) continue;
    const auto& ref = reference.at(f.n);
    SpiralFrame<Real> s;
    s.k = f.k;
    s.n = f.n;
    Real size(0);
    Real scale(0);
    for (int i = 0; i < 3; ++i) {
      s.dxi[i] = f.xi[i] - ref[i];
      size = std::max(size, Real(abs(s.dxi[i])));
      scale = std::max(scale, Real(abs(ref[i])));
    }
    if (size < floor * scale) {
      throw PrecisionInsufficient("build_frames: residual at k = " + std::to_string(f.k) + " is below 100 ulp of " +
                                  std::to_string(mantissa_bits<Real>()) + "-bit precision");
    }
    const auto local = local_constants(f.n, g);
    s.fixed = decompose(s.dxi, base.p);
    s.floating = decompose(s.dxi, local.p);
    const Real rk = pow(base.r, -f.k);
    s.R = R[static_cast<std::size_t>(f.k)];
    s.r_n = local.r;
    s.fig1 = {rk * s.fixed.beta, rk * s.fixed.gamma};
    s.scaling1 = {s.fixed.beta / s.R, s.fixed.gamma / s.R};
    s.scaling2 = {rk * s.floating.beta, rk * s.floating.gamma};
    s.scaling3 = {s.floating.beta / s.R, s.floating.gamma / s.R};
    frames.push_back(std::move(s));
  }
  return frames;
}

template <class Real>
Real radius(const Pair<Real>& x) {
  using std::sqrt;
  return sqrt(x[0] * x[0] + x[1] * x[1]);
}

/// std/mean of a sample (population standard deviation).
double dispersion(const std::vector<double>& values);

/// True when the sequence is non-decreasing or non-increasing.
bool is_monotone(const std::vector<double>& values);

/// Per-step clockwise rotation angle between consecutive points, in (-pi, pi].
template <class Real>
std::vector<double> rotation_angles(const std::vector<Pair<Real>>& points) {
  using std::atan2;
  if (points.size() < 3) throw InvalidArgument("rotation_angles: need at least 3 points");
  const double pi = boost::math::constants::pi<double>();
  std::vector<double> out;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = to_double(atan2(points[i][1], points[i][0]));
    const double b = to_double(atan2(points[i + 1][1], points[i + 1][0]));
    double d = a - b;
    while (d > pi) d -= 2 * pi;
    while (d <= -pi) d += 2 * pi;
    out.push_back(d);
  }
  return out;
}

/// f = (xi - xi-) . (xi+ - xi-) / |xi+ - xi-|^2.
template <class Real>
Real projection(const XiVector<Real>& xi, const XiVector<Real>& plus, const XiVector<Real>& minus) {
  Real num(0);
  Real den(0);
  for (std::size_t i = 0; i < xi.size(); ++i) {
    const Real u = plus[i] - minus[i];
    num += (xi[i] - minus[i]) * u;
    den += u * u;
  }
  if (den == Real(0)) throw DegenerateBasis("projection: xi+ and xi- coincide");
  return num / den;
}

template <class Real>
std::vector<Real> projection_f(const FlowTrace<Real>& trace, const XiVector<Real>& plus, const XiVector<Real>& minus) {
  std::vector<Real> out;
  out.reserve(trace.frames.size());
  for (const auto& f : trace.frames) out.push_back(projection(f.xi, plus, minus));
  return out;
}

/// Floating variant: per-frame references aligned with trace.frames.
template <class Real>
std::vector<Real> projection_f(const FlowTrace<Real>& trace, const std::vector<XiVector<Real>>& plus,
                               const std::vector<XiVector<Real>>& minus) {
  if (plus.size() != trace.frames.size() || minus.size() != trace.frames.size()) {
    throw InvalidArgument("projection_f: references must align with the trace");
  }
  std::vector<Real> out;
  out.reserve(trace.frames.size());
  for (std::size_t i = 0; i < trace.frames.size(); ++i) out.push_back(projection(trace.frames[i].xi, plus[i], minus[i]));
  return out;
}

/// First index from which |f - 1| < tol holds to the end, or -1.
int settled_from(const std::vector<double>& f, double tol);
/// Longest run of consecutive indices with |f - 1| < tol.
int longest_run_near_one(const std::vector<double>& f, double tol);

// ---------------------------------------------------------------------------
// Cone laws

enum class ConeVariant { Approximate, Exact };
enum class TrajectoryClass { Converges, JumpThenConverges, ConeTrapped };

std::string to_string(TrajectoryClass c);

/// h[v] = v1 v2 - c v3^2 with c = 4/9 (approximate) or phi1(n) (exact).
template <class Real>
Real cone_h(const Vec3<Real>& v, const Real& coefficient) {
  return v[0] * v[1] - coefficient * v[2] * v[2];
}

template <class Real>
Real cone_coefficient(ConeVariant variant, int n) {
  if (variant == ConeVariant::Approximate) return Real(4) / Real(9);
  return phi_functions<Real>(n).phi1;
}

struct ConeReport {
  std::vector<double> h;                  // h[xi_A - xi_B] per frame
  std::vector<double> h_scaled;           // h / (|v1 v2| + c v3^2), in [-1, 1]
  std::vector<int> sign_changes;          // k where h turns from negative to positive at k+1
  bool sign_change_needs_negative_d = true;  // every sign change happened with d_A(k) < 0
  std::vector<double> law_error;          // per step, relative residual of the conservation law
  double max_law_error = 0.0;
  TrajectoryClass classification = TrajectoryClass::Converges;
};

/// Evaluates the cone law between a trajectory A and a reference trajectory B
/// (the repulsive point or sequence) aligned frame by frame. One step maps
/// h[Delta] to h'[Delta'] with h' dA dB = h / 36 (approximate) or phi2(n) h (exact).
template <class Real>
ConeReport cone_classify(const FlowTrace<Real>& a, const std::vector<XiVector<Real>>& b, ConeVariant variant,
                         double trap_tolerance = 1e-30) {
  using std::abs;
  const bool approx = variant == ConeVariant::Approximate;
  if (approx != (a.params.stepper == Stepper::ApproxQuartic) ||
      (!approx && a.params.stepper != Stepper::ExactQuartic)) {
    throw InvalidArgument("cone_classify: stepper and cone variant do not match");
  }
  if (b.size() != a.frames.size()) throw InvalidArgument("cone_classify: reference must align with the trace");
  const auto map = make_map<Real>(a.params);
  ConeReport rep;
  std::vector<Real> hs;
  bool trapped = true;
  for (std::size_t i = 0; i < a.frames.size(); ++i) {
    const int n = a.frames[i].n;
    const Real c = approx ? Real(4) / Real(9) : cone_coefficient<Real>(variant, n);
    Vec3<Real> v;
    for (int j = 0; j < 3; ++j) v[j] = a.frames[i].xi[j] - b[i][j];
    const Real h = cone_h(v, c);
    const Real q = abs(v[0] * v[1]) + c * v[2] * v[2];
    const Real scaled = q == Real(0) ? Real(0) : h / q;
    hs.push_back(h);
    rep.h.push_back(to_double(h));
    rep.h_scaled.push_back(to_double(scaled));
    if (abs(scaled) > Real(trap_tolerance)) trapped = false;
  }
  for (std::size_t i = 0; i + 1 < a.frames.size(); ++i) {
    const int n = a.frames[i].n;
    const Real dA = a.frames[i].denominator;
    const Real dB = map.denominator(b[i], n);
    const Real factor = approx ? Real(1) / Real(36) : phi_functions<Real>(n).phi2;
    const Real lhs = hs[i + 1] * dA * dB;
    const Real rhs = factor * hs[i];
    // normalize by the size of the terms that make up h so that h near 0 does not blow up the error
    const int n1 = a.frames[i + 1].n;
    const Real c1 = approx ? Real(4) / Real(9) : cone_coefficient<Real>(variant, n1);
    Vec3<Real> v1;
    for (int j = 0; j < 3; ++j) v1[j] = a.frames[i + 1].xi[j] - b[i + 1][j];
    const Real q1 = (abs(v1[0] * v1[1]) + c1 * v1[2] * v1[2]) * abs(dA * dB);
    const Real err = q1 == Real(0) ? abs(lhs - rhs) : abs(lhs - rhs) / q1;
    rep.law_error.push_back(to_double(err));
    rep.max_law_error = std::max(rep.max_law_error, to_double(err));
    if (hs[i] < Real(0) && hs[i + 1] > Real(0)) {
      rep.sign_changes.push_back(a.frames[i].k);
      if (!(dA < Real(0))) rep.sign_change_needs_negative_d = false;
    }
  }
  if (trapped) {
    rep.classification = TrajectoryClass::ConeTrapped;
  } else if (!rep.sign_changes.empty()) {
    rep.classification = TrajectoryClass::JumpThenConverges;
  } else {
    rep.classification = TrajectoryClass::Converges;
  }
  return rep;
}

}  // namespace spiralrg

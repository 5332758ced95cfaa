#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "spiralrg/errors.hpp"
#include "spiralrg/hamiltonian.hpp"
#include "spiralrg/precision.hpp"
#include "spiralrg/xi.hpp"

namespace spiralrg {

/// Rational coefficients of the exact quartic recursion at cutoff n.
template <class Real>
struct PhiValues {
  Real phi1;
  Real phi2;
  Real phi3;
  Real phi;
};

/// phi(n) = 6n^2 + 6n + 3 = <n|x^4|n>.
template <class Real>
Real phi(int n) {
  const Real x(n);
  return Real(6) * x * x + Real(6) * x + Real(3);
}

template <class Real>
PhiValues<Real> phi_functions(int n) {
  if (n <= 3) throw InvalidArgument("phi_functions: n must be at least 4, got " + std::to_string(n));
  const Real x(n);
  const Real p = phi<Real>(n);
  const Real t = Real(4) * x - Real(2);
  PhiValues<Real> out;
  out.phi = p;
  out.phi1 = x * (x - 1) * t * t / ((Real(6) * x * x - Real(18) * x + Real(15)) * p);
  out.phi2 = x * (x - 1) * (x - 2) * (x - 3) / ((Real(6) * x * x - Real(42) * x + Real(75)) * p);
  out.phi3 = x * (x - 1) * t / ((Real(4) * x - Real(10)) * p);
  return out;
}

template <class Real>
struct StepResult {
  XiVector<Real> xi;  // state after the step
  Real denominator;   // denominator evaluated on the input state
};

/// Lowest cutoff the exact quartic recursion is stepped from.
constexpr int kExactQuarticFloor = 6;

template <class Real>
Real exact_quartic_denominator(const XiVector<Real>& xi, int n, const Real& g, const Real& E) {
  return xi[0] + (Real(n) - E) / (g * phi<Real>(n));
}

/// Exact quartic RGT, n -> n-2.
template <class Real>
StepResult<Real> step_exact_quartic(const XiVector<Real>& xi, int n, const Real& g, const Real& E) {
  if (xi.kind() != ModelKind::Quartic) throw InvalidArgument("step_exact_quartic: needs a quartic xi");
  if (n < kExactQuarticFloor) {
    throw InvalidArgument("step_exact_quartic: n must be at least 6, got " + std::to_string(n));
  }
  const auto c = phi_functions<Real>(n);
  const Real d = xi[0] + (Real(n) - E) / (g * c.phi);
  XiVector<Real> out(ModelKind::Quartic, {xi[1] - c.phi1 * xi[2] * xi[2] / d, Real(1) - c.phi2 / d,
                                          Real(1) - c.phi3 * xi[2] / d});
  return {std::move(out), d};
}

/// Large-n quartic RGT; depends on the cutoff only through gN.
template <class Real>
StepResult<Real> step_approx_quartic(const XiVector<Real>& xi, const Real& gN) {
  if (xi.kind() != ModelKind::Quartic) throw InvalidArgument("step_approx_quartic: needs a quartic xi");
  if (!(gN > Real(0))) throw InvalidArgument("step_approx_quartic: gN must be positive");
  const Real d = xi[0] + Real(1) / (Real(6) * gN);
  XiVector<Real> out(ModelKind::Quartic, {xi[1] - Real(4) * xi[2] * xi[2] / (Real(9) * d),
                                          Real(1) - Real(1) / (Real(36) * d), Real(1) - xi[2] / (Real(6) * d)});
  return {std::move(out), d};
}

/// Algebraic inverse of step_exact_quartic: given xi(n-2), returns xi(n).
template <class Real>
XiVector<Real> step_inverse_quartic(const XiVector<Real>& next, int n, const Real& g, const Real& E) {
  if (next.kind() != ModelKind::Quartic) throw InvalidArgument("step_inverse_quartic: needs a quartic xi");
  const auto c = phi_functions<Real>(n);
  const Real one_minus = Real(1) - next[1];
  if (one_minus == Real(0)) {
    throw NonInvertible("step_inverse_quartic: xi_2(n-2) = 1 at n = " + std::to_string(n));
  }
  const Real u = Real(1) - next[2];
  return XiVector<Real>(ModelKind::Quartic,
                        {-(Real(n) - E) / (g * c.phi) + c.phi2 / one_minus,
                         next[0] + c.phi1 * c.phi2 / (c.phi3 * c.phi3) * u * u / one_minus,
                         c.phi2 / c.phi3 * u / one_minus});
}

/// Large-N sextic RGT (6 components), n -> n-2, O(1/N^3) dropped.
template <class Real>
StepResult<Real> step_sextic_largeN(const XiVector<Real>& xi, int N, const Real& g) {
  if (xi.kind() != ModelKind::Sextic) throw InvalidArgument("step_sextic_largeN: needs a sextic xi");
  if (N <= 0) throw InvalidArgument("step_sextic_largeN: N must be positive");
  const Real n2 = Real(N) * Real(N);
  const Real d = xi[0] + Real(1) / (Real(20) * g * n2);
  const Real c1 = Real(9) / Real(16) + Real(63) / (Real(64) * n2);
  const Real c2 = Real(9) / Real(100) + Real(63) / (Real(100) * n2);
  const Real c3 = Real(1) / Real(400) + Real(63) / (Real(1600) * n2);
  const Real c4 = Real(3) / Real(10) + Real(21) / (Real(20) * n2);
  const Real c5 = Real(1) / Real(8) + Real(21) / (Real(32) * n2);
  const Real c6 = Real(1) / Real(50) + Real(21) / (Real(100) * n2);
  XiVector<Real> out(ModelKind::Sextic, {xi[1] - c1 * xi[3] * xi[3] / d, xi[2] - c2 * xi[4] * xi[4] / d,
                                         Real(1) - c3 / d, xi[5] - c4 * xi[3] * xi[4] / d,
                                         Real(1) - c5 * xi[3] / d, Real(1) - c6 * xi[4] / d});
  return {std::move(out), d};
}

/// Large-N broken-symmetry RGT (10 components), n -> n-1, O(1/N^2) dropped.
template <class Real>
StepResult<Real> step_ssb_largeN(const XiVector<Real>& xi, int N, const Real& g) {
  if (xi.kind() != ModelKind::SSB) throw InvalidArgument("step_ssb_largeN: needs an ssb xi");
  if (N <= 0) throw InvalidArgument("step_ssb_largeN: N must be positive");
  const Real n(N);
  const Real g2n = g * g * n;
  const Real d = xi[0] + Real(1) / (Real(6) * g2n);
  XiVector<Real> out(ModelKind::SSB,
                     {xi[1] - xi[4] * xi[4] / (Real(4) * g2n * d),
                      xi[2] - Real(4) / Real(9) * xi[5] * xi[5] / d,
                      xi[3] - xi[6] * xi[6] / (Real(36) * g2n * d),
                      Real(1) - Real(1) / (Real(36) * d),
                      xi[7] - (Real(2) / Real(3) - Real(1) / (Real(3) * n)) * xi[4] * xi[5] / d,
                      xi[8] - xi[4] * xi[6] / (Real(8) * g2n * d),
                      Real(1) - (Real(1) / Real(2) - Real(1) / (Real(2) * n)) * xi[4] / d,
                      xi[9] - (Real(2) / Real(9) - Real(1) / (Real(9) * n)) * xi[5] * xi[6] / d,
                      Real(1) - xi[5] / (Real(6) * d),
                      Real(1) - (Real(1) / Real(18) - Real(1) / (Real(18) * n)) * xi[6] / d});
  return {std::move(out), d};
}

// ---------------------------------------------------------------------------
// Flow driver

enum class Stepper { ExactQuartic, ApproxQuartic, SexticLargeN, SsbLargeN };

std::string to_string(Stepper stepper);
Stepper parse_stepper(const std::string& name);
ModelKind stepper_model(Stepper stepper);
int stepper_stride(Stepper stepper);
/// True when the map does not depend on the floating cutoff.
bool stepper_is_autonomous(Stepper stepper);

struct FlowParams {
  double g = 1.0;
  double E = 0.0;
  int N = 1000;
  int n_final = 8;
  int precision_bits = kDefaultPrecisionBits;
  Stepper stepper = Stepper::ExactQuartic;
  double denominator_tolerance = 1e-12;
};

/// Lists every violated constraint; empty when valid.
std::vector<std::string> check(const FlowParams& params);
void validate(const FlowParams& params);

enum class EventKind {
  DenominatorSignChange,  // denominator turned negative at this step
  PivotJump,              // |denominator| below tolerance
  ValidityFloor,          // flow stopped above n_final (exact recursion floor)
};

std::string to_string(EventKind kind);

struct FlowEvent {
  int k = 0;
  EventKind kind = EventKind::DenominatorSignChange;
};

template <class Real>
struct FlowFrame {
  int k = 0;
  int n = 0;
  XiVector<Real> xi;
  Real denominator;  // evaluated on xi at this frame
};

template <class Real>
struct FlowTrace {
  FlowParams params;
  std::vector<FlowFrame<Real>> frames;
  std::vector<FlowEvent> events;

  bool has_event(int k, EventKind kind) const {
    for (const auto& e : events) {
      if (e.k == k && e.kind == kind) return true;
    }
    return false;
  }
};

/// One stepper bound to its parameters.
template <class Real>
class RgMap {
 public:
  RgMap(Stepper stepper, const Real& g, const Real& E, int N) : stepper_(stepper), g_(g), E_(E), N_(N) {}

  Stepper stepper() const noexcept { return stepper_; }
  ModelKind model() const noexcept { return stepper_model(stepper_); }
  int stride() const noexcept { return stepper_stride(stepper_); }
  const Real& g() const noexcept { return g_; }
  int initial_cutoff() const noexcept { return N_; }
  /// g * N, the only parameter of the approximate quartic map.
  Real gN() const { return g_ * Real(N_); }

  Real denominator(const XiVector<Real>& xi, int n) const {
    switch (stepper_) {
      case Stepper::ExactQuartic:
        return exact_quartic_denominator(xi, n, g_, E_);
      case Stepper::ApproxQuartic:
        return xi[0] + Real(1) / (Real(6) * gN());
      case Stepper::SexticLargeN:
        return xi[0] + Real(1) / (Real(20) * g_ * Real(N_) * Real(N_));
      case Stepper::SsbLargeN:
        return xi[0] + Real(1) / (Real(6) * g_ * g_ * Real(N_));
    }
    return Real(0);
  }

  StepResult<Real> step(const XiVector<Real>& xi, int n) const {
    switch (stepper_) {
      case Stepper::ExactQuartic:
        return step_exact_quartic(xi, n, g_, E_);
      case Stepper::ApproxQuartic:
        return step_approx_quartic(xi, gN());
      case Stepper::SexticLargeN:
        return step_sextic_largeN(xi, N_, g_);
      case Stepper::SsbLargeN:
        return step_ssb_largeN(xi, N_, g_);
    }
    throw InvalidArgument("RgMap: unknown stepper");
  }

  /// The map as a function of xi only (autonomous steppers).
  XiVector<Real> operator()(const XiVector<Real>& xi) const { return step(xi, N_).xi; }

 private:
  Stepper stepper_;
  Real g_;
  Real E_;
  int N_;
};

template <class Real>
RgMap<Real> make_map(const FlowParams& params) {
  return RgMap<Real>(params.stepper, Real(params.g), Real(params.E), params.N);
}

/// Iterates the stepper from N down to n_final, recording every state and
/// denominator events. Sign changes are data: the flow never aborts on them.
template <class Real>
FlowTrace<Real> run_flow(const FlowParams& params, const XiVector<Real>& xi_start) {
  validate(params);
  if (xi_start.kind() != stepper_model(params.stepper)) {
    throw InvalidArgument("run_flow: start vector is " + to_string(xi_start.kind()) + ", stepper needs " +
                          to_string(stepper_model(params.stepper)));
  }
  using std::abs;
  const auto map = make_map<Real>(params);
  const int stride = map.stride();
  FlowTrace<Real> trace;
  trace.params = params;

  int n = params.N;
  XiVector<Real> xi = xi_start;
  Real prev_d(0);
  bool have_prev = false;
  for (int k = 0;; ++k) {
    const Real d = map.denominator(xi, n);
    trace.frames.push_back({k, n, xi, d});
    if (abs(d) < Real(params.denominator_tolerance)) trace.events.push_back({k, EventKind::PivotJump});
    if (d < Real(0) && (!have_prev || prev_d >= Real(0))) {
      trace.events.push_back({k, EventKind::DenominatorSignChange});
    }
    prev_d = d;
    have_prev = true;
    if (n <= params.n_final) break;
    if (params.stepper == Stepper::ExactQuartic && n - stride < kExactQuarticFloor) {
      trace.events.push_back({k, EventKind::ValidityFloor});
      break;
    }
    xi = map.step(xi, n).xi;
    n -= stride;
  }
  return trace;
}

}  // namespace spiralrg

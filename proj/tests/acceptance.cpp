// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "spiralrg/decimation.hpp"
#include "spiralrg/eigensolver.hpp"
#include "spiralrg/figures.hpp"
#include "spiralrg/fixedpoints.hpp"
#include "spiralrg/rgt.hpp"
#include "spiralrg/spiral.hpp"

using namespace spiralrg;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

template <class Real>
double max_rel_err(const XiVector<Real>& a, const XiVector<Real>& b) {
  double worst = 0.0;
  using std::abs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, to_double(abs(a[i] - b[i])) / std::max(to_double(abs(b[i])), 1e-300));
  }
  return worst;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

// ---------------------------------------------------------------------------

Outcome ac1_oracle() {
  double worst = 0.0;
  int steps = 0;
  for (int N : {20, 40, 60}) {
    for (double g : {0.1, 1.0, 10.0}) {
      for (double E : {0.0, 0.5}) {
        const auto m = build_matrix<double>({ModelKind::Quartic, g}, N);
        const auto frames = decimation_trace(m, {E, kExactQuarticFloor, Parity::Even}, ModelKind::Quartic);
        XiVector<double> xi(ModelKind::Quartic);
        for (std::size_t k = 1; k < frames.size(); ++k) {
          xi = step_exact_quartic(xi, frames[k - 1].cutoff, g, E).xi;
          worst = std::max(worst, max_rel_err(xi, frames[k].xi));
          ++steps;
        }
      }
    }
  }
  return {worst < 1e-10, "max rel err " + fmt(worst) + " over " + std::to_string(steps) + " steps"};
}

Outcome ac2_spectral() {
  const auto r = verify_renormalization(10.0, 0.0, 200, 10);
  const bool ok = r.err_renorm <= 0.005 && r.err_plain >= 50.0 * r.err_renorm;
  return {ok, "renormalized " + fmt(100 * r.err_renorm) + "%, plain " + fmt(100 * r.err_plain) + "%, ratio " +
                  fmt(r.ratio)};
}

Outcome ac3_fixed_points() {
  double worst = 0.0;
  for (double six_gN : {1e2, 1e3, 1e6}) {
    const double gN = six_gN / 6.0;
    const auto pair = analytic_pair(gN);
    for (const auto* x : {&pair.plus, &pair.minus}) {
      worst = std::max(worst, max_abs_diff(step_approx_quartic(*x, gN).xi, *x));
    }
  }
  double prev = std::numeric_limits<double>::infinity();
  bool shrinking = true;
  for (double six_gN : {1e2, 1e3, 1e6, 1e9}) {
    const auto pair = analytic_pair(six_gN / 6.0);
    const double gap = max_abs_diff(pair.plus, pair.minus);
    shrinking = shrinking && gap < prev;
    prev = gap;
  }
  const auto far = analytic_pair(1e9 / 6.0);
  const XiVector<double> limit(ModelKind::Quartic, {1.0 / 6, 5.0 / 6, 0.5});
  const double off = std::max(max_abs_diff(far.plus, limit), max_abs_diff(far.minus, limit));
  return {worst < 1e-12 && shrinking && off < 1e-2,
          "residual " + fmt(worst) + ", gap decreasing " + (shrinking ? "yes" : "no") + ", distance to limit at 6gN=1e9 " +
              fmt(off)};
}

Outcome ac4_linear_spectrum() {
  double eig_err = 0.0;
  double jac_err = 0.0;
  for (double p : {0.05, 0.2, 0.5}) {
    const double w = 2 * std::asin(p);
    const std::vector<std::complex<double>> expected{1.0, std::polar(1.0, w), std::polar(1.0, -w)};
    auto ev = eigenvalues(spiral_matrix(p));
    // greedy matching of computed to expected eigenvalues
    for (const auto& z : expected) {
      auto it = std::min_element(ev.begin(), ev.end(),
                                 [&](const auto& a, const auto& b) { return std::abs(a - z) < std::abs(b - z); });
      eig_err = std::max(eig_err, std::abs(*it - z));
      ev.erase(it);
    }
    // gN with this p: p^4 + a p^2 = a, a = 1/(4 gN)
    const double a = std::pow(p, 4) / (1 - p * p);
    const double gN = 1.0 / (4 * a);
    const auto pair = analytic_pair(gN);
    auto F = [&](const XiVector<double>& x) { return step_approx_quartic(x, gN).xi; };
    const auto jac = numeric_jacobian<double>(F, pair.plus, 1e-6);
    const auto lin = linearized_map(pair.constants.p);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) jac_err = std::max(jac_err, std::abs(jac[i][j] - lin[i][j]));
    }
  }
  return {eig_err < 1e-10 && jac_err < 1e-6, "eigenvalue err " + fmt(eig_err) + ", jacobian err " + fmt(jac_err)};
}

Outcome ac5_floating() {
  using R = Float128;
  const R g(1);
  const R E(0);
  const XiVector<R> ones(ModelKind::Quartic);
  const auto even = floating_fp_sequence(6, g, E, 1200, ones);
  const auto odd = floating_fp_sequence(7, g, E, 1201, ones);
  double worst_all = 0.0;
  double worst_80 = 0.0;
  for (int n = 6; n <= 200; ++n) {
    const auto& numeric = n % 2 == 0 ? even[(1200 - n) / 2] : odd[(1201 - n) / 2];
    const auto approx = floating_fp_approx(n, g, E);
    const double err = max_rel_err(approx, numeric);
    worst_all = std::max(worst_all, err);
    if (n >= 80) worst_80 = std::max(worst_80, err);
  }
  return {worst_all < 0.05 && worst_80 < 0.01,
          "max deviation " + fmt(100 * worst_all) + "% on [6,200], " + fmt(100 * worst_80) + "% on [80,200]"};
}

Outcome ac6_fig1() {
  const SpiralPreset preset;
  const auto run = run_spiral<Float256>(preset);
  std::vector<double> r_fig1;
  std::vector<double> r_s1;
  std::vector<double> r_s3;
  for (const auto& f : run.frames) {
    r_fig1.push_back(to_double(radius(f.fig1)));
    r_s1.push_back(to_double(radius(f.scaling1)));
    r_s3.push_back(to_double(radius(f.scaling3)));
  }
  const bool count_ok = run.frames.size() == 193 && run.frames.front().k == 8 && run.frames.back().k == 200;
  const bool wobble = !is_monotone(r_fig1);
  const double d1 = dispersion(r_s1);
  const double d3 = dispersion(r_s3);
  return {count_ok && wobble && d3 <= 0.2 * d1,
          std::to_string(run.frames.size()) + " frames, fig1 radii monotone " + (wobble ? "no" : "yes") +
              ", dispersion scaling3/scaling1 = " + fmt(d3) + "/" + fmt(d1) + " = " + fmt(d3 / d1) + " (need <= 0.2)"};
}

Outcome ac7_rotation() {
  double lin_err = 0.0;
  for (double p : {0.05, 0.1, 0.2, 0.5}) {
    const auto G = linearized_map(p);
    Vec3<double> d{1e-3, -2e-3, 5e-4};
    std::vector<Pair<double>> pts;
    for (int k = 0; k < 40; ++k) {
      const auto c = decompose(d, p);
      pts.push_back({c.beta, c.gamma});
      d = mat_vec(G, d);
    }
    for (double angle : rotation_angles(pts)) lin_err = std::max(lin_err, std::abs(angle - 2 * std::asin(p)));
  }

  SpiralPreset preset;
  preset.N = 1200;
  preset.reference_top = 1400;
  preset.k_min = 90;
  preset.k_max = 110;
  const auto run = run_spiral<Float256>(preset);
  std::vector<Pair<Float256>> pts;
  for (const auto& f : run.frames) pts.push_back({f.floating.beta, f.floating.gamma});
  const auto angles = rotation_angles(pts);
  double exact_err = 0.0;
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const double p = to_double(local_constants(run.frames[i].n, Float256(preset.g)).p);
    exact_err = std::max(exact_err, rel_err(angles[i], 2 * std::asin(p)));
  }
  const bool ok = lin_err < 1e-8 && exact_err < 0.02 && angles.size() == 20;
  return {ok, "linearized abs err " + fmt(lin_err) + ", exact flow n=" + std::to_string(run.frames.front().n) + ".." +
                  std::to_string(run.frames.back().n) + " rel err " + fmt(exact_err)};
}

Outcome ac8_fig3() {
  const auto runs = run_projection<Float512>(ProjectionPreset{});
  const auto& black = runs[0];
  const auto& red = runs[1];
  const auto& blue = runs[2];
  const double tol = 1e-3;

  const int black_from = settled_from(black.f, tol);
  const bool black_ok = black_from >= 0;

  int red_events = 0;
  for (const auto& e : red.trace.events) red_events += e.kind == EventKind::DenominatorSignChange;
  const int red_from = settled_from(red.f, tol);
  int red_event_k = -1;
  for (const auto& e : red.trace.events) {
    if (e.kind == EventKind::DenominatorSignChange) red_event_k = e.k;
  }
  const bool red_ok = red_events == 1 && red_from >= 0 && red_event_k < red_from;

  int blue_hits = 0;
  for (double f : blue.f) blue_hits += std::abs(f - 1.0) < tol;
  const bool blue_ok = blue_hits == 0;

  double law = 0.0;
  for (const auto& r : runs) law = std::max(law, r.cone.max_law_error);
  const bool law_ok = law < 1e-10;

  std::ostringstream os;
  os << "black settles from k=" << black_from << "; red sign events " << red_events << " (k=" << red_event_k
     << "), settles from k=" << red_from << "; blue steps with |f-1|<1e-3: " << blue_hits << " of " << blue.f.size()
     << " (longest run " << longest_run_near_one(blue.f, tol) << ", class " << to_string(blue.cone.classification)
     << "); cone law err " << fmt(law);
  return {black_ok && red_ok && blue_ok && law_ok, os.str()};
}

Outcome ac9_inverse() {
  using R = Float128;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  std::uniform_int_distribution<int> cut(4, 500);
  std::uniform_real_distribution<double> lg(-1.0, 1.0);
  double worst = 0.0;
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    XiVector<R> y(ModelKind::Quartic);
    for (std::size_t i = 0; i < 3; ++i) y[i] = R(u(rng));
    const int n = 2 * cut(rng);
    const R g(std::pow(10.0, lg(rng)));
    const R E(u(rng));
    try {
      const auto x = step_inverse_quartic(y, n, g, E);
      worst = std::max(worst, max_rel_err(step_exact_quartic(x, n, g, E).xi, y));
    } catch (const Error&) {
      ++failures;
    }
  }
  const bool roundtrip_ok = worst < 1e-12 && failures == 0;

  // repulsive sequence on n = 1000 .. 800, then a perturbation pushed forward
  using H = Float256;
  const H g(1);
  const H E(0);
  const int top = 1000;
  const int steps = 100;
  const int low = top - 2 * steps;
  std::vector<XiVector<H>> minus(steps + 1);  // minus[k] at n = top - 2k
  XiVector<H> x = repulsive_fp_numeric(low, g, E, 200, XiVector<H>(ModelKind::Quartic, {H("0.2"), H("0.8"), H("0.5")}));
  minus[steps] = x;
  for (int k = steps - 1; k >= 0; --k) {
    x = step_inverse_quartic(x, top - 2 * k, g, E);
    minus[k] = x;
  }
  XiVector<H> state = minus[0];
  for (int c = 0; c < 3; ++c) state[c] += H("1e-40") * H(c + 1);
  double rate_err = 0.0;
  H prev_norm(0);
  for (int k = 0; k <= steps; ++k) {
    const int n = top - 2 * k;
    const auto lc = local_constants(n, g);
    Vec3<H> d;
    for (int i = 0; i < 3; ++i) d[i] = state[i] - minus[k][i];
    // eigen-coordinates of the repelling point: the basis at -p
    const auto c = decompose(d, H(-lc.p));
    const H norm = sqrt(c.alpha * c.alpha + c.beta * c.beta + c.gamma * c.gamma);
    if (k > 0) {
      const auto prev_lc = local_constants(n + 2, g);
      rate_err = std::max(rate_err, rel_err(to_double(norm / prev_norm), to_double(H(1) / prev_lc.r)));
    }
    prev_norm = norm;
    if (k < steps) state = step_exact_quartic(state, n, g, E).xi;
  }
  return {roundtrip_ok && rate_err < 0.05, "roundtrip max rel err " + fmt(worst) + " (" + std::to_string(failures) +
                                               " non-invertible), divergence rate vs 1/r_n rel err " + fmt(rate_err)};
}

Outcome ac10_census() {
  std::ostringstream os;
  bool ok = true;
  for (int N : {1000, 10000}) {
    for (double g : {0.1, 1.0, 10.0}) {
      FixedPointSearch s;
      s.stepper = Stepper::SexticLargeN;
      s.N = N;
      s.g = g;
      const auto census = find_numeric(s);
      int a = 0;
      int r = 0;
      int m = 0;
      for (const auto& root : census.roots) {
        a += root.stability == Stability::Attractive;
        r += root.stability == Stability::Repulsive;
        m += root.stability == Stability::Mixed;
      }
      const bool here = census.roots.size() == 4 && a == 1 && r == 1 && m == 2;
      ok = ok && here;
      os << "(" << N << "," << g << "):" << a << "A" << r << "R" << m << "M ";
    }
  }
  return {ok, os.str()};
}

Outcome ac11_ssb() {
  auto discrepancy = [](int N) {
    const double g = 1.0;
    const auto m = build_matrix<double>({ModelKind::SSB, g}, N);
    const auto frames = decimation_trace(m, {0.0, N - 1, Parity::Both}, ModelKind::SSB);
    const auto rec = step_ssb_largeN(XiVector<double>(ModelKind::SSB), N, g).xi;
    std::vector<double> diffs;
    for (std::size_t i = 0; i < rec.size(); ++i) diffs.push_back(std::abs(rec[i] - frames.back().xi[i]));
    return median(diffs);
  };
  const double d60 = discrepancy(60);
  const double d120 = discrepancy(120);
  return {std::isfinite(d60) && d60 > 0.0 && d120 <= 0.6 * d60,
          "median discrepancy N=60 " + fmt(d60) + ", N=120 " + fmt(d120) + ", ratio " + fmt(d120 / d60)};
}

struct Criterion {
  const char* id;
  const char* name;
  double time_limit;  // seconds, <= 0 for none
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "oracle equivalence", 1.0, ac1_oracle},
      {"AC2", "spectral verification", 5.0, ac2_spectral},
      {"AC3", "analytic fixed points", 0.0, ac3_fixed_points},
      {"AC4", "linearized spectrum", 0.0, ac4_linear_spectrum},
      {"AC5", "floating fixed-point accuracy", 10.0, ac5_floating},
      {"AC6", "fig1 spiral properties", 30.0, ac6_fig1},
      {"AC7", "rotation angle", 0.0, ac7_rotation},
      {"AC8", "fig3 trajectories", 0.0, ac8_fig3},
      {"AC9", "inverse recursion", 0.0, ac9_inverse},
      {"AC10", "sextic fixed-point census", 60.0, ac10_census},
      {"AC11", "ssb recursion vs decimation", 0.0, ac11_ssb},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.time_limit <= 0.0 || secs < c.time_limit;
    const bool pass = out.pass && in_time;
    failed += !pass;
    std::printf("%-4s %s  %s: %s [%.2fs%s]\n", c.id, pass ? "PASS" : "FAIL", c.name, out.detail.c_str(), secs,
                c.time_limit > 0.0 ? (in_time ? " within limit" : " OVER LIMIT") : "");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

#include <cmath>
#include <complex>

#include "doctest.h"
#include "spiralrg/fixedpoints.hpp"

using namespace spiralrg;

TEST_CASE("spiral constants") {
  const auto c = spiral_constants(1000.0 / 6.0);
  CHECK(c.p > 0.0);
  CHECK(c.p < 1.0);
  CHECK(c.p * c.p == doctest::Approx(std::sqrt(c.a + c.a * c.a / 4) - c.a / 2));
  CHECK(c.r == doctest::Approx((1 - c.p) / (1 + c.p)));
  CHECK(c.omega == doctest::Approx(2 * std::asin(c.p)));
  CHECK(c.period * c.omega == doctest::Approx(2 * M_PI));
  const auto far = spiral_constants(1e12);
  CHECK(far.p < 1e-3);
  CHECK(far.r > 0.998);
  CHECK_THROWS_AS(spiral_constants(0.0), InvalidArgument);
}

TEST_CASE("analytic fixed points are fixed") {
  for (const char* gn : {"16.6666666666666666666666666667", "166.666666666666666666666666667", "166666.666666666666666666666667"}) {
    const Float256 gN(gn);
    const auto pair = analytic_pair(gN);
    CHECK(pair.residual < Float256(1e-60));
    CHECK(to_double(pair.plus[2] + pair.minus[2]) == doctest::Approx(1.0).epsilon(1e-15));
  }
  const auto pair = analytic_pair(1000.0 / 6.0);
  CHECK(pair.residual < 1e-13);
}

TEST_CASE("fixed points merge as gN grows") {
  const auto pair = analytic_pair(Float128(1e9) / 6);
  const double expected[] = {1.0 / 6, 5.0 / 6, 0.5};
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(to_double(pair.plus[i]) - expected[i]) < 1e-2);
    CHECK(std::abs(to_double(pair.minus[i]) - expected[i]) < 1e-2);
  }
  CHECK(to_double(max_abs_diff(pair.plus, pair.minus)) < 1e-2);
}

TEST_CASE("G has eigenvalues 1 and exp(+-i omega)") {
  for (double p : {0.05, 0.2, 0.5}) {
    const auto ev = eigenvalues(spiral_matrix(p));
    const double w = 2 * std::asin(p);
    int unit = 0;
    int rot = 0;
    for (const auto& z : ev) {
      if (std::abs(z - std::complex<double>(1, 0)) < 1e-10) ++unit;
      if (std::abs(z - std::polar(1.0, w)) < 1e-10 || std::abs(z - std::polar(1.0, -w)) < 1e-10) ++rot;
    }
    CAPTURE(p);
    CHECK(unit == 1);
    CHECK(rot == 2);
  }
  const auto ev0 = eigenvalues(spiral_matrix(0.0));
  for (const auto& z : ev0) CHECK(std::abs(z - 1.0) < 1e-4);
}

TEST_CASE("finite differences reproduce the linearization at both points") {
  const double gN = 1000.0 / 6.0;
  const auto pair = analytic_pair(gN);
  auto F = [&](const XiVector<double>& x) { return step_approx_quartic(x, gN).xi; };
  const auto jp = numeric_jacobian<double>(F, pair.plus, 1e-6);
  const auto lp = linearized_map(pair.constants.p);
  const auto jm = numeric_jacobian<double>(F, pair.minus, 1e-6);
  const auto lm = linearized_map(-pair.constants.p);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(jp[i][j] == doctest::Approx(lp[i][j]).epsilon(1e-6).scale(1.0));
      CHECK(jm[i][j] == doctest::Approx(lm[i][j]).epsilon(1e-6).scale(1.0));
    }
  }
}

TEST_CASE("eigensystem vectors") {
  const double p = 0.3;
  const auto G = spiral_matrix(p);
  const auto b = eigensystem(p);
  const double w = 2 * std::asin(p);
  const auto gv = mat_vec(G, b.v);
  const auto g1 = mat_vec(G, b.v1);
  const auto g2 = mat_vec(G, b.v2);
  for (int i = 0; i < 3; ++i) {
    CHECK(gv[i] == doctest::Approx(b.v[i]).epsilon(1e-12));
    CHECK(g1[i] == doctest::Approx(std::cos(w) * b.v1[i] - std::sin(w) * b.v2[i]).scale(1.0).epsilon(1e-12));
    CHECK(g2[i] == doctest::Approx(std::sin(w) * b.v1[i] + std::cos(w) * b.v2[i]).scale(1.0).epsilon(1e-12));
  }
  CHECK(b.v2[2] == 0.0);
  const auto small = eigensystem(1e-9);
  CHECK(small.v[0] == doctest::Approx(2.0 / 3));
  CHECK(small.v[1] == doctest::Approx(2.0 / 3));
  CHECK(small.v[2] == 1.0);
  CHECK_THROWS_AS(eigensystem(0.0), DegenerateBasis);
}

TEST_CASE("linearized spectrum at the repulsive point") {
  const auto pair = analytic_pair(50.0);
  const double r = pair.constants.r;
  const auto ev = eigenvalues(linearized_map(-pair.constants.p));
  for (const auto& z : ev) CHECK(std::abs(z) == doctest::Approx(1.0 / r).epsilon(1e-10));
}

TEST_CASE("polynomial roots") {
  // (x-1)(x-2)(x^2+1)
  const auto roots = real_polynomial_roots({2.0, -3.0, 3.0, -3.0, 1.0});
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(1.0));
  CHECK(roots[1] == doctest::Approx(2.0));
}

TEST_CASE("approximate floating fixed point solves its own system") {
  for (int n : {6, 10, 40, 200}) {
    const auto roots = floating_fp_approx_all<Float128>(n, Float128(1), Float128(0));
    REQUIRE(!roots.empty());
    CHECK(roots.size() <= 2);
    const auto& xi = roots.front().xi;
    const auto c = phi_functions<Float128>(n);
    const Float128 d = xi[0] + Float128(n) / c.phi;
    CHECK(to_double(abs(xi[0] - (xi[1] - c.phi1 * xi[2] * xi[2] / d))) < 1e-25);
    CHECK(to_double(abs(xi[1] - (Float128(1) - c.phi2 / d))) < 1e-25);
    CHECK(to_double(abs(xi[2] - (Float128(1) - c.phi3 * xi[2] / d))) < 1e-25);
  }
}

TEST_CASE("approximate floating fixed point tends to the analytic one") {
  const int n = 1000000;
  const auto xa = floating_fp_approx<Float128>(n, Float128(1), Float128(0));
  const auto pair = analytic_pair(Float128(n));
  CHECK(to_double(max_abs_diff(xa, pair.plus)) < 1e-4);
}

TEST_CASE("attractive floating sequence is seed independent") {
  using R = Float256;
  const XiVector<R> a(ModelKind::Quartic);
  const XiVector<R> b(ModelKind::Quartic, {R("0.5"), R("1.2"), R("0.7")});
  const auto xa = floating_fp_numeric<R>(100, R(1), R(0), 1200, a);
  const auto xb = floating_fp_numeric<R>(100, R(1), R(0), 1400, b);
  CHECK(to_double(max_abs_diff(xa, xb)) < 1e-10);
  const auto seq = floating_fp_sequence<R>(96, R(1), R(0), 1200, a);
  CHECK(seq.size() == 553);
  CHECK(to_double(max_abs_diff(seq[550], xa)) == 0.0);
  CHECK_THROWS_AS(floating_fp_numeric<R>(100, R(1), R(0), 1201, a), InvalidArgument);
}

TEST_CASE("repulsive floating sequence is seed independent") {
  using R = Float256;
  const auto a = repulsive_fp_numeric<R>(600, R(1), R(0), 200, XiVector<R>(ModelKind::Quartic, {R("0.2"), R("0.8"), R("0.5")}));
  const auto b = repulsive_fp_numeric<R>(600, R(1), R(0), 200, XiVector<R>(ModelKind::Quartic, {R("0.1"), R("0.3"), R("0.9")}));
  CHECK(to_double(max_abs_diff(a, b)) < 1e-10);
  const auto pair = analytic_pair(R(600));
  CHECK(to_double(max_abs_diff(a, pair.minus)) < 0.05);
}

TEST_CASE("classification by eigenvalue moduli") {
  using C = std::complex<double>;
  CHECK(classify({C(0.5, 0), C(0.1, 0.2)}) == Stability::Attractive);
  CHECK(classify({C(1.5, 0), C(0, 2)}) == Stability::Repulsive);
  CHECK(classify({C(0.5, 0), C(2, 0)}) == Stability::Mixed);
  CHECK(classify({C(1, 0)}) == Stability::Mixed);
}

TEST_CASE("numeric search recovers the analytic quartic pair") {
  FixedPointSearch s;
  s.stepper = Stepper::ApproxQuartic;
  s.N = 1000;
  s.g = 1.0 / 6.0;
  const auto census = find_numeric_serial(s);
  REQUIRE(census.roots.size() == 2);
  const auto pair = analytic_pair(s.g * s.N);
  CHECK(census.roots[0].stability == Stability::Attractive);
  CHECK(census.roots[1].stability == Stability::Repulsive);
  for (int i = 0; i < 3; ++i) {
    CHECK(census.roots[0].location[i] == doctest::Approx(pair.plus[i]).epsilon(1e-10));
    CHECK(census.roots[1].location[i] == doctest::Approx(pair.minus[i]).epsilon(1e-10));
  }
}

TEST_CASE("sextic census and parallel agreement") {
  FixedPointSearch s;
  s.stepper = Stepper::SexticLargeN;
  s.N = 1000;
  s.g = 1.0;
  const auto par = find_numeric(s);
  const auto ser = find_numeric_serial(s);
  REQUIRE(par.roots.size() == 4);
  REQUIRE(ser.roots.size() == par.roots.size());
  int counts[3] = {0, 0, 0};
  for (std::size_t i = 0; i < par.roots.size(); ++i) {
    counts[static_cast<int>(par.roots[i].stability)]++;
    CHECK(par.roots[i].location == ser.roots[i].location);
    CHECK(par.roots[i].residual < 1e-10);
    const auto xi = XiVector<double>(ModelKind::Sextic, par.roots[i].location);
    const auto fx = step_sextic_largeN(xi, s.N, s.g).xi;
    CHECK(max_abs_diff(fx, xi) < 1e-10);
  }
  CHECK(counts[0] == 1);
  CHECK(counts[1] == 1);
  CHECK(counts[2] == 2);
}

TEST_CASE("search rejects cutoff-dependent maps and bad seeds") {
  FixedPointSearch s;
  s.stepper = Stepper::ExactQuartic;
  CHECK_THROWS_AS(find_numeric(s), InvalidArgument);
  s.stepper = Stepper::SexticLargeN;
  s.seeds = {{1.0, 2.0}};
  CHECK_THROWS_AS(find_numeric(s), InvalidArgument);
}

#include <cmath>
#include <sstream>

#include "doctest.h"
#include "spiralrg/hamiltonian.hpp"

using namespace spiralrg;

TEST_CASE("free oscillator diagonal and band layout") {
  const auto m = build_matrix<double>({ModelKind::Quartic, 1.0}, 12);
  CHECK(m.dim() == 13);
  CHECK(m.half_bandwidth() == 4);
  for (int k = 0; k <= 12; ++k) {
    for (int l = 0; l <= 12; ++l) {
      CHECK(m(k, l) == m(l, k));
      if ((k - l) % 2 != 0 || std::abs(k - l) > 4) CHECK(m(k, l) == 0.0);
    }
  }
  CHECK(build_matrix<double>({ModelKind::Sextic, 1.0}, 12).half_bandwidth() == 6);
  CHECK(build_matrix<double>({ModelKind::SSB, 1.0}, 12).half_bandwidth() == 4);
}

TEST_CASE("quartic diagonal interaction equals 6n^2+6n+3") {
  const double g = 0.7;
  const auto m = build_matrix<double>({ModelKind::Quartic, g}, 40);
  for (int n = 0; n <= 36; ++n) {
    CHECK(m(n, n) - n == doctest::Approx(g * (6.0 * n * n + 6.0 * n + 3.0)).epsilon(1e-14));
  }
}

TEST_CASE("individual ladder elements") {
  const auto q = build_matrix<double>({ModelKind::Quartic, 1.0}, 8);
  CHECK(q(4, 0) == doctest::Approx(std::sqrt(24.0)).epsilon(1e-15));
  const auto s = build_matrix<double>({ModelKind::SSB, 2.0}, 8);
  CHECK(s(1, 0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(position_power_element(2, 5, 5) == doctest::Approx(11.0));
}

TEST_CASE("the last rows are not corrupted by truncation") {
  const auto m = position_power_matrix<double>(4, 20);
  CHECK(m(20, 20) == doctest::Approx(6.0 * 400 + 6.0 * 20 + 3.0));
  const auto big = position_power_matrix<double>(4, 30);
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= 20; ++l) CHECK(m(k, l) == big(k, l));
  }
}

TEST_CASE("closed form agrees with the ladder product for k,l <= 60") {
  for (int power : {3, 4, 6}) {
    const auto ladder = detail::position_power<Float128>(power, 60, ElementSource::Ladder);
    const auto closed = detail::position_power<Float128>(power, 60, ElementSource::ClosedForm);
    Float128 worst(0);
    for (int k = 0; k <= 60; ++k) {
      for (int l = 0; l <= 60; ++l) {
        const Float128 a = ladder(k, l);
        const Float128 diff = abs(a - closed(k, l));
        const Float128 scale = a == 0 ? Float128(1) : abs(a);
        if (diff / scale > worst) worst = diff / scale;
      }
    }
    CAPTURE(power);
    CHECK(worst < Float128(1e-30));
  }
}

TEST_CASE("build_matrix with either element source gives the same matrix") {
  for (auto kind : {ModelKind::Quartic, ModelKind::Sextic, ModelKind::SSB}) {
    const auto a = build_matrix<double>({kind, 0.3}, 30, ElementSource::Ladder);
    const auto b = build_matrix<double>({kind, 0.3}, 30, ElementSource::ClosedForm);
    for (int k = 0; k <= 30; ++k) {
      for (int l = 0; l <= 30; ++l) CHECK(a(k, l) == doctest::Approx(b(k, l)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ssb matrix is g x^3 + g^2 x^4 on top of the number operator") {
  const double g = 0.4;
  const auto m = build_matrix<double>({ModelKind::SSB, g}, 20);
  const auto x3 = position_power_matrix<double>(3, 20);
  const auto x4 = position_power_matrix<double>(4, 20);
  for (int k = 0; k <= 20; ++k) {
    for (int l = 0; l <= 20; ++l) {
      const double expected = (k == l ? k : 0.0) + g * x3(k, l) + g * g * x4(k, l);
      CHECK(m(k, l) == doctest::Approx(expected).epsilon(1e-14));
    }
  }
}

TEST_CASE("invalid model parameters") {
  CHECK_THROWS_AS(build_matrix<double>({ModelKind::Quartic, 0.0}, 20), InvalidArgument);
  CHECK_THROWS_AS(build_matrix<double>({ModelKind::Quartic, -1.0}, 20), InvalidArgument);
  CHECK_THROWS_AS(build_matrix<double>({ModelKind::Quartic, 1.0}, 7), InvalidArgument);
  CHECK_THROWS_AS(parse_model_kind("octic"), InvalidArgument);
  CHECK(parse_model_kind("SSB") == ModelKind::SSB);
}

TEST_CASE("ssb coupling from the double-well potential") {
  CHECK(ssb_coupling_from_potential(0.125, 1.0) == doctest::Approx(1.0));
  CHECK(ssb_coupling_from_potential(2.0, 16.0) == doctest::Approx(0.5));
  CHECK(ssb_coupling_from_potential(1.0, 1.0) == doctest::Approx(std::pow(8.0, -0.75)));
  CHECK_THROWS_AS(ssb_coupling_from_potential(0.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(ssb_coupling_from_potential(1.0, -2.0), InvalidArgument);
}

TEST_CASE("triplet export lists lower-triangle nonzeros") {
  const auto m = build_matrix<double>({ModelKind::Quartic, 1.0}, 8);
  std::ostringstream os;
  write_triplets_csv(os, m);
  const std::string text = os.str();
  CHECK(text.rfind("row,col,value\n", 0) == 0);
  CHECK(text.find("4,0,") != std::string::npos);
  CHECK(text.find("0,4,") == std::string::npos);
  CHECK(text.find("1,0,") == std::string::npos);
}

TEST_CASE("precision conversion round trip") {
  const auto m = build_matrix<Float256>({ModelKind::Quartic, 1.0}, 10);
  const auto d = m.cast<double>();
  CHECK(d(10, 10) == doctest::Approx(10.0 + 663.0));
}

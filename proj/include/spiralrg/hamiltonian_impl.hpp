#pragma once

// Template definitions for hamiltonian.hpp.

#include <cmath>

namespace spiralrg {

namespace detail {

template <class Real>
Real position_power_element_t(int m, int k, int l) {
  using std::sqrt;
  if (m < 0 || k < 0 || l < 0) throw InvalidArgument("position_power_element: negative argument");
  if (std::abs(k - l) > m || ((k - l - m) % 2) != 0) return Real(0);
  // x^m = sum_j m! / (j! (m-2j)! 2^j) :x^{m-2j}:,   :x^s: = sum_p C(s,p) a^{+p} a^{s-p}
  Real total(0);
  Real mfact(1);
  for (int i = 2; i <= m; ++i) mfact *= i;
  for (int j = 0; 2 * j <= m; ++j) {
    const int s = m - 2 * j;
    Real pref = mfact;
    for (int i = 2; i <= j; ++i) pref /= i;
    for (int i = 2; i <= s; ++i) pref /= i;
    for (int i = 0; i < j; ++i) pref /= 2;
    for (int p = 0; p <= s; ++p) {
      const int q = s - p;
      const int r = k - p;  // <k|a^{+p} a^q|l> needs k - p == l - q >= 0
      if (r < 0 || l - q != r) continue;
      Real binom(1);
      for (int i = 1; i <= p; ++i) binom = binom * (s - p + i) / i;
      Real prod(1);
      for (int i = r + 1; i <= k; ++i) prod *= i;
      for (int i = r + 1; i <= l; ++i) prod *= i;
      total += pref * binom * sqrt(prod);
    }
  }
  return total;
}

template <class Real>
void add_scaled(BandedSymMatrix<Real>& target, const BandedSymMatrix<Real>& term, const Real& scale) {
  const int hb = term.half_bandwidth();
  for (std::size_t k = 0; k < term.dim(); ++k) {
    for (int d = 0; d <= hb && static_cast<std::size_t>(d) <= k; ++d) {
      target.set(k, k - d, target(k, k - d) + scale * term(k, k - d));
    }
  }
}

template <class Real>
BandedSymMatrix<Real> position_power_closed_form(int m, int cutoff) {
  BandedSymMatrix<Real> out(static_cast<std::size_t>(cutoff) + 1, m);
#pragma omp parallel for schedule(static)
  for (int k = 0; k <= cutoff; ++k) {
    for (int d = 0; d <= m && d <= k; ++d) {
      out.set(k, k - d, position_power_element_t<Real>(m, k, k - d));
    }
  }
  return out;
}

template <class Real>
BandedSymMatrix<Real> position_power(int m, int cutoff, ElementSource source) {
  return source == ElementSource::Ladder ? position_power_matrix<Real>(m, cutoff)
                                         : position_power_closed_form<Real>(m, cutoff);
}

}  // namespace detail

template <class Real>
BandedSymMatrix<Real> build_matrix(const ModelVariant& variant, int cutoff, ElementSource source) {
  validate(variant);
  if (cutoff < kMinimumCutoff) {
    throw InvalidArgument("build_matrix: cutoff " + std::to_string(cutoff) + " below minimum " +
                          std::to_string(kMinimumCutoff));
  }
  const Real g(variant.g);
  BandedSymMatrix<Real> h(static_cast<std::size_t>(cutoff) + 1, half_bandwidth(variant.kind));
  switch (variant.kind) {
    case ModelKind::Quartic:
      detail::add_scaled(h, detail::position_power<Real>(4, cutoff, source), g);
      break;
    case ModelKind::Sextic:
      detail::add_scaled(h, detail::position_power<Real>(6, cutoff, source), g);
      break;
    case ModelKind::SSB:
      detail::add_scaled(h, detail::position_power<Real>(3, cutoff, source), g);
      detail::add_scaled(h, detail::position_power<Real>(4, cutoff, source), Real(g * g));
      break;
  }
  for (int k = 0; k <= cutoff; ++k) h.set(k, k, h(k, k) + Real(k));
  return h;
}

}  // namespace spiralrg

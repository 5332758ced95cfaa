#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "spiralrg/banded_matrix.hpp"
#include "spiralrg/errors.hpp"

namespace spiralrg {

enum class ModelKind { Quartic, Sextic, SSB };

std::string to_string(ModelKind kind);
ModelKind parse_model_kind(const std::string& name);

/// Oscillator model and its dimensionless coupling.
///   Quartic: a^+a + g x^4
///   Sextic:  a^+a + g x^6
///   SSB:     a^+a + g x^3 + g^2 x^4
/// with x = a + a^+ and the zero-point 1/2 dropped.
struct ModelVariant {
  ModelKind kind = ModelKind::Quartic;
  double g = 1.0;
};

void validate(const ModelVariant& variant);

int half_bandwidth(ModelKind kind);
/// True when the Hamiltonian never couples even and odd basis states.
bool separates_parity(ModelKind kind);
/// Components of the corner vector xi: 3, 6 or 10.
int xi_dimension(ModelKind kind);
/// Cutoff reduction per elementary RG step (2 for parity-separating models, else 1).
int rg_stride(ModelKind kind);

constexpr int kMinimumCutoff = 8;

/// Where x^m matrix elements come from.
enum class ElementSource {
  Ladder,      // product of explicit ladder matrices on an extended basis (reference)
  ClosedForm,  // normal-ordering sum, rows filled in parallel
};

/// <k|(a + a^+)^m|l> from the normal-ordered expansion of x^m.
double position_power_element(int m, int k, int l);

namespace detail {

/// Non-symmetric matrix kept as a set of diagonals: entry (i, i + offset).
template <class Real>
struct DiagonalSet {
  std::size_t dim = 0;
  std::map<int, std::vector<Real>> diagonals;

  Real at(std::size_t i, std::size_t j) const {
    const int off = static_cast<int>(j) - static_cast<int>(i);
    auto it = diagonals.find(off);
    if (it == diagonals.end()) return Real(0);
    return it->second[off >= 0 ? i : j];
  }
};

// Diagonal with offset d stores dim - |d| entries, indexed by min(i, j).
template <class Real>
DiagonalSet<Real> multiply(const DiagonalSet<Real>& a, const DiagonalSet<Real>& b) {
  DiagonalSet<Real> c;
  c.dim = a.dim;
  const long n = static_cast<long>(a.dim);
  for (const auto& [da, va] : a.diagonals) {
    for (const auto& [db, vb] : b.diagonals) {
      const int dc = da + db;
      if (std::abs(dc) >= n) continue;
      auto& vc = c.diagonals[dc];
      if (vc.empty()) vc.assign(static_cast<std::size_t>(n - std::abs(dc)), Real(0));
      // (i, i+da) * (i+da, i+da+db)
      for (long i = 0; i < n; ++i) {
        const long j = i + da;
        const long k = j + db;
        if (j < 0 || j >= n || k < 0 || k >= n) continue;
        const Real& x = va[static_cast<std::size_t>(da >= 0 ? i : j)];
        const Real& y = vb[static_cast<std::size_t>(db >= 0 ? j : k)];
        vc[static_cast<std::size_t>(dc >= 0 ? i : k)] += x * y;
      }
    }
  }
  return c;
}

/// x = a + a^+ on `dim` states.
template <class Real>
DiagonalSet<Real> position_operator(std::size_t dim) {
  using std::sqrt;
  DiagonalSet<Real> x;
  x.dim = dim;
  std::vector<Real> upper(dim - 1);
  for (std::size_t i = 0; i + 1 < dim; ++i) upper[i] = sqrt(Real(static_cast<long>(i + 1)));
  x.diagonals[1] = upper;   // <i|a|i+1> = sqrt(i+1)
  x.diagonals[-1] = upper;  // <i+1|a^+|i> = sqrt(i+1)
  return x;
}

template <class Real>
DiagonalSet<Real> power(const DiagonalSet<Real>& x, int m) {
  DiagonalSet<Real> out = x;
  for (int p = 1; p < m; ++p) out = multiply(out, x);
  return out;
}

}  // namespace detail

/// Truncated x^m on basis states 0..cutoff, built from ladder matrices on a
/// basis extended by m states so the truncation edge is exact.
template <class Real>
BandedSymMatrix<Real> position_power_matrix(int m, int cutoff) {
  const std::size_t ext = static_cast<std::size_t>(cutoff) + 1 + static_cast<std::size_t>(m);
  const auto xm = detail::power(detail::position_operator<Real>(ext), m);
  BandedSymMatrix<Real> out(static_cast<std::size_t>(cutoff) + 1, m);
  for (int d = 0; d <= m; ++d) {
    auto it = xm.diagonals.find(d);
    if (it == xm.diagonals.end()) continue;
    for (int i = 0; i + d <= cutoff; ++i) out.set(i + d, i, it->second[i]);
  }
  return out;
}

/// (N+1)x(N+1) truncation of <k|H|l>.
template <class Real>
BandedSymMatrix<Real> build_matrix(const ModelVariant& variant, int cutoff,
                                   ElementSource source = ElementSource::Ladder);

/// g = sqrt(B) / (8A)^{3/4} for the broken-symmetry rewrite of -d^2 - A phi^2 + B phi^4.
double ssb_coupling_from_potential(double A, double B);

/// H_{n,n} - n for the untouched matrix (interaction part of the diagonal).
double interaction_diagonal(const ModelVariant& variant, int n);

}  // namespace spiralrg

#include "spiralrg/hamiltonian_impl.hpp"

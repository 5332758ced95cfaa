#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "spiralrg/banded_matrix.hpp"
#include "spiralrg/errors.hpp"
#include "spiralrg/hamiltonian.hpp"
#include "spiralrg/xi.hpp"

namespace spiralrg {

enum class Parity { Even, Odd, Both };

std::string to_string(Parity parity);
Parity parse_parity(const std::string& name);

struct DecimationSettings {
  double E = 0.0;            // reference energy of (H - E) psi = 0
  int target_cutoff = 0;     // n
  Parity parity = Parity::Even;
  double pivot_tolerance = 1e-12;  // relative to |M[last,last]|
  bool strict = false;       // throw on a near-zero pivot instead of recording it
};

struct PivotEvent {
  int step = 0;     // 0-based elimination index
  int row = 0;      // eliminated row
  double pivot = 0.0;
};

template <class Real>
struct PivotInfo {
  Real pivot;
  bool near_zero = false;
};

/// Schur complement of the last row/column of (M - E) folded back into M.
/// Only rows within the half-bandwidth of the eliminated one change.
template <class Real>
PivotInfo<Real> eliminate_last_in_place(BandedSymMatrix<Real>& m, const Real& E, double tolerance = 1e-12) {
  using std::abs;
  if (m.dim() < 2) throw InvalidArgument("eliminate_last: matrix must be at least 2x2");
  const std::size_t last = m.dim() - 1;
  const Real diag = m(last, last);
  const Real pivot = diag - E;
  if (pivot == Real(0)) {
    throw PivotError(static_cast<int>(last), 0.0, "eliminate_last: zero pivot at row " + std::to_string(last));
  }
  PivotInfo<Real> info{pivot, abs(pivot) < Real(tolerance) * abs(diag)};
  const std::size_t hb = static_cast<std::size_t>(m.half_bandwidth());
  const std::size_t lo = last > hb ? last - hb : 0;
  for (std::size_t k = lo; k < last; ++k) {
    const Real mk = m(k, last);
    if (mk == Real(0)) continue;
    const Real factor = mk / pivot;
    for (std::size_t l = lo; l <= k; ++l) {
      const Real ml = m(last, l);
      if (ml == Real(0)) continue;
      m.set(k, l, m(k, l) - factor * ml);
    }
  }
  m.drop_last();
  return info;
}

/// One elimination step returning the (dim-1) matrix. Throws PivotError when
/// |pivot| < tolerance * |M[last,last]|.
template <class Real>
BandedSymMatrix<Real> eliminate_last(const BandedSymMatrix<Real>& m, const Real& E, double tolerance = 1e-12) {
  BandedSymMatrix<Real> out = m.truncated(m.cutoff());
  const auto info = eliminate_last_in_place(out, E, tolerance);
  if (info.near_zero) {
    throw PivotError(m.cutoff(), static_cast<double>(info.pivot),
                     "eliminate_last: pivot " + format_real(info.pivot) + " below tolerance");
  }
  return out;
}

template <class Real>
struct Decimation {
  BandedSymMatrix<Real> matrix;  // H_n^N, rows 0..n
  std::vector<PivotEvent> events;
};

void validate(const DecimationSettings& settings, ModelKind kind, int cutoff);

/// Eliminates every row above the target cutoff.
template <class Real>
Decimation<Real> decimate_to(const BandedSymMatrix<Real>& m, const DecimationSettings& settings,
                             ModelKind kind = ModelKind::Quartic) {
  validate(settings, kind, m.cutoff());
  Decimation<Real> out{m.truncated(m.cutoff()), {}};
  const Real E(settings.E);
  int step = 0;
  while (out.matrix.cutoff() > settings.target_cutoff) {
    const int row = out.matrix.cutoff();
    const auto info = eliminate_last_in_place(out.matrix, E, settings.pivot_tolerance);
    if (info.near_zero) {
      if (settings.strict) {
        throw PivotError(step, static_cast<double>(info.pivot),
                         "decimate_to: near-zero pivot at step " + std::to_string(step) + " (row " +
                             std::to_string(row) + ")");
      }
      out.events.push_back({step, row, static_cast<double>(info.pivot)});
    }
    ++step;
  }
  return out;
}

namespace detail {

struct CornerEntry {
  int i;  // row offset below n
  int j;  // column offset below n
};

/// Corner entries parameterized by xi, in component order.
const std::vector<CornerEntry>& corner_layout(ModelKind kind);

}  // namespace detail

/// Reads the corner parameters back out of a decimated matrix:
/// diagonal entries give (H_red - k) / (H_orig - k), off-diagonal ones H_red / H_orig.
template <class Real>
XiVector<Real> corner_xi(const BandedSymMatrix<Real>& reduced, const BandedSymMatrix<Real>& original, int n,
                         ModelKind kind) {
  if (reduced.cutoff() < n || original.cutoff() < n) {
    throw InvalidArgument("corner_xi: matrices do not reach cutoff " + std::to_string(n));
  }
  const auto& layout = detail::corner_layout(kind);
  std::vector<Real> xi;
  xi.reserve(layout.size());
  for (const auto& e : layout) {
    const int k = n - e.i;
    const int l = n - e.j;
    if (k < 0 || l < 0) throw InvalidArgument("corner_xi: cutoff too small for the corner");
    Real num = reduced(k, l);
    Real den = original(k, l);
    if (k == l) {
      num -= Real(k);
      den -= Real(k);
    }
    if (den == Real(0)) {
      throw DivisionByZero("corner_xi: original element (" + std::to_string(k) + "," + std::to_string(l) +
                           ") vanishes");
    }
    xi.push_back(num / den);
  }
  return XiVector<Real>(kind, std::move(xi));
}

template <class Real>
struct DecimationFrame {
  int step = 0;    // RG steps in the tracked sector
  int cutoff = 0;  // n
  XiVector<Real> xi;
  Real pivot = Real(0);  // last pivot used to reach this cutoff
  bool pivot_event = false;
};

/// Decimates from the original cutoff down to the target, extracting corner xi
/// each time the tracked sector's boundary moves by one RG stride.
template <class Real>
std::vector<DecimationFrame<Real>> decimation_trace(const BandedSymMatrix<Real>& original,
                                                    const DecimationSettings& settings, ModelKind kind) {
  validate(settings, kind, original.cutoff());
  const int stride = rg_stride(kind);
  auto work = original.truncated(original.cutoff());
  const Real E(settings.E);

  auto tracked = [&](int cutoff) {
    if (settings.parity == Parity::Both || !separates_parity(kind)) return true;
    return (cutoff % 2 == 0) == (settings.parity == Parity::Even);
  };
  int start = original.cutoff();
  while (!tracked(start)) --start;

  std::vector<DecimationFrame<Real>> frames;
  Real last_pivot(0);
  bool event = false;
  int k = 0;
  if (start == original.cutoff()) {
    frames.push_back({0, start, corner_xi(work, original, start, kind), Real(0), false});
  }
  while (work.cutoff() > settings.target_cutoff) {
    const int row = work.cutoff();
    const auto info = eliminate_last_in_place(work, E, settings.pivot_tolerance);
    if (info.near_zero && settings.strict) {
      throw PivotError(k, static_cast<double>(info.pivot), "decimation_trace: near-zero pivot at row " +
                                                               std::to_string(row));
    }
    if (tracked(row)) {
      last_pivot = info.pivot;
      event = event || info.near_zero;
    }
    const int c = work.cutoff();
    if (c <= start && (start - c) % stride == 0 && tracked(c)) {
      k = (start - c) / stride;
      frames.push_back({k, c, corner_xi(work, original, c, kind), last_pivot, event});
      event = false;
    }
  }
  return frames;
}

}  // namespace spiralrg

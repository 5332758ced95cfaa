#pragma once

#include <cstddef>
#include <cstdlib>
#include <ostream>
#include <string>
#include <vector>

#include "spiralrg/errors.hpp"
#include "spiralrg/precision.hpp"

namespace spiralrg {

/// Symmetric real matrix stored by diagonals.
///
/// Only offsets 0..half_bandwidth are stored, so symmetry is exact by
/// construction. Diagonal `d` occupies `stride` consecutive slots starting at
/// `d * stride`; slot `i` holds M(i + d, i). The logical dimension may shrink
/// (decimation drops trailing rows) without moving storage.
template <class Real>
class BandedSymMatrix {
 public:
  BandedSymMatrix() = default;

  BandedSymMatrix(std::size_t dim, int half_bandwidth)
      : dim_(dim), stride_(dim), half_bandwidth_(half_bandwidth),
        bands_(static_cast<std::size_t>(half_bandwidth + 1) * dim, Real(0)) {
    if (dim == 0) throw InvalidArgument("BandedSymMatrix: dim must be positive");
    if (half_bandwidth < 0) throw InvalidArgument("BandedSymMatrix: negative half-bandwidth");
  }

  std::size_t dim() const noexcept { return dim_; }
  /// Highest basis index kept, i.e. dim - 1.
  int cutoff() const noexcept { return static_cast<int>(dim_) - 1; }
  int half_bandwidth() const noexcept { return half_bandwidth_; }

  bool in_band(std::size_t k, std::size_t l) const noexcept {
    const std::size_t d = k > l ? k - l : l - k;
    return d <= static_cast<std::size_t>(half_bandwidth_) && k < dim_ && l < dim_;
  }

  /// Element access; entries outside the band read as zero.
  Real operator()(std::size_t k, std::size_t l) const {
    if (k >= dim_ || l >= dim_) throw InvalidArgument("BandedSymMatrix: index out of range");
    const std::size_t d = k > l ? k - l : l - k;
    if (d > static_cast<std::size_t>(half_bandwidth_)) return Real(0);
    return bands_[d * stride_ + (k < l ? k : l)];
  }

  /// Sets M(k,l) and M(l,k). Writing outside the band is an error.
  void set(std::size_t k, std::size_t l, const Real& value) {
    if (!in_band(k, l)) throw InvalidArgument("BandedSymMatrix: write outside band");
    const std::size_t d = k > l ? k - l : l - k;
    bands_[d * stride_ + (k < l ? k : l)] = value;
  }

  /// Removes the last row and column.
  void drop_last() {
    if (dim_ <= 1) throw InvalidArgument("BandedSymMatrix: cannot shrink below 1x1");
    --dim_;
  }

  /// Copy with trailing rows/columns beyond `cutoff` removed and compact storage.
  BandedSymMatrix truncated(int cutoff) const {
    if (cutoff < 0 || static_cast<std::size_t>(cutoff) >= dim_) {
      throw InvalidArgument("BandedSymMatrix: truncation cutoff out of range");
    }
    BandedSymMatrix out(static_cast<std::size_t>(cutoff) + 1, half_bandwidth_);
    for (int d = 0; d <= half_bandwidth_; ++d) {
      for (std::size_t i = 0; i + d < out.dim_; ++i) {
        out.bands_[d * out.stride_ + i] = bands_[d * stride_ + i];
      }
    }
    return out;
  }

  template <class Other>
  BandedSymMatrix<Other> cast() const {
    BandedSymMatrix<Other> out(dim_, half_bandwidth_);
    for (int d = 0; d <= half_bandwidth_; ++d) {
      for (std::size_t i = 0; i + d < dim_; ++i) {
        out.set(i + d, i, static_cast<Other>(bands_[d * stride_ + i]));
      }
    }
    return out;
  }

  /// Row-major dense copy (dim x dim), converted to double.
  std::vector<double> to_dense() const {
    std::vector<double> dense(dim_ * dim_, 0.0);
    for (int d = 0; d <= half_bandwidth_; ++d) {
      for (std::size_t i = 0; i + d < dim_; ++i) {
        const double v = static_cast<double>(bands_[d * stride_ + i]);
        dense[(i + d) * dim_ + i] = v;
        dense[i * dim_ + i + d] = v;
      }
    }
    return dense;
  }

 private:
  std::size_t dim_ = 0;
  std::size_t stride_ = 0;
  int half_bandwidth_ = 0;
  std::vector<Real> bands_;
};

/// Writes stored nonzeros as `row,col,value` triplets (lower triangle and diagonal).
template <class Real>
void write_triplets_csv(std::ostream& os, const BandedSymMatrix<Real>& m) {
  os << "row,col,value\n";
  for (std::size_t k = 0; k < m.dim(); ++k) {
    const std::size_t lo = k >= static_cast<std::size_t>(m.half_bandwidth()) ? k - m.half_bandwidth() : 0;
    for (std::size_t l = lo; l <= k; ++l) {
      const Real v = m(k, l);
      if (v != Real(0)) os << k << ',' << l << ',' << format_real(v) << '\n';
    }
  }
}

/// Dense text grid for eyeballing small matrices.
template <class Real>
void write_dense_grid(std::ostream& os, const BandedSymMatrix<Real>& m, int precision = 6) {
  const auto flags = os.flags();
  const auto prec = os.precision(precision);
  for (std::size_t k = 0; k < m.dim(); ++k) {
    for (std::size_t l = 0; l < m.dim(); ++l) {
      if (l) os << ' ';
      os << static_cast<double>(m(k, l));
    }
    os << '\n';
  }
  os.precision(prec);
  os.flags(flags);
}

}  // namespace spiralrg

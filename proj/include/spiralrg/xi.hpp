#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

#include "spiralrg/errors.hpp"
#include "spiralrg/hamiltonian.hpp"

namespace spiralrg {

/// RG state: ratios of the evolving corner interaction elements to their
/// untouched values. Dimension is fixed by the model (3, 6 or 10).
template <class Real>
class XiVector {
 public:
  XiVector() = default;

  explicit XiVector(ModelKind kind, Real fill = Real(1))
      : kind_(kind), values_(static_cast<std::size_t>(xi_dimension(kind)), fill) {}

  XiVector(ModelKind kind, std::vector<Real> values) : kind_(kind), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(xi_dimension(kind))) {
      throw InvalidArgument("XiVector: " + to_string(kind) + " needs " + std::to_string(xi_dimension(kind)) +
                            " components, got " + std::to_string(values_.size()));
    }
  }

  XiVector(ModelKind kind, std::initializer_list<Real> values) : XiVector(kind, std::vector<Real>(values)) {}

  ModelKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return values_.size(); }

  Real& operator[](std::size_t i) { return values_[i]; }
  const Real& operator[](std::size_t i) const { return values_[i]; }

  const std::vector<Real>& values() const noexcept { return values_; }

  template <class Other>
  XiVector<Other> cast() const {
    std::vector<Other> out;
    out.reserve(values_.size());
    for (const auto& v : values_) out.push_back(static_cast<Other>(v));
    return XiVector<Other>(kind_, std::move(out));
  }

  friend XiVector operator-(const XiVector& a, const XiVector& b) {
    XiVector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] -= b.values_[i];
    return out;
  }

  friend XiVector operator+(const XiVector& a, const XiVector& b) {
    XiVector out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out.values_[i] += b.values_[i];
    return out;
  }

 private:
  ModelKind kind_ = ModelKind::Quartic;
  std::vector<Real> values_;
};

template <class Real>
Real max_abs_diff(const XiVector<Real>& a, const XiVector<Real>& b) {
  using std::abs;
  Real m(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Real d = abs(a[i] - b[i]);
    if (d > m) m = d;
  }
  return m;
}

template <class Real>
Real max_abs(const XiVector<Real>& a) {
  using std::abs;
  Real m(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (abs(a[i]) > m) m = abs(a[i]);
  }
  return m;
}

}  // namespace spiralrg

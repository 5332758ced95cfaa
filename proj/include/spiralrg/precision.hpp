#pragma once

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "spiralrg/errors.hpp"

namespace spiralrg {

namespace mp = boost::multiprecision;

// Fixed-width binary floats; expression templates off so `auto` stays safe.
using Float128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;
using Float512 = mp::number<mp::cpp_bin_float<512, mp::digit_base_2>, mp::et_off>;

constexpr int kDefaultPrecisionBits = 256;

/// Mantissa widths accepted by the runtime dispatcher.
inline const std::vector<int>& supported_precision_bits() {
  static const std::vector<int> bits{53, 128, 256, 512};
  return bits;
}

inline bool is_supported_precision(int bits) {
  for (int b : supported_precision_bits()) {
    if (b == bits) return true;
  }
  return false;
}

/// Calls `fn.template operator()<Real>()` with the scalar type matching `bits`.
template <class Fn>
decltype(auto) with_precision(int bits, Fn&& fn) {
  switch (bits) {
    case 53:
      return fn.template operator()<double>();
    case 128:
      return fn.template operator()<Float128>();
    case 256:
      return fn.template operator()<Float256>();
    case 512:
      return fn.template operator()<Float512>();
    default:
      break;
  }
  throw InvalidArgument("unsupported precision: " + std::to_string(bits) + " bits");
}

template <class Real>
constexpr int mantissa_bits() {
  return std::numeric_limits<Real>::digits;
}

template <class Real>
Real machine_epsilon() {
  return std::numeric_limits<Real>::epsilon();
}

template <class Real>
double to_double(const Real& x) {
  return static_cast<double>(x);
}

/// Full-precision decimal rendering, used for CSV output.
template <class Real>
std::string format_real(const Real& x) {
  std::ostringstream os;
  os.precision(std::numeric_limits<Real>::max_digits10);
  os << x;
  return os.str();
}

inline std::string format_real(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

/// Exact conversion from a decimal literal (avoids rounding through double).
template <class Real>
Real from_string(const std::string& s) {
  if constexpr (std::is_same_v<Real, double>) {
    return std::stod(s);
  } else {
    return Real(s);
  }
}

}  // namespace spiralrg

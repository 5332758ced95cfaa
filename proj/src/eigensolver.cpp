#include "spiralrg/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace spiralrg {

namespace {

class DenseSym {
 public:
  explicit DenseSym(const BandedSymMatrix<double>& m) : n_(m.dim()), a_(m.to_dense()) {}
  double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  std::size_t size() const { return n_; }

  /// A <- G A G^T for the rotation in plane (p, p+1) with G = [[c, s], [-s, c]],
  /// touching only columns/rows in [lo, hi].
  void rotate(std::size_t p, double c, double s, std::size_t lo, std::size_t hi) {
    const std::size_t q = p + 1;
    for (std::size_t k = lo; k <= hi; ++k) {
      const double x = (*this)(p, k);
      const double y = (*this)(q, k);
      (*this)(p, k) = c * x + s * y;
      (*this)(q, k) = -s * x + c * y;
    }
    for (std::size_t k = lo; k <= hi; ++k) {
      const double x = (*this)(k, p);
      const double y = (*this)(k, q);
      (*this)(k, p) = c * x + s * y;
      (*this)(k, q) = -s * x + c * y;
    }
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

/// Rotation in plane (row - 1, row) that zeroes A(row, col) against A(row - 1, col).
void annihilate(DenseSym& a, std::size_t row, std::size_t col, std::size_t band) {
  const double x = a(row - 1, col);
  const double y = a(row, col);
  if (y == 0.0) return;
  const double r = std::hypot(x, y);
  const double c = x / r;
  const double s = y / r;
  const std::size_t p = row - 1;
  const std::size_t reach = band + 2;
  const std::size_t lo = p > reach ? p - reach : 0;
  const std::size_t hi = std::min(a.size() - 1, row + reach);
  a.rotate(p, c, s, lo, hi);
  a(row, col) = 0.0;
  a(col, row) = 0.0;
}

}  // namespace

Tridiagonal band_to_tridiagonal(const BandedSymMatrix<double>& m) {
  const std::size_t n = m.dim();
  const std::size_t b = static_cast<std::size_t>(m.half_bandwidth());
  DenseSym a(m);
  if (b > 1) {
    for (std::size_t k = 0; k + 2 < n; ++k) {
      for (std::size_t l = std::min(b, n - 1 - k); l >= 2; --l) {
        std::size_t row = k + l;
        annihilate(a, row, k, b);
        // the rotation in plane (row-1, row) fills (row-1+b+1, row-1); chase it down
        std::size_t col = row - 1;
        while (col + b + 1 < n) {
          const std::size_t fill = col + b + 1;
          annihilate(a, fill, col, b);
          col = fill - 1;
        }
      }
    }
  }
  Tridiagonal t;
  t.diag.resize(n);
  t.off.resize(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) t.diag[i] = a(i, i);
  for (std::size_t i = 0; i + 1 < n; ++i) t.off[i] = a(i + 1, i);
  return t;
}

int sturm_count(const Tridiagonal& t, double x) {
  const std::size_t n = t.diag.size();
  int count = 0;
  double q = 1.0;
  const double tiny = std::numeric_limits<double>::min();
  for (std::size_t i = 0; i < n; ++i) {
    const double e2 = i == 0 ? 0.0 : t.off[i - 1] * t.off[i - 1];
    q = t.diag[i] - x - (i == 0 ? 0.0 : e2 / q);
    if (q == 0.0) q = -tiny;
    if (q < 0.0) ++count;
  }
  return count;
}

std::pair<double, double> gershgorin_bounds(const Tridiagonal& t) {
  const std::size_t n = t.diag.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = (i > 0 ? std::abs(t.off[i - 1]) : 0.0) + (i + 1 < n ? std::abs(t.off[i]) : 0.0);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
  }
  const double pad = 1e-12 * std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  return {lo - pad, hi + pad};
}

double bisect_eigenvalue(const Tridiagonal& t, int k, double tol) {
  const int n = static_cast<int>(t.diag.size());
  if (k < 0 || k >= n) throw InvalidArgument("bisect_eigenvalue: index out of range");
  if (!(tol > 0.0)) throw InvalidArgument("bisect_eigenvalue: tolerance must be positive");
  auto [lo, hi] = gershgorin_bounds(t);
  for (int it = 0; it < 2000; ++it) {
    if (hi - lo <= tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;  // bracket is one ulp wide
    if (sturm_count(t, mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw ConvergenceFailure(lo, hi, "bisect_eigenvalue: no convergence for index " + std::to_string(k));
}

std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, int count, double tol) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[k] = bisect_eigenvalue(t, k, tol);
  return out;
}

std::vector<double> tridiagonal_eigenvalues_parallel(const Tridiagonal& t, int count, double tol) {
  std::vector<double> out(static_cast<std::size_t>(count));
  bool failed = false;
  double fail_lo = 0.0;
  double fail_hi = 0.0;
  std::string message;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < count; ++k) {
    try {
      out[k] = bisect_eigenvalue(t, k, tol);
    } catch (const ConvergenceFailure& e) {
#pragma omp critical
      {
        failed = true;
        fail_lo = e.lower();
        fail_hi = e.upper();
        message = e.what();
      }
    }
  }
  if (failed) throw ConvergenceFailure(fail_lo, fail_hi, message);
  return out;
}

namespace {

void check_request(const BandedSymMatrix<double>& m, const SpectrumRequest& req) {
  if (req.count < 1 || static_cast<std::size_t>(req.count) > m.dim()) {
    throw InvalidArgument("spectrum request: count must be in [1, " + std::to_string(m.dim()) + "]");
  }
  if (!(req.tol > 0.0)) throw InvalidArgument("spectrum request: tolerance must be positive");
}

}  // namespace

std::vector<double> lowest_eigenvalues(const BandedSymMatrix<double>& m, const SpectrumRequest& req) {
  check_request(m, req);
  return tridiagonal_eigenvalues_parallel(band_to_tridiagonal(m), req.count, req.tol);
}

std::vector<double> lowest_eigenvalues_serial(const BandedSymMatrix<double>& m, const SpectrumRequest& req) {
  check_request(m, req);
  return tridiagonal_eigenvalues(band_to_tridiagonal(m), req.count, req.tol);
}

std::vector<double> dense_jacobi_eigenvalues(const BandedSymMatrix<double>& m) {
  const std::size_t n = m.dim();
  if (n > kDenseCheckLimit) {
    throw InvalidArgument("dense_jacobi_eigenvalues: limited to dimension " + std::to_string(kDenseCheckLimit));
  }
  std::vector<double> a = m.to_dense();
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        total += at(i, j) * at(i, j);
        if (i != j) off += at(i, j) * at(i, j);
      }
    }
    if (off <= 1e-30 * total) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (apq == 0.0) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = at(k, p);
          const double akq = at(k, q);
          at(k, p) = c * akp - s * akq;
          at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = at(p, k);
          const double aqk = at(q, k);
          at(p, k) = c * apk - s * aqk;
          at(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = at(i, i);
  std::sort(ev.begin(), ev.end());
  return ev;
}

RenormalizationReport verify_renormalization(double g, double E, int N, int n, double tol) {
  if (n >= N) throw InvalidArgument("verify_renormalization: n must be below N");
  const ModelVariant variant{ModelKind::Quartic, g};
  const auto full = build_matrix<double>(variant, N);
  const SpectrumRequest req{1, tol};
  RenormalizationReport rep;
  rep.g = g;
  rep.E = E;
  rep.N = N;
  rep.n = n;
  rep.e_full = lowest_eigenvalues(full, req).front();
  const auto reduced = decimate_to(full, {E, n, Parity::Both}, ModelKind::Quartic).matrix;
  rep.e_renorm = lowest_eigenvalues(reduced, req).front();
  rep.e_plain = lowest_eigenvalues(full.truncated(n), req).front();
  rep.err_renorm = std::abs(rep.e_renorm - rep.e_full) / std::abs(rep.e_full);
  rep.err_plain = std::abs(rep.e_plain - rep.e_full) / std::abs(rep.e_full);
  rep.ratio = rep.err_plain / rep.err_renorm;
  return rep;
}

}  // namespace spiralrg

#pragma once

#include <string>
#include <vector>

#include "spiralrg/banded_matrix.hpp"
#include "spiralrg/decimation.hpp"
#include "spiralrg/errors.hpp"
#include "spiralrg/hamiltonian.hpp"

namespace spiralrg {

struct Tridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1
};

/// Orthogonal similarity reduction of a symmetric band matrix to tridiagonal
/// form with Givens rotations, chasing each bulge down the band.
Tridiagonal band_to_tridiagonal(const BandedSymMatrix<double>& m);

/// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count(const Tridiagonal& t, double x);

/// Bracketing interval containing the whole spectrum.
std::pair<double, double> gershgorin_bounds(const Tridiagonal& t);

/// k-th smallest eigenvalue (0-based) by bisection. Stops when the interval is
/// below tol or can no longer shrink in floating point; throws
/// ConvergenceFailure with the last bracket otherwise.
double bisect_eigenvalue(const Tridiagonal& t, int k, double tol);

struct SpectrumRequest {
  int count = 1;
  double tol = 1e-10;
};

/// Lowest `count` eigenvalues, ascending. OpenMP over eigenvalue indices.
std::vector<double> lowest_eigenvalues(const BandedSymMatrix<double>& m, const SpectrumRequest& req = {});
/// One-thread reference of lowest_eigenvalues.
std::vector<double> lowest_eigenvalues_serial(const BandedSymMatrix<double>& m, const SpectrumRequest& req = {});

/// All eigenvalues of the tridiagonal matrix, serial and parallel bisection.
std::vector<double> tridiagonal_eigenvalues(const Tridiagonal& t, int count, double tol);
std::vector<double> tridiagonal_eigenvalues_parallel(const Tridiagonal& t, int count, double tol);

/// Cyclic Jacobi on a dense copy; the cross-check path for small matrices.
constexpr std::size_t kDenseCheckLimit = 64;
std::vector<double> dense_jacobi_eigenvalues(const BandedSymMatrix<double>& m);

struct RenormalizationReport {
  double g = 0.0;
  double E = 0.0;
  int N = 0;
  int n = 0;
  double e_full = 0.0;     // ground energy of H^N
  double e_renorm = 0.0;   // ground energy of the decimated H_n^N
  double e_plain = 0.0;    // ground energy of the plain truncation H^n
  double err_renorm = 0.0; // relative to e_full
  double err_plain = 0.0;
  double ratio = 0.0;      // err_plain / err_renorm
};

RenormalizationReport verify_renormalization(double g, double E, int N, int n, double tol = 1e-10);

}  // namespace spiralrg

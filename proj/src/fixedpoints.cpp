#include "spiralrg/fixedpoints.hpp"

#include <Eigen/Dense>
#include <optional>

namespace spiralrg {

std::vector<std::complex<double>> eigenvalues(const std::vector<std::vector<double>>& m) {
  const auto d = static_cast<Eigen::Index>(m.size());
  Eigen::MatrixXd a(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    if (static_cast<Eigen::Index>(m[i].size()) != d) throw InvalidArgument("eigenvalues: matrix is not square");
    for (Eigen::Index j = 0; j < d; ++j) a(i, j) = m[i][j];
  }
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success) throw ConvergenceFailure(0.0, 0.0, "eigenvalues: QR iteration failed");
  std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + d);
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (std::abs(x) != std::abs(y)) return std::abs(x) > std::abs(y);
    return x.imag() > y.imag();
  });
  return out;
}

std::vector<double> real_polynomial_roots(const std::vector<double>& coeffs, double imag_tolerance) {
  std::vector<double> c = coeffs;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() < 2) return {};
  const auto deg = static_cast<Eigen::Index>(c.size() - 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Eigen::Index i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);
  std::vector<double> roots;
  for (Eigen::Index i = 0; i < deg; ++i) {
    const auto z = es.eigenvalues()(i);
    if (std::abs(z.imag()) <= imag_tolerance * std::max(1.0, std::abs(z))) roots.push_back(z.real());
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Attractive:
      return "attractive";
    case Stability::Repulsive:
      return "repulsive";
    case Stability::Mixed:
      return "mixed";
  }
  return "unknown";
}

Stability classify(const std::vector<std::complex<double>>& eigenvalues) {
  bool all_inside = true;
  bool all_outside = true;
  for (const auto& z : eigenvalues) {
    const double m = std::abs(z);
    if (!(m < 1.0)) all_inside = false;
    if (!(m > 1.0)) all_outside = false;
  }
  if (all_inside) return Stability::Attractive;
  if (all_outside) return Stability::Repulsive;
  return Stability::Mixed;
}

namespace {

using Point = std::vector<double>;

int default_lattice(int dim) {
  return dim <= 6 ? 5 : 3;
}

template <class Real>
XiVector<Real> to_xi(ModelKind kind, const Point& x) {
  std::vector<Real> v;
  v.reserve(x.size());
  for (double c : x) v.emplace_back(c);
  return XiVector<Real>(kind, std::move(v));
}

template <class Real>
Real residual_norm(const RgMap<Real>& map, const XiVector<Real>& x) {
  const auto fx = map(x);
  Real worst(0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Real r = fx[i] - x[i];
    if (r < Real(0)) r = -r;
    if (!(r == r)) return std::numeric_limits<Real>::infinity();
    if (r > worst) worst = r;
  }
  return worst;
}

template <class Real>
Real residual_l2(const RgMap<Real>& map, const XiVector<Real>& x) {
  const auto fx = map(x);
  Real sum(0);
  for (std::size_t i = 0; i < x.size(); ++i) sum += (fx[i] - x[i]) * (fx[i] - x[i]);
  if (!(sum == sum)) return std::numeric_limits<Real>::infinity();
  return sum;
}

/// Newton on F(x) - x with a central-difference Jacobian and halving line search.
template <class Real>
std::optional<XiVector<Real>> newton(const RgMap<Real>& map, XiVector<Real> x, const Real& eps, const Real& goal,
                                     const Real& accept, int max_iterations) {
  const auto d = static_cast<Eigen::Index>(x.size());
  Real res = residual_norm(map, x);
  for (int it = 0; it < max_iterations; ++it) {
    if (!(res < std::numeric_limits<Real>::infinity())) return std::nullopt;
    if (res < goal) return x;
    const auto jac = numeric_jacobian(map, x, eps);
    const auto fx = map(x);
    // Newton system solved in double: the iteration only needs a descent direction,
    // the residual itself is always evaluated in Real.
    Eigen::MatrixXd a(d, d);
    Eigen::VectorXd b(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = to_double(jac[i][j]) - (i == j ? 1.0 : 0.0);
      b(i) = -to_double(fx[i] - x[i]);
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::VectorXd dx = lu.solve(b);
    if (!dx.allFinite()) return std::nullopt;
    if constexpr (!std::is_same_v<Real, double>) {
      // one step of iterative refinement keeps the correction accurate to Real precision
      std::vector<Real> step(d);
      for (Eigen::Index i = 0; i < d; ++i) step[i] = Real(dx(i));
      Eigen::VectorXd corr(d);
      for (Eigen::Index i = 0; i < d; ++i) {
        Real acc = fx[i] - x[i];
        for (Eigen::Index j = 0; j < d; ++j) acc += (jac[i][j] - (i == j ? Real(1) : Real(0))) * step[j];
        corr(i) = -to_double(acc);
      }
      const Eigen::VectorXd fix = lu.solve(corr);
      XiVector<Real> trial = x;
      for (Eigen::Index i = 0; i < d; ++i) trial[i] += step[i] + Real(fix(i));
      const Real tr = residual_norm(map, trial);
      if (tr < res) {
        x = trial;
        res = tr;
        continue;
      }
    }
    // halving line search on the Euclidean residual; if nothing decreases it the
    // shortest step is taken anyway, which lets starts escape shallow basins
    const Real merit = residual_l2(map, x);
    double lam = 1.0;
    XiVector<Real> trial = x;
    while (true) {
      trial = x;
      for (Eigen::Index i = 0; i < d; ++i) trial[i] += Real(lam * dx(i));
      if (residual_l2(map, trial) < merit || lam <= 1e-4) break;
      lam *= 0.5;
    }
    x = trial;
    res = residual_norm(map, x);
  }
  if (res < accept) return x;
  return std::nullopt;
}

struct Candidate {
  Point x;
  int hits = 1;
};

double inf_distance(const Point& a, const Point& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void check_search(const FixedPointSearch& s) {
  std::vector<std::string> problems;
  if (!stepper_is_autonomous(s.stepper)) problems.push_back("stepper must not depend on the floating cutoff");
  if (s.N < 1) problems.push_back("N must be positive");
  if (!(s.g > 0.0)) problems.push_back("g must be positive");
  if (s.lattice_points < 0 || s.lattice_points == 1) problems.push_back("lattice needs 0 or >= 2 points per axis");
  if (!(s.lattice_lo < s.lattice_hi)) problems.push_back("lattice bounds out of order");
  const auto dim = static_cast<std::size_t>(xi_dimension(stepper_model(s.stepper)));
  for (const auto& seed : s.seeds) {
    if (seed.size() != dim) {
      problems.push_back("seed of dimension " + std::to_string(seed.size()) + " for a map of dimension " +
                         std::to_string(dim));
      break;
    }
  }
  if (!problems.empty()) {
    std::string msg = "fixed-point search invalid:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidArgument(msg);
  }
}

std::optional<Point> solve_double(const FixedPointSearch& s, const RgMap<double>& map, const Point& start) {
  const ModelKind kind = map.model();
  const auto root = newton<double>(map, to_xi<double>(kind, start), 1e-7, 1e-12, 1e-10, s.max_iterations);
  if (!root) return std::nullopt;
  return root->values();
}

FixedPointCensus finish(const FixedPointSearch& s, const std::vector<std::optional<Point>>& solved) {
  FixedPointCensus census;
  census.starts = static_cast<int>(solved.size());
  const auto map = RgMap<Float256>(s.stepper, Float256(s.g), Float256(0), s.N);
  const ModelKind kind = map.model();

  // cluster the double-precision roots tightly, then polish one point per cluster
  std::vector<Candidate> clusters;
  for (const auto& r : solved) {
    if (!r) continue;
    ++census.converged;
    bool merged = false;
    for (auto& c : clusters) {
      if (inf_distance(c.x, *r) < 1e-10) {
        ++c.hits;
        merged = true;
        break;
      }
    }
    if (!merged) clusters.push_back({*r, 1});
  }

  const Float256 eps("1e-30");
  const Float256 goal("1e-60");
  const Float256 accept("1e-40");
  for (const auto& c : clusters) {
    const auto polished = newton<Float256>(map, to_xi<Float256>(kind, c.x), eps, goal, accept, 40);
    if (!polished) {
      census.rejected += c.hits;
      continue;
    }
    const double res = to_double(residual_norm(map, *polished));
    if (!(res < s.residual_tolerance)) {
      census.rejected += c.hits;
      continue;
    }
    Point loc;
    for (std::size_t i = 0; i < polished->size(); ++i) loc.push_back(to_double((*polished)[i]));
    bool duplicate = false;
    for (auto& rec : census.roots) {
      if (inf_distance(rec.location, loc) < s.dedup_radius) {
        rec.hits += c.hits;
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    const auto jac = numeric_jacobian(map, *polished, eps);
    std::vector<std::vector<double>> jd(jac.size(), std::vector<double>(jac.size()));
    for (std::size_t i = 0; i < jac.size(); ++i) {
      for (std::size_t j = 0; j < jac.size(); ++j) jd[i][j] = to_double(jac[i][j]);
    }
    FixedPointRecord rec;
    rec.location = loc;
    rec.eigenvalues = eigenvalues(jd);
    rec.stability = classify(rec.eigenvalues);
    rec.residual = res;
    rec.hits = c.hits;
    census.roots.push_back(std::move(rec));
  }
  std::sort(census.roots.begin(), census.roots.end(), [](const auto& a, const auto& b) {
    if (a.stability != b.stability) return a.stability < b.stability;
    return a.location < b.location;
  });
  return census;
}

}  // namespace

std::vector<std::vector<double>> search_starts(const FixedPointSearch& s) {
  check_search(s);
  const ModelKind kind = stepper_model(s.stepper);
  const int dim = xi_dimension(kind);
  const int pts = s.lattice_points > 0 ? s.lattice_points : default_lattice(dim);
  std::vector<double> axis(pts);
  for (int i = 0; i < pts; ++i) axis[i] = s.lattice_lo + (s.lattice_hi - s.lattice_lo) * i / (pts - 1);

  std::vector<std::vector<double>> starts;
  long total = 1;
  for (int i = 0; i < dim; ++i) total *= pts;
  starts.reserve(static_cast<std::size_t>(total) + s.seeds.size() + 3);
  for (long idx = 0; idx < total; ++idx) {
    std::vector<double> x(dim);
    long rest = idx;
    for (int i = 0; i < dim; ++i) {
      x[i] = axis[rest % pts];
      rest /= pts;
    }
    starts.push_back(std::move(x));
  }
  starts.emplace_back(dim, 1.0);
  if (s.stepper == Stepper::ApproxQuartic) {
    const auto pair = analytic_pair(s.g * s.N);
    starts.push_back(pair.plus.values());
    starts.push_back(pair.minus.values());
  }
  for (const auto& seed : s.seeds) starts.push_back(seed);
  return starts;
}

FixedPointCensus find_numeric_serial(const FixedPointSearch& search) {
  const auto starts = search_starts(search);
  const auto map = RgMap<double>(search.stepper, search.g, 0.0, search.N);
  std::vector<std::optional<Point>> solved(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i) solved[i] = solve_double(search, map, starts[i]);
  return finish(search, solved);
}

FixedPointCensus find_numeric(const FixedPointSearch& search) {
  const auto starts = search_starts(search);
  const auto map = RgMap<double>(search.stepper, search.g, 0.0, search.N);
  std::vector<std::optional<Point>> solved(starts.size());
  const auto count = static_cast<long>(starts.size());
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < count; ++i) solved[i] = solve_double(search, map, starts[i]);
  return finish(search, solved);
}

}  // namespace spiralrg

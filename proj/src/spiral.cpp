#include "spiralrg/spiral.hpp"

#include <numeric>

namespace spiralrg {

double dispersion(const std::vector<double>& values) {
  if (values.empty()) throw InvalidArgument("dispersion: empty sample");
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  if (mean == 0.0) throw DivisionByZero("dispersion: zero mean");
  return std::sqrt(var / n) / mean;
}

bool is_monotone(const std::vector<double>& values) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] < values[i - 1]) up = false;
    if (values[i] > values[i - 1]) down = false;
  }
  return up || down;
}

int settled_from(const std::vector<double>& f, double tol) {
  int start = -1;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (std::abs(f[i] - 1.0) < tol) {
      if (start < 0) start = static_cast<int>(i);
    } else {
      start = -1;
    }
  }
  return start;
}

int longest_run_near_one(const std::vector<double>& f, double tol) {
  int best = 0;
  int run = 0;
  for (double v : f) {
    run = std::abs(v - 1.0) < tol ? run + 1 : 0;
    best = std::max(best, run);
  }
  return best;
}

std::string to_string(TrajectoryClass c) {
  switch (c) {
    case TrajectoryClass::Converges:
      return "converges";
    case TrajectoryClass::JumpThenConverges:
      return "jump_then_converges";
    case TrajectoryClass::ConeTrapped:
      return "cone_trapped";
  }
  return "unknown";
}

}  // namespace spiralrg

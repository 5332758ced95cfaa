#include "spiralrg/decimation.hpp"

#include <algorithm>
#include <cctype>

namespace spiralrg {

std::string to_string(Parity parity) {
  switch (parity) {
    case Parity::Even:
      return "even";
    case Parity::Odd:
      return "odd";
    case Parity::Both:
      return "both";
  }
  return "unknown";
}

Parity parse_parity(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "even") return Parity::Even;
  if (lower == "odd") return Parity::Odd;
  if (lower == "both") return Parity::Both;
  throw InvalidArgument("unknown parity '" + name + "' (expected even, odd or both)");
}

void validate(const DecimationSettings& settings, ModelKind kind, int cutoff) {
  std::vector<std::string> problems;
  const int n = settings.target_cutoff;
  if (n < half_bandwidth(kind)) {
    problems.push_back("target cutoff " + std::to_string(n) + " is below the band width " +
                       std::to_string(half_bandwidth(kind)));
  }
  if (n > cutoff) {
    problems.push_back("target cutoff " + std::to_string(n) + " exceeds matrix cutoff " + std::to_string(cutoff));
  }
  if (separates_parity(kind) && settings.parity != Parity::Both) {
    const bool even = n % 2 == 0;
    if (even != (settings.parity == Parity::Even)) {
      problems.push_back("target cutoff " + std::to_string(n) + " is not in the " + to_string(settings.parity) +
                         " sector");
    }
  }
  if (!(settings.pivot_tolerance >= 0.0)) problems.push_back("pivot tolerance must be non-negative");
  if (!std::isfinite(settings.E)) problems.push_back("reference energy must be finite");
  if (!problems.empty()) {
    std::string msg = "decimation settings invalid:";
    for (const auto& p : problems) msg += " " + p + ";";
    throw InvalidArgument(msg);
  }
}

namespace detail {

const std::vector<CornerEntry>& corner_layout(ModelKind kind) {
  static const std::vector<CornerEntry> quartic{{0, 0}, {2, 2}, {0, 2}};
  static const std::vector<CornerEntry> sextic{{0, 0}, {2, 2}, {4, 4}, {0, 2}, {0, 4}, {2, 4}};
  static const std::vector<CornerEntry> ssb{{0, 0}, {1, 1}, {2, 2}, {3, 3}, {0, 1},
                                            {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  switch (kind) {
    case ModelKind::Quartic:
      return quartic;
    case ModelKind::Sextic:
      return sextic;
    case ModelKind::SSB:
      return ssb;
  }
  return quartic;
}

}  // namespace detail

}  // namespace spiralrg

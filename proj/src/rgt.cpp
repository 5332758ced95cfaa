#include "spiralrg/rgt.hpp"

#include <algorithm>
#include <cctype>

namespace spiralrg {

std::string to_string(Stepper stepper) {
  switch (stepper) {
    case Stepper::ExactQuartic:
      return "exact";
    case Stepper::ApproxQuartic:
      return "approx";
    case Stepper::SexticLargeN:
      return "sextic";
    case Stepper::SsbLargeN:
      return "ssb";
  }
  return "unknown";
}

Stepper parse_stepper(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "exact") return Stepper::ExactQuartic;
  if (lower == "approx") return Stepper::ApproxQuartic;
  if (lower == "sextic") return Stepper::SexticLargeN;
  if (lower == "ssb") return Stepper::SsbLargeN;
  throw InvalidArgument("unknown stepper '" + name + "' (expected exact, approx, sextic or ssb)");
}

ModelKind stepper_model(Stepper stepper) {
  switch (stepper) {
    case Stepper::SexticLargeN:
      return ModelKind::Sextic;
    case Stepper::SsbLargeN:
      return ModelKind::SSB;
    default:
      return ModelKind::Quartic;
  }
}

int stepper_stride(Stepper stepper) {
  return rg_stride(stepper_model(stepper));
}

bool stepper_is_autonomous(Stepper stepper) {
  return stepper != Stepper::ExactQuartic;
}

std::vector<std::string> check(const FlowParams& p) {
  std::vector<std::string> problems;
  if (!(p.g > 0.0) || !std::isfinite(p.g)) problems.push_back("g must be positive and finite");
  if (!std::isfinite(p.E)) problems.push_back("E must be finite");
  if (p.N < 1) problems.push_back("N must be positive");
  if (p.n_final < 0) problems.push_back("n_final must be non-negative");
  if (p.n_final > p.N) problems.push_back("n_final must not exceed N");
  const int stride = stepper_stride(p.stepper);
  if (p.n_final <= p.N && (p.N - p.n_final) % stride != 0) {
    problems.push_back("N - n_final must be a multiple of the stride " + std::to_string(stride));
  }
  if (p.stepper == Stepper::ExactQuartic && p.N < kExactQuarticFloor) {
    problems.push_back("exact recursion needs N >= " + std::to_string(kExactQuarticFloor));
  }
  if (!is_supported_precision(p.precision_bits)) {
    problems.push_back("unsupported precision " + std::to_string(p.precision_bits) + " bits");
  }
  if (!(p.denominator_tolerance >= 0.0)) problems.push_back("denominator tolerance must be non-negative");
  return problems;
}

void validate(const FlowParams& params) {
  const auto problems = check(params);
  if (problems.empty()) return;
  std::string msg = "flow parameters invalid:";
  for (const auto& p : problems) msg += " " + p + ";";
  throw InvalidArgument(msg);
}

std::string to_string(EventKind kind) {
  switch (kind) {
    case EventKind::DenominatorSignChange:
      return "denominator_sign_change";
    case EventKind::PivotJump:
      return "pivot_jump";
    case EventKind::ValidityFloor:
      return "validity_floor";
  }
  return "unknown";
}

}  // namespace spiralrg

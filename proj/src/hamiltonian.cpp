#include "spiralrg/hamiltonian.hpp"

#include <algorithm>
#include <cctype>

namespace spiralrg {

std::string to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Quartic:
      return "quartic";
    case ModelKind::Sextic:
      return "sextic";
    case ModelKind::SSB:
      return "ssb";
  }
  return "unknown";
}

ModelKind parse_model_kind(const std::string& name) {
  std::string lower = name;
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "quartic") return ModelKind::Quartic;
  if (lower == "sextic") return ModelKind::Sextic;
  if (lower == "ssb") return ModelKind::SSB;
  throw InvalidArgument("unknown variant '" + name + "' (expected quartic, sextic or ssb)");
}

void validate(const ModelVariant& variant) {
  if (!(variant.g > 0.0) || !std::isfinite(variant.g)) {
    throw InvalidArgument("coupling g must be positive and finite");
  }
}

int half_bandwidth(ModelKind kind) {
  return kind == ModelKind::Sextic ? 6 : 4;
}

bool separates_parity(ModelKind kind) {
  return kind != ModelKind::SSB;
}

int xi_dimension(ModelKind kind) {
  switch (kind) {
    case ModelKind::Quartic:
      return 3;
    case ModelKind::Sextic:
      return 6;
    case ModelKind::SSB:
      return 10;
  }
  return 0;
}

int rg_stride(ModelKind kind) {
  return separates_parity(kind) ? 2 : 1;
}

double position_power_element(int m, int k, int l) {
  return detail::position_power_element_t<double>(m, k, l);
}

double ssb_coupling_from_potential(double A, double B) {
  if (!(A > 0.0) || !(B > 0.0)) throw InvalidArgument("ssb_coupling_from_potential: A and B must be positive");
  return std::sqrt(B) / std::pow(8.0 * A, 0.75);
}

double interaction_diagonal(const ModelVariant& variant, int n) {
  validate(variant);
  switch (variant.kind) {
    case ModelKind::Quartic:
      return variant.g * position_power_element(4, n, n);
    case ModelKind::Sextic:
      return variant.g * position_power_element(6, n, n);
    case ModelKind::SSB:
      return variant.g * variant.g * position_power_element(4, n, n);
  }
  return 0.0;
}

}  // namespace spiralrg

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spiralrg/decimation.hpp"
#include "spiralrg/hamiltonian.hpp"
#include "spiralrg/io.hpp"
#include "spiralrg/rgt.hpp"

namespace spiralrg::cli {

enum class Preset { None, Fig1, Fig2, Fig3 };

std::string to_string(Preset p);
Preset parse_preset(const std::string& name);

/// Raw request as given on the command line and/or in a config file.
/// Unset fields take per-command defaults in resolve().
struct RunConfig {
  std::string command;
  std::optional<std::string> variant;
  std::optional<std::string> stepper;
  std::optional<std::string> parity;
  std::optional<std::string> preset;
  std::optional<std::string> seeds;     // "a,b,c;d,e,f"
  std::optional<std::string> xi_start;  // "1,1,1"
  std::optional<std::string> format;    // build: triplets | grid
  std::optional<double> g;
  std::optional<double> E;
  std::optional<double> tol;
  std::optional<int> N;
  std::optional<int> n_final;
  std::optional<int> precision_bits;
  std::optional<int> count;
  std::optional<int> lattice;
  std::optional<int> k_min;
  std::optional<int> k_max;
  std::optional<int> reference_top;
  std::string out;
  bool timestamp = true;
};

/// Keys accepted in a config file; they match the field names above.
const std::vector<std::string>& config_keys();

/// Copies file values into fields that are still unset, so flags win.
/// All unknown keys and malformed values are reported together.
void apply_config(RunConfig& cfg, const KeyValueConfig& file);

const std::vector<std::string>& commands();

/// Fully resolved parameters of one command.
struct Settings {
  std::string command;
  Preset preset = Preset::None;
  ModelKind variant = ModelKind::Quartic;
  Stepper stepper = Stepper::ExactQuartic;
  Parity parity = Parity::Even;
  double g = 1.0;
  double E = 0.0;
  double tol = 1e-10;
  int N = 1000;
  int n_final = 8;
  int precision_bits = kDefaultPrecisionBits;
  int count = 1;
  int lattice = 0;
  int k_min = 0;
  int k_max = -1;
  int reference_top = 0;
  std::string format = "triplets";
  std::string xi_start;
  std::vector<std::vector<double>> seeds;
  bool timestamp = true;
  ParamEcho echo;  // what goes into every output header
};

/// Applies defaults and presets, then validates. Throws InvalidArgument
/// naming every violated constraint.
Settings resolve(const RunConfig& cfg);

struct Artifact {
  std::string name;  // default file name
  std::string content;
};

std::vector<Artifact> run(const Settings& s);

/// Process exit status for an error category.
int exit_code(const std::string& category);

}  // namespace spiralrg::cli

#include <cstdlib>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "spiralrg/cli.hpp"
#include "spiralrg/errors.hpp"
#include "spiralrg/io.hpp"

namespace fs = std::filesystem;
using namespace spiralrg;

namespace {

void add_common_options(CLI::App& sub, cli::RunConfig& cfg, std::string& config_path) {
  sub.add_option("--config", config_path, "key=value file; flags given here take precedence");
  sub.add_option("--variant", cfg.variant, "model: quartic, sextic, ssb");
  sub.add_option("--stepper", cfg.stepper, "recursion: exact, approx, sextic, ssb");
  sub.add_option("--g", cfg.g, "coupling");
  sub.add_option("--E", cfg.E, "reference energy");
  sub.add_option("--N", cfg.N, "initial cutoff");
  sub.add_option("--n-final", cfg.n_final, "final cutoff");
  sub.add_option("--precision-bits", cfg.precision_bits, "53, 128, 256 or 512");
  sub.add_option("--parity", cfg.parity, "even, odd or both");
  sub.add_option("--preset", cfg.preset, "figure preset: fig1, fig2, fig3");
  sub.add_option("--seeds", cfg.seeds, "Newton seeds, 'a,b,c;d,e,f'");
  sub.add_option("--xi-start", cfg.xi_start, "initial xi, comma separated");
  sub.add_option("--format", cfg.format, "build output: triplets or grid");
  sub.add_option("--tol", cfg.tol, "eigenvalue bisection tolerance");
  sub.add_option("--count", cfg.count, "number of eigenvalues");
  sub.add_option("--lattice", cfg.lattice, "Newton start points per axis (0 = automatic)");
  sub.add_option("--k-min", cfg.k_min, "first spiral frame");
  sub.add_option("--k-max", cfg.k_max, "last spiral frame");
  sub.add_option("--reference-top", cfg.reference_top, "cutoff the floating reference starts from");
  sub.add_option("--out", cfg.out, "output file, or directory for several files");
  sub.add_flag("!--no-timestamp", cfg.timestamp, "omit the timestamp header line");
}

// With several artifacts, or no explicit file, the target is a directory.
void emit(const std::vector<cli::Artifact>& artifacts, const std::string& out) {
  std::string dir = out;
  if (dir.empty()) {
    if (const char* env = std::getenv("SPIRALRG_OUT_DIR")) dir = env;
  }
  if (dir.empty() && artifacts.size() == 1) {
    std::cout << artifacts.front().content;
    return;
  }
  const bool single_file = artifacts.size() == 1 && !out.empty() && !fs::is_directory(out) && out.back() != '/';
  if (single_file) {
    write_atomic(out, artifacts.front().content);
    std::cerr << "wrote " << out << '\n';
    return;
  }
  if (dir.empty()) dir = ".";
  for (const auto& a : artifacts) {
    const fs::path path = fs::path(dir) / a.name;
    write_atomic(path, a.content);
    std::cerr << "wrote " << path.string() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Renormalization-group flows of cutoff oscillator Hamiltonians"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  cli::RunConfig cfg;
  std::string config_path;
  const std::vector<std::pair<std::string, std::string>> help{
      {"build", "write the truncated Hamiltonian matrix"},
      {"decimate", "eliminate rows and extract xi at every step"},
      {"flow", "run an RG recursion and write its trace"},
      {"fixed-points", "multi-start Newton search for fixed points"},
      {"spiral", "spiral coordinates around the floating fixed point"},
      {"spectrum", "lowest eigenvalues of the truncated Hamiltonian"},
      {"verify", "renormalized vs plain-cutoff ground energy"},
      {"figure", "reproduce a figure dataset (--preset fig1|fig2|fig3)"},
  };
  for (const auto& [name, text] : help) {
    auto* sub = app.add_subcommand(name, text);
    add_common_options(*sub, cfg, config_path);
    sub->callback([&cfg, name = name] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return 0;
    std::cerr << "error: category=invalid_argument\n";
    return cli::exit_code("invalid_argument");
  }

  try {
    if (!config_path.empty()) cli::apply_config(cfg, load_config(config_path));
    const auto settings = cli::resolve(cfg);
    emit(cli::run(settings), cfg.out);
  } catch (const Error& e) {
    std::cerr << "error: category=" << e.category() << " message=" << e.what() << '\n';
    return cli::exit_code(e.category());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: category=io_error message=" << e.what() << '\n';
    return cli::exit_code("io_error");
  } catch (const std::exception& e) {
    std::cerr << "error: category=internal message=" << e.what() << '\n';
    return cli::exit_code("internal");
  }
  return 0;
}

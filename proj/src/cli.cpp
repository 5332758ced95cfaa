#include "spiralrg/cli.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <sstream>

#include "spiralrg/eigensolver.hpp"
#include "spiralrg/figures.hpp"
#include "spiralrg/fixedpoints.hpp"
#include "spiralrg/precision.hpp"
#include "spiralrg/spiral.hpp"

namespace spiralrg::cli {

std::string to_string(Preset p) {
  switch (p) {
    case Preset::None:
      return "none";
    case Preset::Fig1:
      return "fig1";
    case Preset::Fig2:
      return "fig2";
    case Preset::Fig3:
      return "fig3";
  }
  return "none";
}

Preset parse_preset(const std::string& name) {
  if (name == "none") return Preset::None;
  if (name == "fig1") return Preset::Fig1;
  if (name == "fig2") return Preset::Fig2;
  if (name == "fig3") return Preset::Fig3;
  throw InvalidArgument("unknown preset '" + name + "' (expected none, fig1, fig2, fig3)");
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names{"build", "decimate", "flow", "fixed-points", "spiral",
                                              "spectrum", "verify", "figure"};
  return names;
}

namespace {

template <class T>
bool parse_number(const std::string& text, T& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

using Setter = std::function<bool(RunConfig&, const std::string&)>;

template <class T>
Setter number_setter(std::optional<T> RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v) {
    T x{};
    if (!parse_number(v, x)) return false;
    if (!(c.*field)) c.*field = x;
    return true;
  };
}

Setter text_setter(std::optional<std::string> RunConfig::*field) {
  return [field](RunConfig& c, const std::string& v) {
    if (!(c.*field)) c.*field = v;
    return true;
  };
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table{
      {"variant", text_setter(&RunConfig::variant)},
      {"stepper", text_setter(&RunConfig::stepper)},
      {"parity", text_setter(&RunConfig::parity)},
      {"preset", text_setter(&RunConfig::preset)},
      {"seeds", text_setter(&RunConfig::seeds)},
      {"xi_start", text_setter(&RunConfig::xi_start)},
      {"format", text_setter(&RunConfig::format)},
      {"g", number_setter(&RunConfig::g)},
      {"E", number_setter(&RunConfig::E)},
      {"tol", number_setter(&RunConfig::tol)},
      {"N", number_setter(&RunConfig::N)},
      {"n_final", number_setter(&RunConfig::n_final)},
      {"precision_bits", number_setter(&RunConfig::precision_bits)},
      {"count", number_setter(&RunConfig::count)},
      {"lattice", number_setter(&RunConfig::lattice)},
      {"k_min", number_setter(&RunConfig::k_min)},
      {"k_max", number_setter(&RunConfig::k_max)},
      {"reference_top", number_setter(&RunConfig::reference_top)},
  };
  return table;
}

std::string num(double x) { return format_real(x); }

std::string join_problems(const std::string& what, const std::vector<std::string>& problems) {
  std::string msg = what;
  for (const auto& p : problems) msg += " " + p + ";";
  return msg;
}

// Collects the message of a validator that throws InvalidArgument.
template <class Fn>
void collect(std::vector<std::string>& problems, Fn&& fn) {
  try {
    fn();
  } catch (const InvalidArgument& e) {
    std::string msg = e.what();
    while (!msg.empty() && msg.back() == ';') msg.pop_back();
    problems.push_back(msg);
  }
}

Stepper stepper_for(ModelKind kind) {
  switch (kind) {
    case ModelKind::Quartic:
      return Stepper::ExactQuartic;
    case ModelKind::Sextic:
      return Stepper::SexticLargeN;
    case ModelKind::SSB:
      return Stepper::SsbLargeN;
  }
  return Stepper::ExactQuartic;
}

std::string seeds_text(const std::vector<std::vector<double>>& seeds) {
  std::string out;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (i) out += ';';
    for (std::size_t j = 0; j < seeds[i].size(); ++j) {
      if (j) out += ',';
      out += num(seeds[i][j]);
    }
  }
  return out;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

void apply_config(RunConfig& cfg, const KeyValueConfig& file) {
  std::vector<std::string> problems;
  for (const auto& [key, value] : file.values) {
    const auto it = setters().find(key);
    if (it == setters().end()) {
      problems.push_back("unknown key '" + key + "'");
    } else if (!it->second(cfg, value)) {
      problems.push_back("bad value '" + value + "' for " + key);
    }
  }
  if (!problems.empty()) throw InvalidArgument(join_problems("config " + file.source + " invalid:", problems));
}

Settings resolve(const RunConfig& cfg) {
  Settings s;
  std::vector<std::string> problems;
  s.command = cfg.command;
  s.timestamp = cfg.timestamp;
  if (std::find(commands().begin(), commands().end(), cfg.command) == commands().end()) {
    throw InvalidArgument("unknown command '" + cfg.command + "'");
  }

  collect(problems, [&] { s.preset = parse_preset(cfg.preset.value_or("none")); });
  collect(problems, [&] { s.variant = parse_model_kind(cfg.variant.value_or("quartic")); });
  collect(problems, [&] { s.parity = parse_parity(cfg.parity.value_or("even")); });
  if (cfg.stepper) {
    collect(problems, [&] { s.stepper = parse_stepper(*cfg.stepper); });
  } else {
    s.stepper = stepper_for(s.variant);
  }
  if (cfg.seeds) collect(problems, [&] { s.seeds = parse_seed_list(*cfg.seeds); });
  if (cfg.xi_start) collect(problems, [&] { parse_real_list(*cfg.xi_start); });
  s.xi_start = cfg.xi_start.value_or("");
  s.format = cfg.format.value_or("triplets");
  s.tol = cfg.tol.value_or(1e-10);
  s.E = cfg.E.value_or(0.0);
  s.count = cfg.count.value_or(1);
  s.lattice = cfg.lattice.value_or(0);

  auto& echo = s.echo;
  const std::string& c = s.command;

  if (c == "figure" || s.preset != Preset::None) {
    if (c != "figure") problems.push_back("presets are only used by the figure command");
    if (s.preset == Preset::None) problems.push_back("figure needs --preset fig1, fig2 or fig3");
    // presets pin everything except the arithmetic precision
    const std::vector<std::pair<const char*, bool>> pinned{
        {"variant", cfg.variant.has_value()}, {"stepper", cfg.stepper.has_value()}, {"g", cfg.g.has_value()},
        {"E", cfg.E.has_value()},             {"N", cfg.N.has_value()},             {"n_final", cfg.n_final.has_value()},
        {"seeds", cfg.seeds.has_value()},     {"xi_start", cfg.xi_start.has_value()}, {"k_min", cfg.k_min.has_value()},
        {"k_max", cfg.k_max.has_value()},     {"reference_top", cfg.reference_top.has_value()}};
    for (const auto& [key, given] : pinned) {
      if (given) problems.push_back(std::string(key) + " is fixed by the preset");
    }
    echo.emplace_back("preset", to_string(s.preset));
    if (s.preset == Preset::Fig1 || s.preset == Preset::Fig2) {
      const SpiralPreset p;
      s.stepper = Stepper::ExactQuartic;
      s.g = p.g;
      s.E = p.E;
      s.N = p.N;
      s.k_min = p.k_min;
      s.k_max = p.k_max;
      s.n_final = p.N - 2 * p.k_max;
      s.reference_top = p.reference_top;
      s.precision_bits = cfg.precision_bits.value_or(p.precision_bits);
      s.xi_start = "1,1,1";
      echo.insert(echo.end(), {{"stepper", to_string(s.stepper)},
                               {"g", num(s.g)},
                               {"E", num(s.E)},
                               {"N", std::to_string(s.N)},
                               {"xi_start", s.xi_start},
                               {"reference_top", std::to_string(s.reference_top)},
                               {"k_min", std::to_string(s.k_min)},
                               {"k_max", std::to_string(s.k_max)}});
    } else if (s.preset == Preset::Fig3) {
      const ProjectionPreset p;
      const FlowParams fp = projection_params(p);
      s.stepper = fp.stepper;
      s.g = fp.g;
      s.N = fp.N;
      s.n_final = fp.n_final;
      s.precision_bits = cfg.precision_bits.value_or(p.precision_bits);
      std::string seeds;
      for (const auto& seed : p.seeds) {
        seeds += (seeds.empty() ? "" : ";") + seed.name + ":" + seed.offset[0] + "," + seed.offset[1] + "," +
                 seed.offset[2];
      }
      echo.insert(echo.end(), {{"stepper", to_string(s.stepper)},
                               {"six_gN", num(p.six_gN)},
                               {"N", std::to_string(s.N)},
                               {"n_final", std::to_string(s.n_final)},
                               {"seed_offsets", seeds},
                               {"seed_scale", p.scale}});
    }
    if (!is_supported_precision(s.precision_bits)) {
      problems.push_back("unsupported precision " + std::to_string(s.precision_bits) + " bits");
    }
    echo.emplace_back("precision_bits", std::to_string(s.precision_bits));
  } else if (c == "build") {
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(20);
    if (s.format != "triplets" && s.format != "grid") problems.push_back("format must be triplets or grid");
    collect(problems, [&] { validate(ModelVariant{s.variant, s.g}); });
    if (s.N < kMinimumCutoff) problems.push_back("N must be at least " + std::to_string(kMinimumCutoff));
    echo = {{"variant", to_string(s.variant)}, {"g", num(s.g)}, {"N", std::to_string(s.N)}, {"format", s.format}};
  } else if (c == "decimate") {
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(100);
    s.n_final = cfg.n_final.value_or(10);
    s.precision_bits = cfg.precision_bits.value_or(53);
    if (s.parity == Parity::Both) problems.push_back("decimate traces one parity sector (even or odd)");
    collect(problems, [&] { validate(ModelVariant{s.variant, s.g}); });
    collect(problems, [&] { validate(DecimationSettings{s.E, s.n_final, s.parity}, s.variant, s.N); });
    if (s.N < kMinimumCutoff) problems.push_back("N must be at least " + std::to_string(kMinimumCutoff));
    if (!is_supported_precision(s.precision_bits)) {
      problems.push_back("unsupported precision " + std::to_string(s.precision_bits) + " bits");
    }
    echo = {{"variant", to_string(s.variant)}, {"g", num(s.g)},
            {"E", num(s.E)},                   {"N", std::to_string(s.N)},
            {"n_final", std::to_string(s.n_final)}, {"parity", to_string(s.parity)},
            {"precision_bits", std::to_string(s.precision_bits)}};
  } else if (c == "flow") {
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(1000);
    s.n_final = cfg.n_final.value_or(8);
    s.precision_bits = cfg.precision_bits.value_or(kDefaultPrecisionBits);
    FlowParams fp{s.g, s.E, s.N, s.n_final, s.precision_bits, s.stepper};
    for (const auto& p : check(fp)) problems.push_back(p);
    const std::size_t dim = static_cast<std::size_t>(xi_dimension(stepper_model(s.stepper)));
    if (s.xi_start.empty()) {
      for (std::size_t i = 0; i < dim; ++i) s.xi_start += i ? ",1" : "1";
    } else {
      collect(problems, [&] {
        if (parse_real_list(s.xi_start).size() != dim) {
          throw InvalidArgument("xi_start needs " + std::to_string(dim) + " components");
        }
      });
    }
    echo = {{"stepper", to_string(s.stepper)}, {"g", num(s.g)},
            {"E", num(s.E)},                   {"N", std::to_string(s.N)},
            {"n_final", std::to_string(s.n_final)}, {"precision_bits", std::to_string(s.precision_bits)},
            {"xi_start", s.xi_start}};
  } else if (c == "fixed-points") {
    if (!cfg.stepper && s.variant == ModelKind::Quartic) s.stepper = Stepper::ApproxQuartic;
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(1000);
    FixedPointSearch fs;
    fs.stepper = s.stepper;
    fs.N = s.N;
    fs.g = s.g;
    fs.seeds = s.seeds;
    fs.lattice_points = s.lattice;
    collect(problems, [&] { search_starts(fs); });
    echo = {{"stepper", to_string(s.stepper)}, {"g", num(s.g)},
            {"N", std::to_string(s.N)},         {"lattice", std::to_string(s.lattice)},
            {"seeds", seeds_text(s.seeds)}};
  } else if (c == "spiral") {
    s.stepper = Stepper::ExactQuartic;
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(1000);
    s.k_max = cfg.k_max.value_or(200);
    s.k_min = cfg.k_min.value_or(0);
    s.reference_top = cfg.reference_top.value_or(s.N + 200);
    s.precision_bits = cfg.precision_bits.value_or(kDefaultPrecisionBits);
    s.n_final = s.N - 2 * s.k_max;
    if (cfg.n_final) problems.push_back("spiral takes k_max instead of n_final");
    if (s.k_min < 0 || s.k_min > s.k_max) problems.push_back("need 0 <= k_min <= k_max");
    if (s.n_final < kExactQuarticFloor) problems.push_back("k_max runs the flow below the validity floor");
    if (s.reference_top < s.N || (s.reference_top - s.N) % 2 != 0) {
      problems.push_back("reference_top must be >= N with an even difference");
    }
    FlowParams fp{s.g, s.E, s.N, s.n_final, s.precision_bits, s.stepper};
    for (const auto& p : check(fp)) {
      if (std::find(problems.begin(), problems.end(), p) == problems.end()) problems.push_back(p);
    }
    echo = {{"g", num(s.g)},
            {"E", num(s.E)},
            {"N", std::to_string(s.N)},
            {"reference_top", std::to_string(s.reference_top)},
            {"k_min", std::to_string(s.k_min)},
            {"k_max", std::to_string(s.k_max)},
            {"precision_bits", std::to_string(s.precision_bits)}};
  } else if (c == "spectrum") {
    s.g = cfg.g.value_or(1.0);
    s.N = cfg.N.value_or(200);
    s.count = cfg.count.value_or(5);
    collect(problems, [&] { validate(ModelVariant{s.variant, s.g}); });
    if (s.N < kMinimumCutoff) problems.push_back("N must be at least " + std::to_string(kMinimumCutoff));
    if (s.count < 1 || s.count > s.N + 1) problems.push_back("count must be in [1, N+1]");
    if (!(s.tol > 0.0)) problems.push_back("tol must be positive");
    echo = {{"variant", to_string(s.variant)}, {"g", num(s.g)},
            {"N", std::to_string(s.N)},         {"count", std::to_string(s.count)},
            {"tol", num(s.tol)}};
  } else if (c == "verify") {
    s.g = cfg.g.value_or(10.0);
    s.N = cfg.N.value_or(200);
    s.n_final = cfg.n_final.value_or(10);
    if (!(s.g > 0.0)) problems.push_back("g must be positive");
    if (s.n_final < half_bandwidth(ModelKind::Quartic) || s.n_final >= s.N) {
      problems.push_back("n_final must lie in [4, N)");
    }
    if (s.N < kMinimumCutoff) problems.push_back("N must be at least " + std::to_string(kMinimumCutoff));
    if (!(s.tol > 0.0)) problems.push_back("tol must be positive");
    echo = {{"g", num(s.g)},
            {"E", num(s.E)},
            {"N", std::to_string(s.N)},
            {"n_final", std::to_string(s.n_final)},
            {"tol", num(s.tol)}};
  }

  if (!problems.empty()) throw InvalidArgument(join_problems("configuration invalid:", problems));
  return s;
}

namespace {

std::string header(const Settings& s) { return header_block(s.command, s.echo, s.timestamp); }

template <class Real>
XiVector<Real> parse_xi(ModelKind kind, const std::string& text) {
  std::vector<Real> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(from_string<Real>(item));
  return XiVector<Real>(kind, std::move(v));
}

std::string event_text(const std::vector<FlowEvent>& events, int k) {
  std::string out;
  for (const auto& e : events) {
    if (e.k != k) continue;
    if (!out.empty()) out += '|';
    out += to_string(e.kind);
  }
  return out;
}

std::vector<Artifact> cmd_build(const Settings& s) {
  const auto m = build_matrix<double>(ModelVariant{s.variant, s.g}, s.N);
  std::ostringstream os;
  os << header(s);
  if (s.format == "grid") {
    write_dense_grid(os, m);
  } else {
    write_triplets_csv(os, m);
  }
  return {{"matrix.csv", os.str()}};
}

std::vector<Artifact> cmd_decimate(const Settings& s) {
  return with_precision(s.precision_bits, [&]<class Real>() -> std::vector<Artifact> {
    const auto m = build_matrix<Real>(ModelVariant{s.variant, s.g}, s.N);
    const auto frames = decimation_trace(m, DecimationSettings{s.E, s.n_final, s.parity}, s.variant);
    std::ostringstream os;
    os << header(s) << "k,n";
    for (int i = 1; i <= xi_dimension(s.variant); ++i) os << ",xi_" << i;
    os << ",pivot,event\n";
    for (const auto& f : frames) {
      os << f.step << ',' << f.cutoff;
      for (std::size_t i = 0; i < f.xi.size(); ++i) os << ',' << format_real(f.xi[i]);
      os << ',' << format_real(f.pivot) << ',' << (f.pivot_event ? "pivot_near_zero" : "") << '\n';
    }
    return {{"decimation.csv", os.str()}};
  });
}

template <class Real>
void write_trace_rows(std::ostream& os, const FlowTrace<Real>& trace) {
  for (const auto& f : trace.frames) {
    os << f.k << ',' << f.n;
    for (std::size_t i = 0; i < f.xi.size(); ++i) os << ',' << format_real(f.xi[i]);
    os << ',' << format_real(f.denominator) << ',' << event_text(trace.events, f.k) << '\n';
  }
}

std::vector<Artifact> cmd_flow(const Settings& s) {
  return with_precision(s.precision_bits, [&]<class Real>() -> std::vector<Artifact> {
    const FlowParams fp{s.g, s.E, s.N, s.n_final, s.precision_bits, s.stepper};
    const auto trace = run_flow(fp, parse_xi<Real>(stepper_model(s.stepper), s.xi_start));
    std::ostringstream os;
    os << header(s) << "k,n";
    for (int i = 1; i <= xi_dimension(stepper_model(s.stepper)); ++i) os << ",xi_" << i;
    os << ",d_value,event\n";
    write_trace_rows(os, trace);
    return {{"trace.csv", os.str()}};
  });
}

std::vector<Artifact> cmd_fixed_points(const Settings& s) {
  FixedPointSearch fs;
  fs.stepper = s.stepper;
  fs.N = s.N;
  fs.g = s.g;
  fs.seeds = s.seeds;
  fs.lattice_points = s.lattice;
  const auto census = find_numeric(fs);
  const int dim = xi_dimension(stepper_model(s.stepper));
  std::ostringstream os;
  os << header(s);
  os << "# starts=" << census.starts << " converged=" << census.converged << " rejected=" << census.rejected
     << " roots=" << census.roots.size() << '\n';
  os << "index,stability,residual,hits";
  for (int i = 1; i <= dim; ++i) os << ",xi_" << i;
  for (int i = 1; i <= dim; ++i) os << ",lambda_" << i << "_re,lambda_" << i << "_im";
  os << '\n';
  for (std::size_t r = 0; r < census.roots.size(); ++r) {
    const auto& root = census.roots[r];
    os << r << ',' << to_string(root.stability) << ',' << num(root.residual) << ',' << root.hits;
    for (double x : root.location) os << ',' << num(x);
    for (const auto& l : root.eigenvalues) os << ',' << num(l.real()) << ',' << num(l.imag());
    os << '\n';
  }
  return {{"fixed_points.csv", os.str()}};
}

template <class Real>
std::string frames_csv(const Settings& s, const std::vector<SpiralFrame<Real>>& frames) {
  std::ostringstream os;
  os << header(s);
  os << "k,n,dxi_1,dxi_2,dxi_3,alpha,beta,gamma,fig1_b,fig1_g,s1_b,s1_g,s2_b,s2_g,s3_b,s3_g,r_n,R\n";
  for (const auto& f : frames) {
    os << f.k << ',' << f.n;
    for (const auto& x : f.dxi) os << ',' << format_real(x);
    os << ',' << format_real(f.fixed.alpha) << ',' << format_real(f.fixed.beta) << ',' << format_real(f.fixed.gamma);
    for (const auto* p : {&f.fig1, &f.scaling1, &f.scaling2, &f.scaling3}) {
      os << ',' << format_real((*p)[0]) << ',' << format_real((*p)[1]);
    }
    os << ',' << format_real(f.r_n) << ',' << format_real(f.R) << '\n';
  }
  return os.str();
}

SpiralPreset spiral_preset(const Settings& s) {
  SpiralPreset p;
  p.N = s.N;
  p.g = s.g;
  p.E = s.E;
  p.reference_top = s.reference_top;
  p.k_min = s.k_min;
  p.k_max = s.k_max;
  p.precision_bits = s.precision_bits;
  return p;
}

std::vector<Artifact> cmd_spiral(const Settings& s, const std::string& name) {
  return with_precision(s.precision_bits, [&]<class Real>() -> std::vector<Artifact> {
    const auto run = run_spiral<Real>(spiral_preset(s));
    return {{name, frames_csv(s, run.frames)}};
  });
}

std::vector<Artifact> cmd_fig3(const Settings& s) {
  ProjectionPreset preset;
  preset.precision_bits = s.precision_bits;
  return with_precision(s.precision_bits, [&]<class Real>() -> std::vector<Artifact> {
    std::vector<Artifact> out;
    for (const auto& run : run_projection<Real>(preset)) {
      std::ostringstream os;
      os << header(s) << "# seed=" << run.name << '\n';
      os << "# classification=" << to_string(run.cone.classification) << '\n';
      os << "k,n,xi_1,xi_2,xi_3,d_value,f,h,law_error,event\n";
      for (std::size_t i = 0; i < run.trace.frames.size(); ++i) {
        const auto& fr = run.trace.frames[i];
        os << fr.k << ',' << fr.n;
        for (std::size_t j = 0; j < fr.xi.size(); ++j) os << ',' << format_real(fr.xi[j]);
        os << ',' << format_real(fr.denominator) << ',' << num(run.f[i]) << ',' << num(run.cone.h[i]) << ',';
        if (i < run.cone.law_error.size()) os << num(run.cone.law_error[i]);
        os << ',' << event_text(run.trace.events, fr.k) << '\n';
      }
      out.push_back({"fig3_" + run.name + ".csv", os.str()});
    }
    return out;
  });
}

std::vector<Artifact> cmd_spectrum(const Settings& s) {
  const auto m = build_matrix<double>(ModelVariant{s.variant, s.g}, s.N);
  const auto ev = lowest_eigenvalues(m, {s.count, s.tol});
  std::ostringstream os;
  os << header(s) << "index,eigenvalue\n";
  for (std::size_t i = 0; i < ev.size(); ++i) os << i << ',' << num(ev[i]) << '\n';
  return {{"spectrum.csv", os.str()}};
}

void report_lines(std::ostream& os, const RenormalizationReport& r, const std::string& prefix) {
  os << prefix << "e_full: " << num(r.e_full) << '\n';
  os << prefix << "e_renormalized: " << num(r.e_renorm) << '\n';
  os << prefix << "e_truncated: " << num(r.e_plain) << '\n';
  os << prefix << "rel_error_renormalized: " << num(r.err_renorm) << '\n';
  os << prefix << "rel_error_truncated: " << num(r.err_plain) << '\n';
  os << prefix << "error_ratio: " << num(r.ratio) << '\n';
}

std::vector<Artifact> cmd_verify(const Settings& s) {
  const auto primary = verify_renormalization(s.g, s.E, s.N, s.n_final, s.tol);
  std::ostringstream os;
  os << header(s);
  report_lines(os, primary, "");
  os << "rel_error_renormalized_percent: " << num(100.0 * primary.err_renorm) << '\n';
  for (double g : {5.0, 10.0, 20.0}) {
    const auto r = verify_renormalization(g, s.E, s.N, s.n_final, s.tol);
    report_lines(os, r, "sensitivity.g" + num(g) + ".");
  }
  return {{"verify.txt", os.str()}};
}

}  // namespace

std::vector<Artifact> run(const Settings& s) {
  const std::string& c = s.command;
  if (c == "build") return cmd_build(s);
  if (c == "decimate") return cmd_decimate(s);
  if (c == "flow") return cmd_flow(s);
  if (c == "fixed-points") return cmd_fixed_points(s);
  if (c == "spiral") return cmd_spiral(s, "spiral.csv");
  if (c == "spectrum") return cmd_spectrum(s);
  if (c == "verify") return cmd_verify(s);
  if (c == "figure") {
    if (s.preset == Preset::Fig3) return cmd_fig3(s);
    return cmd_spiral(s, to_string(s.preset) + ".csv");
  }
  throw InvalidArgument("unknown command '" + c + "'");
}

int exit_code(const std::string& category) {
  if (category == "invalid_argument") return 2;
  if (category == "io_error") return 4;
  if (category == "internal") return 1;
  return 3;  // numerical failure
}

}  // namespace spiralrg::cli

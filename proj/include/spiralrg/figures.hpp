#pragma once

#include <array>
#include <string>
#include <vector>

#include "spiralrg/fixedpoints.hpp"
#include "spiralrg/rgt.hpp"
#include "spiralrg/spiral.hpp"

namespace spiralrg {

/// Spiral around the floating fixed point (also feeds the three scaling panels).
struct SpiralPreset {
  int N = 1000;
  double g = 1.0;
  double E = 0.0;
  int reference_top = 1200;  // cutoff the reference sequence starts from
  int k_min = 8;
  int k_max = 200;
  int precision_bits = 256;
};

/// Approximate flows started next to the repulsive fixed point.
struct ProjectionPreset {
  double six_gN = 1000.0;
  int N = 1000;
  int steps = 500;
  int precision_bits = 512;
  struct Seed {
    std::string name;
    std::array<const char*, 3> offset;  // added to xi-, in units of `scale`
  };
  std::vector<Seed> seeds{{"black", {"1", "1", "1"}}, {"red", {"1", "1", "2"}}, {"blue", {"1", "1", "1.5"}}};
  const char* scale = "1e-6";
};

template <class Real>
struct SpiralRun {
  FlowTrace<Real> trace;
  std::vector<SpiralFrame<Real>> frames;
};

template <class Real>
SpiralRun<Real> run_spiral(const SpiralPreset& preset) {
  FlowParams params;
  params.g = preset.g;
  params.E = preset.E;
  params.N = preset.N;
  params.n_final = preset.N - 2 * preset.k_max;
  params.precision_bits = preset.precision_bits;
  params.stepper = Stepper::ExactQuartic;
  const Real g(preset.g);
  const Real E(preset.E);
  const FloatingReference<Real> ref(params.n_final, g, E, preset.reference_top, XiVector<Real>(ModelKind::Quartic));
  SpiralRun<Real> run;
  run.trace = run_flow(params, XiVector<Real>(ModelKind::Quartic));
  run.frames = build_frames(run.trace, ref, g, {preset.k_min, preset.k_max});
  return run;
}

template <class Real>
struct ProjectionRun {
  std::string name;
  FlowTrace<Real> trace;
  std::vector<double> f;
  ConeReport cone;
};

inline FlowParams projection_params(const ProjectionPreset& preset) {
  FlowParams params;
  params.stepper = Stepper::ApproxQuartic;
  params.N = preset.N;
  params.g = preset.six_gN / (6.0 * preset.N);
  params.n_final = preset.N - 2 * preset.steps;
  params.precision_bits = preset.precision_bits;
  return params;
}

template <class Real>
std::vector<ProjectionRun<Real>> run_projection(const ProjectionPreset& preset) {
  const FlowParams params = projection_params(preset);
  // fixed points from the very gN the map uses, so the seeds sit at the intended offsets
  const auto pair = analytic_pair(make_map<Real>(params).gN());
  const Real scale = from_string<Real>(preset.scale);
  std::vector<ProjectionRun<Real>> runs;
  for (const auto& s : preset.seeds) {
    XiVector<Real> seed = pair.minus;
    for (int i = 0; i < 3; ++i) seed[i] += from_string<Real>(s.offset[i]) * scale;
    ProjectionRun<Real> run;
    run.name = s.name;
    run.trace = run_flow(params, seed);
    for (const auto& x : projection_f(run.trace, pair.plus, pair.minus)) run.f.push_back(to_double(x));
    const std::vector<XiVector<Real>> minus(run.trace.frames.size(), pair.minus);
    run.cone = cone_classify(run.trace, minus, ConeVariant::Approximate);
    runs.push_back(std::move(run));
  }
  return runs;
}

}  // namespace spiralrg

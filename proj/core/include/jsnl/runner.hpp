#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "jsnl/config.hpp"
#include "jsnl/evolve.hpp"
#include "jsnl/grid.hpp"

namespace jsnl {

enum class Scenario { evolve, measures, potential, verify, separability, sweep };

Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario s);

struct RunConfig {
  Scenario scenario = Scenario::evolve;
  ConfigMap config;
  std::filesystem::path out_dir = "out";
  std::uint64_t seed = 0;
  bool strict = true;
};

/// Runs one scenario, writing its CSV outputs and a manifest echoing the
/// fully-resolved configuration. Returns the process exit code contribution:
/// 0 on success, 1 when a verification check fails. Configuration problems
/// raise Error (the CLI maps those to exit code 2).
int run_scenario(const RunConfig& rc);

/// Smooth, strictly positive, reproducible random density: a seeded
/// band-limited trigonometric polynomial, squared, offset and normalized.
DensityField random_density(const Grid& grid, std::uint64_t seed, int max_mode = 8);

struct SweepRow {
  double value = 0.0;
  double metric = 0.0;
  double ratio = 0.0;  // previous metric / this metric; NaN on the first row
};

struct SweepTable {
  std::string parameter;
  std::string metric_name;
  std::vector<SweepRow> rows;
  double fitted_order = 0.0;  // least-squares slope of log metric vs log value
};

/// Reruns the configured measurement at each parameter value (parameter is
/// one of l, dt, n, delta, pi) and reports metric, consecutive ratios, and
/// the fitted convergence order.
SweepTable run_sweep(const RunConfig& base, const std::string& parameter,
                     const std::vector<double>& values);

/// Shared construction of the 1D evolution setup from config keys
/// (grid.*, hbar, mass, l, pi, zeta_override, potential.*, dt, steps,
/// scheme, nonlinearity, record_every).
struct EvolveSetup {
  Grid grid;
  EvolutionConfig config;
  WaveField initial;
};
EvolveSetup build_evolve_setup(const ConfigMap& cfg);

}  // namespace jsnl

#pragma once

#include <utility>
#include <vector>

#include "jsnl/evolve.hpp"
#include "jsnl/grid.hpp"

namespace jsnl {

/// Configuration-space grid for n particles in d dimensions: n*d periodic
/// axes in row-major order (axis 0 slowest). Masses are per particle,
/// length scales per physical dimension; axis i (1-based) belongs to
/// particle ceil(i/d) and physical dimension ((i-1) mod d) + 1.
struct CompositeGrid {
  int n_particles = 0;
  int dims_per_particle = 0;
  std::vector<Grid> axes;
  std::vector<double> masses;
  std::vector<double> length_scales;

  int n_axes() const { return n_particles * dims_per_particle; }
  long total_points() const;
  long stride(int axis) const;  // 0-based axis
  double cell_volume() const;

  int particle_of_axis(int axis0) const { return axis0 / dims_per_particle; }     // 0-based
  int dimension_of_axis(int axis0) const { return axis0 % dims_per_particle; }    // 0-based

  static constexpr long kMaxPoints = 1L << 22;
};

CompositeGrid make_composite_grid(int n_particles, int dims_per_particle,
                                  std::vector<Grid> axes, std::vector<double> masses,
                                  std::vector<double> length_scales);

/// 1-based bookkeeping: axis i -> (particle ceil(i/d),
/// physical axis ((i-1) mod d) + 1).
std::pair<int, int> axis_maps(int i, const CompositeGrid& grid);

struct CompositeWave {
  CompositeGrid grid;
  std::vector<cplx> values;
};

double norm_squared(const CompositeWave& psi);
void normalize(CompositeWave& psi);
std::vector<double> density_of(const CompositeWave& psi);

/// Exact index rotation along one axis: samples of f(.., x_i + steps*dx, ..).
std::vector<double> axis_shift(std::span<const double> values, const CompositeGrid& grid,
                               int axis, int steps);

/// Spectral derivative along one axis of a real field; order 1 or 2. A
/// dealias fraction < 1 low-passes that axis before differentiating.
std::vector<double> axis_derivative(std::span<const double> values, const CompositeGrid& grid,
                                    int axis, int order, double dealias_fraction = 1.0);

enum class BohmForm { sqrt_rho, density_derivatives };

struct ManybodyTermOptions {
  double floor = kDensityFloor;
  double vacuum_rel = 1e-16;
  double dealias_fraction = 1.0;
  BohmForm bohm_form = BohmForm::sqrt_rho;
};

/// N(rho) = sum_i (zeta_i/2) ln[4 rho^2 / ((rho+rho_i)(rho+rho_{-i}))]
///        + sum_i hbar^2/(2 m_(i)) (d_i^2 sqrt(rho)) / sqrt(rho),
/// zeta_i = hbar^2 / (m_(i) l_[i]^2), with per-axis circular shifts. The
/// Bohm part defaults to the sqrt form; the density-derivative form
/// (hbar^2/8m)(2 d_i^2 rho / rho - (d_i rho)^2 / rho^2) is kept selectable
/// as an algebraic cross-check.
std::vector<double> manybody_nonlinear_term(std::span<const double> rho,
                                            const CompositeGrid& grid, double hbar,
                                            const ManybodyTermOptions& opts = {});

/// Reduced density of one particle (1-based), integrating |Psi|^2 over all
/// other particles' axes. Values are row-major over that particle's axes.
std::vector<double> reduced_density_values(const CompositeWave& psi, int particle);

/// d = 1 convenience form.
DensityField reduced_density(const CompositeWave& psi, int particle);

struct CompositeEvolutionConfig {
  double hbar = 1.0;
  double dt = 1e-3;
  long n_steps = 0;
  long record_every = 1;
  bool js_nonlinearity = true;
  std::vector<double> potential;  // values on the composite grid; empty = 0
  double floor = kDensityFloor;
  double vacuum_rel = 1e-16;
  double dealias_fraction = 1.0 / 3.0;
};

CompositeWave composite_strang_step(const CompositeWave& psi,
                                    const CompositeEvolutionConfig& cfg);

/// Conserved generator, the many-body analog of the 1D energy functional:
/// sum_i int flux_i^2/(2 m_(i) rho) + int V rho + sum_i zeta_i I_JS-term.
double composite_energy(const CompositeWave& psi, const CompositeEvolutionConfig& cfg);

struct CompositeEvolveResult {
  std::vector<CompositeWave> trajectory;
  std::vector<DiagnosticsRecord> diagnostics;
};

CompositeEvolveResult composite_evolve(const CompositeWave& psi0,
                                       const CompositeEvolutionConfig& cfg);

/// Gaussian wavepacket exp(-(x-x0)^2/(4 sigma^2) + i k0 x), normalized.
WaveField gaussian_wave(const Grid& grid, double x0, double sigma, double k0 = 0.0);

CompositeWave product_state(const CompositeGrid& grid, const WaveField& f1,
                            const WaveField& f2);

/// (a(x1) b(x2) + b(x1) a(x2)) / sqrt(Z): the Bell-like test state.
CompositeWave entangled_state(const CompositeGrid& grid, const WaveField& a,
                              const WaveField& b);

enum class InitialKind { product, entangled };

/// Two-particle (d = 1) no-signaling experiment: evolves the same initial
/// state under V = V1 + V2_baseline and V = V1 + V2_modified (plus an
/// optional coupling * x1 * x2 control term) and tracks the L1 distance of
/// the particle-1 reduced-density trajectories.
struct SeparabilityConfig {
  Grid axis;
  double hbar = 1.0;
  double mass1 = 1.0;
  double mass2 = 1.0;
  double length_scale = 0.25;
  InitialKind initial = InitialKind::product;
  double sigma1 = 0.8, x0_1 = -1.0;  // product factors
  double sigma2 = 0.7, x0_2 = 0.5;
  double entangled_sigma = 0.7, entangled_sep = 2.0;  // branches at +-sep
  std::vector<double> v1;           // per-axis potentials; empty = 0
  std::vector<double> v2_baseline;
  std::vector<double> v2_modified;
  double coupling = 0.0;
  double dt = 1e-3;
  long n_steps = 500;
  long record_every = 25;
  bool js_nonlinearity = true;
  double dealias_fraction = 1.0 / 3.0;
};

struct SeparabilityRow {
  double time = 0.0;
  double marginal_distance = 0.0;
  double norm_sq = 0.0;
  double energy = 0.0;
};

struct SeparabilityReport {
  std::vector<SeparabilityRow> rows;
  double max_marginal_distance = 0.0;
};

SeparabilityReport separability_experiment(const SeparabilityConfig& cfg);

}  // namespace jsnl

#pragma once

#include <optional>
#include <vector>

#include "jsnl/grid.hpp"
#include "jsnl/potential.hpp"

namespace jsnl {

enum class Scheme { strang_split_step, rk4_reference };
enum class Nonlinearity { js, parametric_js, none };

struct EvolutionConfig {
  ModelParams params;
  PotentialSpec potential;
  double dt = 1e-3;
  long n_steps = 0;
  Scheme scheme = Scheme::strang_split_step;
  long record_every = 1;
  Nonlinearity nonlinearity = Nonlinearity::js;
  // Low-pass fraction for the Bohm term inside the stepper. The nonlinear
  // term reacts to density curvature like a second derivative, so the
  // splitting goes unstable once dt * hbar * k^2 / (4 m) ~ 1 at the highest
  // retained k; filtering sqrt(rho) caps that k. 1.0 disables the filter.
  double dealias_fraction = 1.0 / 3.0;
  bool quiet = false;  // suppress stability warnings
};

struct DiagnosticsRecord {
  double time = 0.0;
  double norm_sq = 0.0;
  double energy = 0.0;
  double continuity_residual = 0.0;
  std::optional<double> overlap;
};

/// The nonlinear multiplication operator selected by cfg (N, N^(pi), or 0).
std::vector<double> interaction_potential(const DensityField& rho,
                                          const EvolutionConfig& cfg);

/// One Strang step: half nonlinear/potential phase, full spectral kinetic
/// step, half phase, with rho refreshed before each phase. Every factor is
/// unit-modulus pointwise or a unitary transform, so the norm is conserved
/// to roundoff.
WaveField strang_step(const WaveField& psi, const EvolutionConfig& cfg);

/// Classical RK4 on dpsi/dt = -(i/hbar)(H0 + N(rho)) psi. Fourth-order but
/// only approximately norm conserving; subject to the dt stability bound
/// below.
WaveField rk4_step(const WaveField& psi, const EvolutionConfig& cfg);

/// Documented stability bounds (time-step ceilings).
double rk4_stability_limit(const Grid& grid, const EvolutionConfig& cfg);
double strang_stability_limit(const Grid& grid, const EvolutionConfig& cfg);

/// Conserved generator: int rho [ (dS/dx)^2/(2m) + V + Q_N ] dx, with dS/dx
/// recovered from the probability current. Defined for unnormalized psi too
/// (rho = |psi|^2 as is), which the homogeneity and flow checks rely on.
double energy_functional(const WaveField& psi, const EvolutionConfig& cfg);

/// Max-norm residual of the continuity equation between two snapshots spaced
/// dt apart, with the flux averaged to the midpoint. O(dt^2) + spectral.
double continuity_residual(const WaveField& psi_prev, const WaveField& psi_next,
                           const EvolutionConfig& cfg);

struct EvolveResult {
  std::vector<WaveField> trajectory;           // every record_every steps, incl. t = 0
  std::vector<DiagnosticsRecord> diagnostics;  // one per trajectory entry
};

EvolveResult evolve(const WaveField& psi0, const EvolutionConfig& cfg);

/// Evolves two states under the same config, recording |<psi1|psi2>| at each
/// record point (the mobility diagnostic).
struct OverlapTrace {
  std::vector<double> times;
  std::vector<double> overlaps;
};
OverlapTrace evolve_overlap(const WaveField& a, const WaveField& b,
                            const EvolutionConfig& cfg);

/// Ground state of the *linear* Hamiltonian by imaginary-time split stepping,
/// iterated until the energy is stationary to rel_tol.
WaveField linear_ground_state(const Grid& grid, const ModelParams& params,
                              const PotentialSpec& potential, double dt_imag = 5e-3,
                              double rel_tol = 1e-13, int max_iterations = 200000);

cplx inner_product(const WaveField& a, const WaveField& b);

}  // namespace jsnl

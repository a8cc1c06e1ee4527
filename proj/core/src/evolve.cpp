#include "jsnl/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>

#include "jsnl/fft.hpp"
#include "jsnl/spectral.hpp"

namespace jsnl {
namespace {

// omega(k) = E(k)/hbar = hbar k^2 / (2m): phase advance per unit time.
std::vector<double> kinetic_phase_rate(const Grid& grid, const ModelParams& p) {
  std::vector<double> k = wavenumbers(grid);
  for (double& v : k) v = p.hbar * v * v / (2.0 * p.mass);
  return k;
}

void apply_phase(std::vector<cplx>& psi, const std::vector<double>& w, double factor) {
  for (size_t j = 0; j < psi.size(); ++j) psi[j] *= std::polar(1.0, -w[j] * factor);
}

bool all_finite(const std::vector<cplx>& v) {
  for (const cplx& z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

}  // namespace

std::vector<double> interaction_potential(const DensityField& rho,
                                          const EvolutionConfig& cfg) {
  switch (cfg.nonlinearity) {
    case Nonlinearity::js:
      return nonlinear_term(rho, cfg.params, cfg.dealias_fraction);
    case Nonlinearity::parametric_js:
      return parametric_nonlinear_term(rho, cfg.params, cfg.dealias_fraction);
    case Nonlinearity::none:
      return std::vector<double>(rho.values.size(), 0.0);
  }
  raise(Errc::bad_argument, "unknown nonlinearity");
}

WaveField strang_step(const WaveField& psi, const EvolutionConfig& cfg) {
  const Grid& g = psi.grid;
  const std::vector<double> v = cfg.potential.evaluate(g);
  std::vector<double> kin = kinetic_phase_rate(g, cfg.params);

  WaveField out = psi;
  const double half = 0.5 * cfg.dt / cfg.params.hbar;

  DensityField rho = density_of(out);
  std::vector<double> w = interaction_potential(rho, cfg);
  for (size_t j = 0; j < w.size(); ++j) w[j] += v[j];
  apply_phase(out.values, w, half);

  fft::forward(out.values, out.values);
  apply_phase(out.values, kin, cfg.dt);
  fft::inverse(out.values, out.values);

  rho = density_of(out);
  w = interaction_potential(rho, cfg);
  for (size_t j = 0; j < w.size(); ++j) w[j] += v[j];
  apply_phase(out.values, w, half);
  return out;
}

namespace {

// -(i/hbar) (K + V + N(rho)) psi
std::vector<cplx> schroedinger_rhs(const std::vector<cplx>& psi, const Grid& g,
                                   const std::vector<double>& v,
                                   const std::vector<double>& kin,
                                   const EvolutionConfig& cfg) {
  std::vector<cplx> hat(psi.size());
  fft::forward(psi, hat);
  for (size_t j = 0; j < hat.size(); ++j) hat[j] *= kin[j];
  std::vector<cplx> out(psi.size());
  fft::inverse(hat, out);

  DensityField rho{g, std::vector<double>(psi.size())};
  for (size_t j = 0; j < psi.size(); ++j) rho.values[j] = std::norm(psi[j]);
  const std::vector<double> w = interaction_potential(rho, cfg);

  const cplx factor = cplx(0.0, -1.0 / cfg.params.hbar);
  for (size_t j = 0; j < out.size(); ++j)
    out[j] = factor * (out[j] + (v[j] + w[j]) * psi[j]);
  return out;
}

}  // namespace

WaveField rk4_step(const WaveField& psi, const EvolutionConfig& cfg) {
  const Grid& g = psi.grid;
  const std::vector<double> v = cfg.potential.evaluate(g);
  std::vector<double> kin(wavenumbers(g));
  for (double& k : kin) k = cfg.params.hbar * cfg.params.hbar * k * k / (2.0 * cfg.params.mass);

  const double dt = cfg.dt;
  const std::vector<cplx>& y = psi.values;
  std::vector<cplx> k1 = schroedinger_rhs(y, g, v, kin, cfg);

  std::vector<cplx> stage(y.size());
  for (size_t j = 0; j < y.size(); ++j) stage[j] = y[j] + 0.5 * dt * k1[j];
  std::vector<cplx> k2 = schroedinger_rhs(stage, g, v, kin, cfg);

  for (size_t j = 0; j < y.size(); ++j) stage[j] = y[j] + 0.5 * dt * k2[j];
  std::vector<cplx> k3 = schroedinger_rhs(stage, g, v, kin, cfg);

  for (size_t j = 0; j < y.size(); ++j) stage[j] = y[j] + dt * k3[j];
  std::vector<cplx> k4 = schroedinger_rhs(stage, g, v, kin, cfg);

  WaveField out = psi;
  for (size_t j = 0; j < y.size(); ++j)
    out.values[j] = y[j] + dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  return out;
}

double rk4_stability_limit(const Grid& grid, const EvolutionConfig& cfg) {
  // dt < c m dx^2 / hbar with c = 0.5 (RK4 imaginary-axis radius 2.83 over
  // the spectral kinetic eigenvalue hbar pi^2 / (2 m dx^2), with margin).
  return 0.5 * cfg.params.mass * grid.spacing * grid.spacing / cfg.params.hbar;
}

double strang_stability_limit(const Grid& grid, const EvolutionConfig& cfg) {
  const double kmax = std::numbers::pi / grid.spacing;
  const double kcut = std::min(cfg.dealias_fraction, 1.0) * kmax;
  // Feedback gain of the nonlinear phase substep: dt hbar kcut^2 / (4 m)
  // from the Bohm part, dt zeta from the shifted-log part. Keep both <= 1/4.
  const double bohm = cfg.params.mass / (cfg.params.hbar * kcut * kcut);
  const double js = 0.25 / std::max(cfg.params.zeta() / cfg.params.hbar, 1e-300);
  return std::min(bohm, js);
}

// The conserved generator of the selected flow, in hydrodynamic variables:
//   T_cl + int V rho + int rho Q_N            (js)
//   T_cl + int V rho + int rho Q_N^(pi)       (parametric)
//   T_cl + int V rho + (hbar^2/8m) I_F(rho)   (none: <H0> itself)
// T_cl is the classical kinetic term int (rho dS/dx)^2 / (2 m rho); the
// Fisher term appears only in the linear mode because elsewhere it is
// absorbed by the -Q part of N.
double energy_functional(const WaveField& psi, const EvolutionConfig& cfg) {
  const Grid& g = psi.grid;
  const ModelParams& p = cfg.params;
  const std::vector<double> v = cfg.potential.evaluate(g);
  const std::vector<cplx> dpsi = spectral_derivative(psi.values, g, 1);
  const DensityField rho = density_of(psi);

  std::vector<double> qn;
  switch (cfg.nonlinearity) {
    case Nonlinearity::js:
      qn = js_quantum_potential(rho, p);
      break;
    case Nonlinearity::parametric_js:
      qn = parametric_quantum_potential(rho, p);
      break;
    case Nonlinearity::none:
      qn.assign(rho.values.size(), 0.0);
      break;
  }

  double sum = 0.0;
  for (size_t j = 0; j < psi.values.size(); ++j) {
    const double flux = p.hbar * std::imag(std::conj(psi.values[j]) * dpsi[j]);  // rho dS/dx
    const double r = std::max(rho.values[j], p.floor);
    sum += flux * flux / (2.0 * p.mass * r) + (v[j] + qn[j]) * rho.values[j];
  }
  double energy = sum * g.spacing;

  if (cfg.nonlinearity == Nonlinearity::none) {
    std::vector<double> root(rho.values.size());
    for (size_t j = 0; j < root.size(); ++j)
      root[j] = std::sqrt(std::max(rho.values[j], p.floor));
    const std::vector<double> droot = spectral_derivative(root, g, 1);
    double fisher = 0.0;
    for (double d : droot) fisher += d * d;
    energy += p.hbar * p.hbar / (2.0 * p.mass) * fisher * g.spacing;
  }
  return energy;
}

double continuity_residual(const WaveField& psi_prev, const WaveField& psi_next,
                           const EvolutionConfig& cfg) {
  require_same_grid(psi_prev.grid, psi_next.grid, "continuity_residual");
  const Grid& g = psi_prev.grid;
  const double hbar_over_m = cfg.params.hbar / cfg.params.mass;

  auto flux_of = [&](const WaveField& psi) {
    const std::vector<cplx> dpsi = spectral_derivative(psi.values, g, 1);
    std::vector<double> flux(psi.values.size());
    for (size_t j = 0; j < flux.size(); ++j)
      flux[j] = hbar_over_m * std::imag(std::conj(psi.values[j]) * dpsi[j]);
    return flux;
  };

  std::vector<double> flux = flux_of(psi_prev);
  const std::vector<double> flux_next = flux_of(psi_next);
  for (size_t j = 0; j < flux.size(); ++j) flux[j] = 0.5 * (flux[j] + flux_next[j]);
  const std::vector<double> div = spectral_derivative(flux, g, 1);

  double worst = 0.0;
  for (size_t j = 0; j < div.size(); ++j) {
    const double drho_dt =
        (std::norm(psi_next.values[j]) - std::norm(psi_prev.values[j])) / cfg.dt;
    worst = std::max(worst, std::abs(drho_dt + div[j]));
  }
  return worst;
}

EvolveResult evolve(const WaveField& psi0, const EvolutionConfig& cfg) {
  if (cfg.record_every < 1) raise(Errc::bad_argument, "record_every must be >= 1");
  if (cfg.n_steps < 0) raise(Errc::bad_argument, "n_steps must be >= 0");

  if (!cfg.quiet && cfg.nonlinearity != Nonlinearity::none &&
      cfg.scheme == Scheme::strang_split_step) {
    const double limit = strang_stability_limit(psi0.grid, cfg);
    if (cfg.dt > limit)
      std::cerr << "[jsnl] warning: dt = " << cfg.dt
                << " exceeds the split-step stability estimate " << limit << "\n";
  }
  if (!cfg.quiet && cfg.scheme == Scheme::rk4_reference) {
    const double limit = rk4_stability_limit(psi0.grid, cfg);
    if (cfg.dt > limit)
      std::cerr << "[jsnl] warning (StabilityViolation): dt = " << cfg.dt
                << " exceeds the RK4 bound " << limit << "\n";
  }

  EvolveResult result;
  WaveField psi = psi0;
  WaveField prev = psi0;  // state one step before the current one

  auto record = [&](long step) {
    DiagnosticsRecord d;
    d.time = step * cfg.dt;
    d.norm_sq = norm_squared(psi);
    d.energy = energy_functional(psi, cfg);
    d.continuity_residual = step == 0 ? 0.0 : continuity_residual(prev, psi, cfg);
    result.trajectory.push_back(psi);
    result.diagnostics.push_back(d);
  };

  record(0);
  for (long step = 1; step <= cfg.n_steps; ++step) {
    prev = psi;
    psi = cfg.scheme == Scheme::strang_split_step ? strang_step(psi, cfg)
                                                  : rk4_step(psi, cfg);
    if (step % cfg.record_every == 0 || step == cfg.n_steps) {
      if (!all_finite(psi.values))
        raise(Errc::non_finite, "field became non-finite at step " + std::to_string(step));
      record(step);
    }
  }
  return result;
}

OverlapTrace evolve_overlap(const WaveField& a, const WaveField& b,
                            const EvolutionConfig& cfg) {
  require_same_grid(a.grid, b.grid, "evolve_overlap");
  OverlapTrace trace;
  WaveField pa = a, pb = b;
  trace.times.push_back(0.0);
  trace.overlaps.push_back(std::abs(inner_product(pa, pb)));
  for (long step = 1; step <= cfg.n_steps; ++step) {
    pa = cfg.scheme == Scheme::strang_split_step ? strang_step(pa, cfg) : rk4_step(pa, cfg);
    pb = cfg.scheme == Scheme::strang_split_step ? strang_step(pb, cfg) : rk4_step(pb, cfg);
    if (step % cfg.record_every == 0 || step == cfg.n_steps) {
      if (!all_finite(pa.values) || !all_finite(pb.values))
        raise(Errc::non_finite, "field became non-finite at step " + std::to_string(step));
      trace.times.push_back(step * cfg.dt);
      trace.overlaps.push_back(std::abs(inner_product(pa, pb)));
    }
  }
  return trace;
}

WaveField linear_ground_state(const Grid& grid, const ModelParams& params,
                              const PotentialSpec& potential, double dt_imag,
                              double rel_tol, int max_iterations) {
  const std::vector<double> v = potential.evaluate(grid);
  std::vector<double> kin = kinetic_phase_rate(grid, params);

  WaveField psi{grid, std::vector<cplx>(static_cast<size_t>(grid.n))};
  for (int j = 0; j < grid.n; ++j) {
    const double x = grid.x(j) - (grid.origin + 0.5 * grid.length);
    psi.values[static_cast<size_t>(j)] = std::exp(-x * x / (0.1 * grid.length * grid.length));
  }
  normalize(psi);

  auto linear_energy = [&](const WaveField& w) {
    const std::vector<cplx> dw = spectral_derivative(w.values, grid, 1);
    double sum = 0.0;
    for (size_t j = 0; j < w.values.size(); ++j)
      sum += params.hbar * params.hbar / (2.0 * params.mass) * std::norm(dw[j]) +
             v[j] * std::norm(w.values[j]);
    return sum * grid.spacing;
  };

  // The converged split-step fixed point carries an O(dt^2) bias, so the
  // step is annealed: converge, halve dt, repeat.
  int iterations_left = max_iterations;
  for (double dt = dt_imag; dt >= 0.9e-4; dt *= 0.5) {
    double previous = linear_energy(psi);
    while (iterations_left-- > 0) {
      const double half = 0.5 * dt / params.hbar;
      for (size_t j = 0; j < psi.values.size(); ++j)
        psi.values[j] *= std::exp(-v[j] * half);
      fft::forward(psi.values, psi.values);
      for (size_t j = 0; j < psi.values.size(); ++j)
        psi.values[j] *= std::exp(-kin[j] * dt);
      fft::inverse(psi.values, psi.values);
      for (size_t j = 0; j < psi.values.size(); ++j)
        psi.values[j] *= std::exp(-v[j] * half);
      normalize(psi);

      if (iterations_left % 16 == 0) {
        const double e = linear_energy(psi);
        if (std::abs(e - previous) <= rel_tol * (1.0 + std::abs(e))) break;
        previous = e;
      }
    }
    if (iterations_left <= 0) break;
  }
  return psi;
}

cplx inner_product(const WaveField& a, const WaveField& b) {
  require_same_grid(a.grid, b.grid, "inner_product");
  cplx sum = 0.0;
  for (size_t j = 0; j < a.values.size(); ++j)
    sum += std::conj(a.values[j]) * b.values[j];
  return sum * a.grid.spacing;
}

}  // namespace jsnl

#include "jsnl/hamiltonian.hpp"

#include <cmath>

#include "jsnl/fft.hpp"
#include "jsnl/spectral.hpp"

namespace jsnl {

DiscreteStateOperator density_operator(const WaveField& psi) {
  const int n = psi.grid.n;
  if (n > kMaxOperatorGrid)
    raise(Errc::grid_too_large, "density_operator: grid exceeds " +
                                    std::to_string(kMaxOperatorGrid) + " points");
  Eigen::VectorXcd v(n);
  for (int j = 0; j < n; ++j) v(j) = psi.values[static_cast<size_t>(j)];
  DiscreteStateOperator op{psi.grid, Eigen::MatrixXcd(n, n)};
  op.matrix = v * v.adjoint() * psi.grid.spacing;
  return op;
}

DiscreteStateOperator hamiltonian_matrix(const WaveField& psi, const EvolutionConfig& cfg) {
  const Grid& g = psi.grid;
  const int n = g.n;
  if (n > kMaxOperatorGrid)
    raise(Errc::grid_too_large, "hamiltonian_matrix: grid exceeds " +
                                    std::to_string(kMaxOperatorGrid) + " points");

  // Kinetic block: transform each basis column, matching the evolver exactly.
  std::vector<double> energy = wavenumbers(g);
  for (double& k : energy) k = cfg.params.hbar * cfg.params.hbar * k * k / (2.0 * cfg.params.mass);

  DiscreteStateOperator op{g, Eigen::MatrixXcd::Zero(n, n)};
  std::vector<cplx> column(static_cast<size_t>(n));
  std::vector<cplx> hat(static_cast<size_t>(n));
  for (int c = 0; c < n; ++c) {
    std::fill(column.begin(), column.end(), cplx(0.0));
    column[static_cast<size_t>(c)] = 1.0;
    fft::forward(column, hat);
    for (int j = 0; j < n; ++j) hat[static_cast<size_t>(j)] *= energy[static_cast<size_t>(j)];
    fft::inverse(hat, column);
    for (int r = 0; r < n; ++r) op.matrix(r, c) = column[static_cast<size_t>(r)];
  }

  const std::vector<double> v = cfg.potential.evaluate(g);
  const std::vector<double> w = interaction_potential(density_of(psi), cfg);
  for (int j = 0; j < n; ++j)
    op.matrix(j, j) += v[static_cast<size_t>(j)] + w[static_cast<size_t>(j)];
  return op;
}

double symplectic_form(const WaveField& psi, const WaveField& phi) {
  return 2.0 * std::imag(inner_product(psi, phi));
}

std::vector<double> functional_derivative_rho(const MadelungPair& state,
                                              const ModelParams& params,
                                              const PotentialSpec& potential) {
  const std::vector<double> v = potential.evaluate(state.grid);
  std::vector<double> out = js_quantum_potential(state.rho, params);
  for (size_t j = 0; j < out.size(); ++j)
    out[j] += state.grad_s[j] * state.grad_s[j] / (2.0 * params.mass) + v[j];
  return out;
}

std::vector<double> functional_derivative_s(const MadelungPair& state,
                                            const ModelParams& params) {
  std::vector<double> flux(state.grad_s.size());
  for (size_t j = 0; j < flux.size(); ++j)
    flux[j] = state.rho.values[j] * state.grad_s[j];
  std::vector<double> out = spectral_derivative(flux, state.grid, 1);
  for (double& v : out) v *= -1.0 / params.mass;
  return out;
}

std::vector<double> numerical_functional_derivative(
    const std::function<double(std::span<const double>)>& functional,
    std::span<const double> field, const Grid& grid, double* truncation_estimate) {
  double scale = 0.0;
  for (double v : field) scale = std::max(scale, std::abs(v));
  const double h = std::cbrt(2.22e-16) * (1.0 + scale) * grid.spacing;

  std::vector<double> work(field.begin(), field.end());
  std::vector<double> out(field.size());
  const double bump = h / grid.spacing;  // delta function with unit integral
  for (size_t j = 0; j < field.size(); ++j) {
    const double saved = work[j];
    work[j] = saved + bump;
    const double plus = functional(work);
    work[j] = saved - bump;
    const double minus = functional(work);
    work[j] = saved;
    out[j] = (plus - minus) / (2.0 * h);
  }
  if (truncation_estimate) *truncation_estimate = h * h * (1.0 + scale);
  return out;
}

double expected_nonlinear(const DensityField& rho, const ModelParams& params) {
  const std::vector<double> n = nonlinear_term(rho, params);
  std::vector<double> integrand(n.size());
  for (size_t j = 0; j < n.size(); ++j) integrand[j] = rho.values[j] * n[j];
  return integrate(integrand, rho.grid);
}

WaveField hamiltonian_vector_field(const WaveField& psi, const EvolutionConfig& cfg) {
  const Grid& g = psi.grid;
  std::vector<double> energy = wavenumbers(g);
  for (double& k : energy) k = cfg.params.hbar * cfg.params.hbar * k * k / (2.0 * cfg.params.mass);

  std::vector<cplx> hat(psi.values.size());
  fft::forward(psi.values, hat);
  for (size_t j = 0; j < hat.size(); ++j) hat[j] *= energy[j];
  WaveField out{g, std::vector<cplx>(psi.values.size())};
  fft::inverse(hat, out.values);

  const std::vector<double> v = cfg.potential.evaluate(g);
  const std::vector<double> w = interaction_potential(density_of(psi), cfg);
  const cplx factor(0.0, -1.0 / cfg.params.hbar);
  for (size_t j = 0; j < out.values.size(); ++j)
    out.values[j] = factor * (out.values[j] + (v[j] + w[j]) * psi.values[j]);
  return out;
}

double von_neumann_residual(const WaveField& psi, const EvolutionConfig& cfg) {
  if (psi.grid.n > kMaxOperatorGrid)
    raise(Errc::grid_too_large, "von_neumann_residual: grid exceeds " +
                                    std::to_string(kMaxOperatorGrid) + " points");

  EvolutionConfig half = cfg;
  half.dt = 0.5 * cfg.dt;
  const WaveField mid = cfg.scheme == Scheme::strang_split_step ? strang_step(psi, half)
                                                                : rk4_step(psi, half);
  const WaveField next = cfg.scheme == Scheme::strang_split_step ? strang_step(mid, half)
                                                                 : rk4_step(mid, half);

  const Eigen::MatrixXcd rho_t = density_operator(psi).matrix;
  const Eigen::MatrixXcd rho_next = density_operator(next).matrix;
  const Eigen::MatrixXcd rho_mid = density_operator(mid).matrix;
  const Eigen::MatrixXcd h_mid = hamiltonian_matrix(mid, cfg).matrix;

  const cplx i_over_hbar(0.0, 1.0 / cfg.params.hbar);
  const Eigen::MatrixXcd commutator = rho_mid * h_mid - h_mid * rho_mid;
  const Eigen::MatrixXcd residual =
      (rho_next - rho_t) / cfg.dt - i_over_hbar * commutator;
  return residual.cwiseAbs().maxCoeff();
}

double hamiltonian_flow_check(const WaveField& psi, const WaveField& probe,
                              const EvolutionConfig& cfg) {
  require_same_grid(psi.grid, probe.grid, "hamiltonian_flow_check");
  const double probe_norm = std::sqrt(norm_squared(probe));
  if (!(probe_norm > 0.0)) raise(Errc::bad_argument, "zero probe direction");
  const double h =
      std::cbrt(2.22e-16) * (1.0 + std::sqrt(norm_squared(psi))) / probe_norm;

  // 4th-order central difference: rough probes make the third directional
  // derivative of the energy large, which the 2nd-order stencil cannot
  // absorb at any workable h
  auto shifted_energy = [&](double step) {
    WaveField moved = psi;
    for (size_t j = 0; j < psi.values.size(); ++j)
      moved.values[j] += step * probe.values[j];
    return energy_functional(moved, cfg);
  };
  const double directional =
      (8.0 * (shifted_energy(h) - shifted_energy(-h)) -
       (shifted_energy(2.0 * h) - shifted_energy(-2.0 * h))) /
      (12.0 * h);

  const WaveField x = hamiltonian_vector_field(psi, cfg);
  const double pairing = cfg.params.hbar * symplectic_form(x, probe);
  return std::abs(directional - pairing);
}

}  // namespace jsnl

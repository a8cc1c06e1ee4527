#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <vector>

#include "jsnl/evolve.hpp"
#include "jsnl/grid.hpp"
#include "jsnl/potential.hpp"

namespace jsnl {

/// Dense grid-basis operator (density operator or Hamiltonian matrix). Only
/// used on small grids where N x N complex matrices are cheap.
struct DiscreteStateOperator {
  Grid grid;
  Eigen::MatrixXcd matrix;
};

inline constexpr int kMaxOperatorGrid = 64;

/// rho_psi = |psi><psi| with the quadrature weight folded in, so
/// trace(matrix) = <psi|psi>.
DiscreteStateOperator density_operator(const WaveField& psi);

/// H = K + diag(V + N(rho_psi)) with the spectral kinetic block.
DiscreteStateOperator hamiltonian_matrix(const WaveField& psi, const EvolutionConfig& cfg);

/// Omega(psi, phi) = 2 Im <psi|phi>.
double symplectic_form(const WaveField& psi, const WaveField& phi);

/// delta H / delta rho = (dS/dx)^2/(2m) + V + Q_N, evaluated on the grid.
std::vector<double> functional_derivative_rho(const MadelungPair& state,
                                              const ModelParams& params,
                                              const PotentialSpec& potential);

/// delta H / delta S = -(1/m) d/dx (rho dS/dx).
std::vector<double> functional_derivative_s(const MadelungPair& state,
                                            const ModelParams& params);

/// Central-difference functional derivative of an arbitrary scalar functional
/// with the 1/dx-scaled grid delta, so the discrete result converges to the
/// continuum variational density. Optionally reports the estimated
/// truncation error scale h^2 * max|field|.
std::vector<double> numerical_functional_derivative(
    const std::function<double(std::span<const double>)>& functional,
    std::span<const double> field, const Grid& grid, double* truncation_estimate = nullptr);

/// E_rho(N) = int rho N(rho) dx; homogeneous of degree two in |psi|.
double expected_nonlinear(const DensityField& rho, const ModelParams& params);

/// Max-entry modulus of (rho_{t+dt} - rho_t)/dt - (i/hbar)[rho_mid, H_mid],
/// built from evolved states; O(dt^2). Grids above kMaxOperatorGrid are
/// rejected.
double von_neumann_residual(const WaveField& psi, const EvolutionConfig& cfg);

/// | dH(probe) - hbar * Omega(X_H(psi), probe) | with dH by central
/// differences. The hbar factor makes the identity exact for all hbar; at
/// hbar = 1 it is the bare symplectic pairing.
double hamiltonian_flow_check(const WaveField& psi, const WaveField& probe,
                              const EvolutionConfig& cfg);

/// X_H(psi) = -(i/hbar)(H0 + V + N(rho)) psi, the Schroedinger vector field.
WaveField hamiltonian_vector_field(const WaveField& psi, const EvolutionConfig& cfg);

}  // namespace jsnl

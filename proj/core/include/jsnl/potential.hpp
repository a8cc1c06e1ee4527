#pragma once

#include <optional>
#include <vector>

#include "jsnl/grid.hpp"

namespace jsnl {

/// Physical constants of the model. zeta defaults to hbar^2/(m l^2), the
/// convention under which the pi-parametric potential reduces to the
/// symmetric one at pi = 1/2; it can be overridden to explore alternatives.
struct ModelParams {
  double hbar = 1.0;
  double mass = 1.0;
  double length_scale = 0.1;  // invariant displacement l
  double pi_weight = 0.5;     // pi in (0, 1)
  std::optional<double> zeta_override;

  double floor = kDensityFloor;  // regularization floor for logs / divisions
  // Potential outputs are zeroed where rho < vacuum_rel * max(rho): in such
  // regions the log arguments and 1/sqrt(rho) are dominated by roundoff,
  // not physics.
  double vacuum_rel = 1e-16;

  double zeta() const {
    if (zeta_override) return *zeta_override;
    return hbar * hbar / (mass * length_scale * length_scale);
  }

  double eta() const {
    if (!(pi_weight > 0.0 && pi_weight < 1.0))
      raise(Errc::degenerate_weight, "eta diverges for pi in {0, 1}");
    return hbar * hbar /
           (4.0 * pi_weight * (1.0 - pi_weight) * mass * length_scale * length_scale);
  }
};

/// External potential V(x).
struct PotentialSpec {
  enum class Kind { zero, harmonic, tabulated };
  Kind kind = Kind::zero;
  double spring_constant = 0.0;  // harmonic: V = k x^2 / 2
  std::vector<double> table;     // tabulated: values on the grid

  std::vector<double> evaluate(const Grid& grid) const;

  static PotentialSpec zero() { return {}; }
  static PotentialSpec harmonic(double k) {
    PotentialSpec p;
    p.kind = Kind::harmonic;
    p.spring_constant = k;
    return p;
  }
  static PotentialSpec tabulated(std::vector<double> values) {
    PotentialSpec p;
    p.kind = Kind::tabulated;
    p.table = std::move(values);
    return p;
  }
};

// The dealias_fraction arguments low-pass sqrt(rho) to |k| <= fraction*k_max
// before the second derivative in the Bohm term; 1.0 evaluates the formulas
// verbatim. The time evolver passes a fraction < 1 to suppress the high-k
// feedback of the splitting (see evolve.hpp); all analytic oracles use 1.0.

/// Q = -hbar^2/(2m) (d^2/dx^2 sqrt(rho)) / sqrt(rho).
std::vector<double> bohm_quantum_potential(const DensityField& rho, const ModelParams& params,
                                           double dealias_fraction = 1.0);

/// Q_N = (zeta/2) ln[ 4 rho^2 / ((rho + rho_l)(rho_{-l} + rho)) ].
std::vector<double> js_quantum_potential(const DensityField& rho, const ModelParams& params);

/// N = Q_N - Q; real, scale invariant under rho -> gamma^2 rho.
std::vector<double> nonlinear_term(const DensityField& rho, const ModelParams& params,
                                   double dealias_fraction = 1.0);

/// Leading O(l^2) coefficient of N. The complete coefficient is
///   (hbar^2 l^2 / 64 m) (2 rho''^2/rho^2 - 4 rho'^2 rho''/rho^3
///        + rho'^4/rho^4 - 4/3 rho''''/rho + 8/3 rho' rho'''/rho^2),
/// which leaves an O(l^4) remainder; the first three terms alone leave an
/// O(l^2) one.
std::vector<double> nonlinear_term_expansion(const DensityField& rho,
                                             const ModelParams& params);

/// Q_N^(pi) = eta ln[ rho (pi rho + (1-pi) rho_l)^(-pi)
///                        / (pi rho_{-l} + (1-pi) rho)^(1-pi) ].
std::vector<double> parametric_quantum_potential(const DensityField& rho,
                                                 const ModelParams& params);

/// N^(pi) = Q_N^(pi) - Q.
std::vector<double> parametric_nonlinear_term(const DensityField& rho,
                                              const ModelParams& params,
                                              double dealias_fraction = 1.0);

/// Energy density rho * Q_N; integrates to zeta * I_JS(rho, rho_l).
std::vector<double> js_energy_density(const DensityField& rho, const ModelParams& params);

}  // namespace jsnl

#pragma once

#include "jsnl/grid.hpp"

namespace jsnl {

/// Two densities on one grid; the first slot is the reference distribution.
struct DensityPair {
  DensityField rho0;
  DensityField rho1;
};

DensityPair make_density_pair(DensityField rho0, DensityField rho1);

/// Mixture weights for the pi-parametric measures; pi2 = 1 - pi1 exactly.
struct WeightedPair {
  DensityPair pair;
  double pi1 = 0.5;
  double pi2 = 0.5;
};

WeightedPair make_weighted_pair(DensityPair pair, double pi1);

/// Set when a divergence was dominated by the density floor (effectively
/// disjoint supports): the value returned is large but finite.
struct FloorReport {
  bool floor_dominated = false;
};

// All measures are computed on the floored density max(rho, floor) and
// reported in nats.

double shannon_entropy(const DensityField& rho, double floor = kDensityFloor);

double kl_divergence(const DensityField& rho1, const DensityField& rho0,
                     FloorReport* report = nullptr, double floor = kDensityFloor);

double j_divergence(const DensityPair& pair, FloorReport* report = nullptr,
                    double floor = kDensityFloor);

double k_divergence(const DensityField& rho0, const DensityField& rho1,
                    double floor = kDensityFloor);

double js_divergence(const DensityPair& pair, double floor = kDensityFloor);

/// Entropy form of the JS divergence; equals js_divergence analytically and
/// is kept as an independent route for consistency tests.
double js_divergence_entropy_form(const DensityPair& pair, double floor = kDensityFloor);

double js_distance(const DensityPair& pair, double floor = kDensityFloor);

double pi_js_divergence(const WeightedPair& wp, double floor = kDensityFloor);

double pi_k_divergence(const DensityField& rho1, const DensityField& rho2, double pi,
                       double floor = kDensityFloor);

/// Half-sum of pi-K-divergences. Diagnostic only: it does not equal
/// pi_js_divergence for pi != 1/2 even though both generalize the symmetric
/// JS divergence.
double pi_js_halfsum(const WeightedPair& wp, double floor = kDensityFloor);

/// Fisher information, evaluated as 4 * int (d/dx sqrt(rho))^2 dx. The ratio
/// form (rho')^2/rho is algebraically identical on positive densities but
/// turns spectral roundoff into large spurious contributions wherever rho
/// underflows, so the sqrt form is used throughout.
double fisher_information(const DensityField& rho, double floor = kDensityFloor);

/// Integral of the Fisher information along the exponential path
/// rho_theta ~ rho0^(1-theta) rho1^theta (normalized per theta), via
/// composite Simpson in theta. Equals KL(rho0,rho1) + KL(rho1,rho0).
double fisher_path_integral(const DensityPair& pair, int n_theta,
                            double floor = kDensityFloor);

enum class ShiftMeasure { js, pi_js, kl, j };

/// measure(rho, rho(.+delta)) / (delta^2 * I_F): the dimensionless expansion
/// coefficient. Limits as delta -> 0: JS -> 1/8, pi-JS -> pi(1-pi)/2,
/// KL -> 1/2, J -> 1/2.
double small_shift_ratio(const DensityField& rho, double delta, ShiftMeasure measure,
                         double pi = 0.5, double floor = kDensityFloor);

}  // namespace jsnl

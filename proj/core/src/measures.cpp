#include "jsnl/measures.hpp"

#include <cmath>

#include "jsnl/spectral.hpp"

namespace jsnl {
namespace {

inline double floored(double v, double floor) { return v > floor ? v : floor; }

}  // namespace

DensityPair make_density_pair(DensityField rho0, DensityField rho1) {
  require_same_grid(rho0.grid, rho1.grid, "make_density_pair");
  return DensityPair{std::move(rho0), std::move(rho1)};
}

WeightedPair make_weighted_pair(DensityPair pair, double pi1) {
  if (!(pi1 >= 0.0 && pi1 <= 1.0))
    raise(Errc::bad_argument, "weight pi1 must lie in [0, 1]");
  return WeightedPair{std::move(pair), pi1, 1.0 - pi1};
}

double shannon_entropy(const DensityField& rho, double floor) {
  double sum = 0.0;
  for (double v : rho.values) {
    const double r = floored(v, floor);
    sum -= r * std::log(r);
  }
  return sum * rho.grid.spacing;
}

double kl_divergence(const DensityField& rho1, const DensityField& rho0,
                     FloorReport* report, double floor) {
  require_same_grid(rho1.grid, rho0.grid, "kl_divergence");
  double sum = 0.0;
  bool hit_floor = false;
  for (size_t j = 0; j < rho1.values.size(); ++j) {
    const double a = floored(rho1.values[j], floor);
    const double b = floored(rho0.values[j], floor);
    sum += a * std::log(a / b);
    if (rho0.values[j] <= floor && rho1.values[j] > 1e3 * floor) hit_floor = true;
  }
  if (report) report->floor_dominated = hit_floor;
  return sum * rho1.grid.spacing;
}

double j_divergence(const DensityPair& pair, FloorReport* report, double floor) {
  FloorReport a, b;
  const double j = 0.5 * (kl_divergence(pair.rho0, pair.rho1, &a, floor) +
                          kl_divergence(pair.rho1, pair.rho0, &b, floor));
  if (report) report->floor_dominated = a.floor_dominated || b.floor_dominated;
  return j;
}

double k_divergence(const DensityField& rho0, const DensityField& rho1, double floor) {
  require_same_grid(rho0.grid, rho1.grid, "k_divergence");
  double sum = 0.0;
  for (size_t j = 0; j < rho0.values.size(); ++j) {
    const double a = floored(rho0.values[j], floor);
    const double b = floored(rho1.values[j], floor);
    sum += a * std::log(2.0 * a / (a + b));
  }
  return sum * rho0.grid.spacing;
}

double js_divergence(const DensityPair& pair, double floor) {
  return 0.5 * (k_divergence(pair.rho0, pair.rho1, floor) +
                k_divergence(pair.rho1, pair.rho0, floor));
}

double js_divergence_entropy_form(const DensityPair& pair, double floor) {
  require_same_grid(pair.rho0.grid, pair.rho1.grid, "js_divergence_entropy_form");
  DensityField mix{pair.rho0.grid, std::vector<double>(pair.rho0.values.size())};
  for (size_t j = 0; j < mix.values.size(); ++j)
    mix.values[j] = 0.5 * (pair.rho0.values[j] + pair.rho1.values[j]);
  return shannon_entropy(mix, floor) - 0.5 * shannon_entropy(pair.rho0, floor) -
         0.5 * shannon_entropy(pair.rho1, floor);
}

double js_distance(const DensityPair& pair, double floor) {
  const double v = js_divergence(pair, floor);
  return v > 0.0 ? std::sqrt(v) : 0.0;
}

double pi_js_divergence(const WeightedPair& wp, double floor) {
  const DensityPair& p = wp.pair;
  require_same_grid(p.rho0.grid, p.rho1.grid, "pi_js_divergence");
  DensityField mix{p.rho0.grid, std::vector<double>(p.rho0.values.size())};
  for (size_t j = 0; j < mix.values.size(); ++j)
    mix.values[j] = wp.pi1 * p.rho0.values[j] + wp.pi2 * p.rho1.values[j];
  return shannon_entropy(mix, floor) - wp.pi1 * shannon_entropy(p.rho0, floor) -
         wp.pi2 * shannon_entropy(p.rho1, floor);
}

double pi_k_divergence(const DensityField& rho1, const DensityField& rho2, double pi,
                       double floor) {
  require_same_grid(rho1.grid, rho2.grid, "pi_k_divergence");
  if (!(pi >= 0.0 && pi <= 1.0)) raise(Errc::bad_argument, "pi must lie in [0, 1]");
  double sum = 0.0;
  for (size_t j = 0; j < rho1.values.size(); ++j) {
    const double a = floored(rho1.values[j], floor);
    const double b = floored(rho2.values[j], floor);
    sum += a * std::log(a / (pi * a + (1.0 - pi) * b));
  }
  return sum * rho1.grid.spacing;
}

double pi_js_halfsum(const WeightedPair& wp, double floor) {
  return 0.5 * (pi_k_divergence(wp.pair.rho0, wp.pair.rho1, wp.pi1, floor) +
                pi_k_divergence(wp.pair.rho1, wp.pair.rho0, wp.pi1, floor));
}

double fisher_information(const DensityField& rho, double floor) {
  std::vector<double> root(rho.values.size());
  for (size_t j = 0; j < root.size(); ++j)
    root[j] = std::sqrt(floored(rho.values[j], floor));
  const std::vector<double> droot = spectral_derivative(root, rho.grid, 1);
  double sum = 0.0;
  for (double d : droot) sum += d * d;
  return 4.0 * sum * rho.grid.spacing;
}

double fisher_path_integral(const DensityPair& pair, int n_theta, double floor) {
  require_same_grid(pair.rho0.grid, pair.rho1.grid, "fisher_path_integral");
  if (n_theta < 16) raise(Errc::bad_argument, "fisher_path_integral: n_theta must be >= 16");
  if (n_theta % 2 != 0) ++n_theta;  // composite Simpson needs an even interval count

  const size_t n = pair.rho0.values.size();
  const double dx = pair.rho0.grid.spacing;
  std::vector<double> log0(n), log1(n), t(n);
  for (size_t j = 0; j < n; ++j) {
    const double a = pair.rho0.values[j];
    const double b = pair.rho1.values[j];
    if (a <= floor || b <= floor)
      raise(Errc::non_positive_density,
            "fisher_path_integral needs strictly positive densities");
    log0[j] = std::log(a);
    log1[j] = std::log(b);
    t[j] = log1[j] - log0[j];
  }

  // Along the exponential path, I_F(theta) is the variance of log(rho1/rho0)
  // under rho_theta; no theta-derivative is needed.
  auto fisher_at = [&](double theta) {
    std::vector<double> w(n);
    double z = 0.0;
    for (size_t j = 0; j < n; ++j) {
      w[j] = std::exp((1.0 - theta) * log0[j] + theta * log1[j]);
      z += w[j];
    }
    z *= dx;
    double mean = 0.0, second = 0.0;
    for (size_t j = 0; j < n; ++j) {
      const double p = w[j] / z;
      mean += p * t[j];
      second += p * t[j] * t[j];
    }
    mean *= dx;
    second *= dx;
    return second - mean * mean;
  };

  const double h = 1.0 / n_theta;
  double sum = fisher_at(0.0) + fisher_at(1.0);
  for (int i = 1; i < n_theta; ++i)
    sum += (i % 2 == 1 ? 4.0 : 2.0) * fisher_at(i * h);
  return sum * h / 3.0;
}

double small_shift_ratio(const DensityField& rho, double delta, ShiftMeasure measure,
                         double pi, double floor) {
  const DensityField shifted = circular_shift(rho, delta);
  const double fisher = fisher_information(rho, floor);
  if (!(fisher > 0.0))
    raise(Errc::bad_argument, "small_shift_ratio: Fisher information vanishes");
  double value = 0.0;
  switch (measure) {
    case ShiftMeasure::js:
      value = js_divergence(DensityPair{rho, shifted}, floor);
      break;
    case ShiftMeasure::pi_js:
      value = pi_js_divergence(make_weighted_pair(DensityPair{rho, shifted}, pi), floor);
      break;
    case ShiftMeasure::kl:
      value = kl_divergence(shifted, rho, nullptr, floor);
      break;
    case ShiftMeasure::j:
      value = j_divergence(DensityPair{rho, shifted}, nullptr, floor);
      break;
  }
  return value / (delta * delta * fisher);
}

}  // namespace jsnl

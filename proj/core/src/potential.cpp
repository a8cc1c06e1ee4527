#include "jsnl/potential.hpp"

#include <algorithm>
#include <cmath>

#include "jsnl/spectral.hpp"

namespace jsnl {
namespace {

std::vector<double> floored_copy(const std::vector<double>& v, double floor) {
  std::vector<double> out(v.size());
  for (size_t j = 0; j < v.size(); ++j) out[j] = std::max(v[j], floor);
  return out;
}

void apply_vacuum_mask(std::vector<double>& out, const std::vector<double>& rho,
                       double vacuum_rel) {
  double peak = 0.0;
  for (double r : rho) peak = std::max(peak, r);
  const double cut = vacuum_rel * peak;
  for (size_t j = 0; j < out.size(); ++j) {
    if (rho[j] < cut) out[j] = 0.0;
  }
}

}  // namespace

std::vector<double> PotentialSpec::evaluate(const Grid& grid) const {
  switch (kind) {
    case Kind::zero:
      return std::vector<double>(static_cast<size_t>(grid.n), 0.0);
    case Kind::harmonic: {
      std::vector<double> v(static_cast<size_t>(grid.n));
      for (int j = 0; j < grid.n; ++j) {
        const double x = grid.x(j);
        v[static_cast<size_t>(j)] = 0.5 * spring_constant * x * x;
      }
      return v;
    }
    case Kind::tabulated:
      if (static_cast<int>(table.size()) != grid.n)
        raise(Errc::bad_argument, "tabulated potential does not match grid");
      for (double v : table)
        if (!std::isfinite(v)) raise(Errc::non_finite, "tabulated potential has non-finite entries");
      return table;
  }
  raise(Errc::bad_argument, "unknown potential kind");
}

std::vector<double> bohm_quantum_potential(const DensityField& rho, const ModelParams& params,
                                           double dealias_fraction) {
  const std::vector<double> r = floored_copy(rho.values, params.floor);
  std::vector<double> root(r.size());
  for (size_t j = 0; j < r.size(); ++j) root[j] = std::sqrt(r[j]);
  std::vector<double> smoothed =
      dealias_fraction < 1.0 ? lowpass_filter(root, rho.grid, dealias_fraction) : root;
  const std::vector<double> d2 = spectral_derivative(smoothed, rho.grid, 2);
  const double coeff = -params.hbar * params.hbar / (2.0 * params.mass);
  std::vector<double> out(r.size());
  for (size_t j = 0; j < r.size(); ++j) out[j] = coeff * d2[j] / root[j];
  apply_vacuum_mask(out, rho.values, params.vacuum_rel);
  return out;
}

std::vector<double> js_quantum_potential(const DensityField& rho, const ModelParams& params) {
  const int s = shift_steps(rho.grid, params.length_scale);
  const std::vector<double> r = floored_copy(rho.values, params.floor);
  const std::vector<double> rp = shift_samples(std::span<const double>(r), s);
  const std::vector<double> rm = shift_samples(std::span<const double>(r), -s);
  const double half_zeta = 0.5 * params.zeta();
  std::vector<double> out(r.size());
  for (size_t j = 0; j < r.size(); ++j)
    out[j] = half_zeta * std::log(4.0 * r[j] * r[j] / ((r[j] + rp[j]) * (rm[j] + r[j])));
  apply_vacuum_mask(out, rho.values, params.vacuum_rel);
  return out;
}

std::vector<double> nonlinear_term(const DensityField& rho, const ModelParams& params,
                                   double dealias_fraction) {
  std::vector<double> out = js_quantum_potential(rho, params);
  const std::vector<double> q = bohm_quantum_potential(rho, params, dealias_fraction);
  for (size_t j = 0; j < out.size(); ++j) out[j] -= q[j];
  return out;
}

std::vector<double> nonlinear_term_expansion(const DensityField& rho,
                                             const ModelParams& params) {
  const std::vector<double> r = floored_copy(rho.values, params.floor);
  const Grid& g = rho.grid;
  const std::vector<double> r1 = spectral_derivative(r, g, 1);
  const std::vector<double> r2 = spectral_derivative(r, g, 2);
  const std::vector<double> r3 = spectral_derivative(r2, g, 1);
  const std::vector<double> r4 = spectral_derivative(r2, g, 2);
  const double l = params.length_scale;
  const double coeff = params.hbar * params.hbar * l * l / (64.0 * params.mass);
  std::vector<double> out(r.size());
  for (size_t j = 0; j < r.size(); ++j) {
    const double inv = 1.0 / r[j];
    const double a = r1[j] * inv;
    const double b = r2[j] * inv;
    out[j] = coeff * (2.0 * b * b - 4.0 * a * a * b + a * a * a * a -
                      (4.0 / 3.0) * r4[j] * inv + (8.0 / 3.0) * a * r3[j] * inv);
  }
  apply_vacuum_mask(out, rho.values, params.vacuum_rel);
  return out;
}

std::vector<double> parametric_quantum_potential(const DensityField& rho,
                                                 const ModelParams& params) {
  const double pi = params.pi_weight;
  if (!(pi > 0.0 && pi < 1.0))
    raise(Errc::degenerate_weight, "parametric potential needs pi in (0, 1)");
  const int s = shift_steps(rho.grid, params.length_scale);
  const std::vector<double> r = floored_copy(rho.values, params.floor);
  const std::vector<double> rp = shift_samples(std::span<const double>(r), s);
  const std::vector<double> rm = shift_samples(std::span<const double>(r), -s);
  const double eta = params.eta();
  std::vector<double> out(r.size());
  for (size_t j = 0; j < r.size(); ++j) {
    const double mix_fwd = pi * r[j] + (1.0 - pi) * rp[j];
    const double mix_bwd = pi * rm[j] + (1.0 - pi) * r[j];
    out[j] = eta * (std::log(r[j]) - pi * std::log(mix_fwd) - (1.0 - pi) * std::log(mix_bwd));
  }
  apply_vacuum_mask(out, rho.values, params.vacuum_rel);
  return out;
}

std::vector<double> parametric_nonlinear_term(const DensityField& rho,
                                              const ModelParams& params,
                                              double dealias_fraction) {
  std::vector<double> out = parametric_quantum_potential(rho, params);
  const std::vector<double> q = bohm_quantum_potential(rho, params, dealias_fraction);
  for (size_t j = 0; j < out.size(); ++j) out[j] -= q[j];
  return out;
}

std::vector<double> js_energy_density(const DensityField& rho, const ModelParams& params) {
  std::vector<double> qn = js_quantum_potential(rho, params);
  for (size_t j = 0; j < qn.size(); ++j) qn[j] *= std::max(rho.values[j], params.floor);
  return qn;
}

}  // namespace jsnl

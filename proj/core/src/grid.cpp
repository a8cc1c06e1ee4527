#include "jsnl/grid.hpp"

#include <cmath>

#include "jsnl/spectral.hpp"

namespace jsnl {

Grid make_grid(double length, int n_points, double origin) {
  if (!(length > 0.0)) raise(Errc::nonpositive_length, "grid length must be positive");
  if (n_points % 2 != 0)
    raise(Errc::odd_point_count, "grid needs an even point count for spectral symmetry");
  if (n_points < 8) raise(Errc::tiny_grid, "grid needs at least 8 points");
  Grid g;
  g.n = n_points;
  g.length = length;
  g.origin = origin;
  g.spacing = length / n_points;
  return g;
}

std::vector<double> grid_coords(const Grid& grid) {
  std::vector<double> x(static_cast<size_t>(grid.n));
  for (int j = 0; j < grid.n; ++j) x[static_cast<size_t>(j)] = grid.x(j);
  return x;
}

double integrate(std::span<const double> values, const Grid& grid) {
  if (static_cast<int>(values.size()) != grid.n)
    raise(Errc::bad_argument, "integrate: value count does not match grid");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * grid.spacing;
}

double norm_squared(const WaveField& psi) {
  double sum = 0.0;
  for (const cplx& v : psi.values) sum += std::norm(v);
  return sum * psi.grid.spacing;
}

double mass(const DensityField& rho) { return integrate(rho.values, rho.grid); }

void normalize(WaveField& psi) {
  const double n2 = norm_squared(psi);
  if (!(n2 > 0.0)) raise(Errc::non_finite, "cannot normalize a zero wavefunction");
  const double s = 1.0 / std::sqrt(n2);
  for (cplx& v : psi.values) v *= s;
}

void normalize(DensityField& rho) {
  const double m = mass(rho);
  if (!(m > 0.0)) raise(Errc::non_positive_density, "cannot normalize a massless density");
  const double s = 1.0 / m;
  for (double& v : rho.values) v *= s;
}

DensityField density_of(const WaveField& psi) {
  DensityField rho{psi.grid, std::vector<double>(psi.values.size())};
  for (size_t j = 0; j < psi.values.size(); ++j) rho.values[j] = std::norm(psi.values[j]);
  return rho;
}

WaveField wave_from_madelung(const DensityField& rho, std::span<const double> s_values,
                             double hbar) {
  if (s_values.size() != rho.values.size())
    raise(Errc::bad_argument, "wave_from_madelung: phase array size mismatch");
  WaveField psi{rho.grid, std::vector<cplx>(rho.values.size())};
  for (size_t j = 0; j < rho.values.size(); ++j) {
    const double r = rho.values[j] < 0.0 ? 0.0 : rho.values[j];
    psi.values[j] = std::polar(std::sqrt(r), s_values[j] / hbar);
  }
  return psi;
}

MadelungPair madelung_from_wave(const WaveField& psi, double hbar, double floor) {
  if (!(floor > 0.0)) raise(Errc::bad_argument, "madelung_from_wave: floor must be positive");
  MadelungPair out;
  out.grid = psi.grid;
  out.rho = density_of(psi);
  out.grad_s.resize(psi.values.size());
  // grad S = hbar Im(psi* d_x psi) / rho, i.e. m j / rho: no phase unwrapping.
  const std::vector<cplx> dpsi = spectral_derivative(psi.values, psi.grid, 1);
  for (size_t j = 0; j < psi.values.size(); ++j) {
    const double r = out.rho.values[j];
    out.grad_s[j] =
        r > floor ? hbar * std::imag(std::conj(psi.values[j]) * dpsi[j]) / r : 0.0;
  }
  return out;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) raise(Errc::grid_mismatch, std::string(where) + ": fields live on different grids");
}

}  // namespace jsnl

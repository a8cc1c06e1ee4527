#pragma once

#include <complex>
#include <span>
#include <vector>

#include "jsnl/errors.hpp"

namespace jsnl {

using cplx = std::complex<double>;

/// Regularization floor for logarithms and divisions involving densities.
inline constexpr double kDensityFloor = 1e-30;

/// Uniform periodic grid on [origin, origin + length), spacing = length / n.
struct Grid {
  int n = 0;
  double length = 0.0;
  double origin = 0.0;
  double spacing = 0.0;

  double x(int j) const { return origin + spacing * j; }
  bool operator==(const Grid&) const = default;
};

Grid make_grid(double length, int n_points, double origin = 0.0);
std::vector<double> grid_coords(const Grid& grid);

/// Real nonnegative density samples, units 1/length.
struct DensityField {
  Grid grid;
  std::vector<double> values;
};

/// Complex wavefunction samples, units 1/sqrt(length).
struct WaveField {
  Grid grid;
  std::vector<cplx> values;
};

/// Hydrodynamic (rho, dS/dx) representation. The phase gradient is stored
/// instead of S itself because S is defined only mod 2*pi*hbar and the
/// dynamics consumes dS/dx alone.
struct MadelungPair {
  Grid grid;
  DensityField rho;
  std::vector<double> grad_s;
};

/// Rectangle rule; spectrally accurate for smooth periodic integrands.
double integrate(std::span<const double> values, const Grid& grid);

double norm_squared(const WaveField& psi);
double mass(const DensityField& rho);
void normalize(WaveField& psi);
void normalize(DensityField& rho);

DensityField density_of(const WaveField& psi);

WaveField wave_from_madelung(const DensityField& rho, std::span<const double> s_values,
                             double hbar);
MadelungPair madelung_from_wave(const WaveField& psi, double hbar,
                                double floor = kDensityFloor);

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace jsnl

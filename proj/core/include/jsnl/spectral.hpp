#pragma once

#include <span>
#include <vector>

#include "jsnl/grid.hpp"

namespace jsnl {

/// Wavenumbers k_n = 2*pi*n/L in FFT layout (n = 0..N/2-1, -N/2..-1).
std::vector<double> wavenumbers(const Grid& grid);

/// Fourier differentiation, order 1 or 2. The Nyquist mode of the first
/// derivative is zeroed (real-output convention); order 2 keeps -k^2 there.
std::vector<cplx> spectral_derivative(std::span<const cplx> values, const Grid& grid,
                                      int order);
std::vector<double> spectral_derivative(std::span<const double> values, const Grid& grid,
                                        int order);

/// Sharp low-pass projection onto |k| <= fraction * k_max. fraction >= 1 is a
/// no-op copy.
std::vector<double> lowpass_filter(std::span<const double> values, const Grid& grid,
                                   double fraction);

enum class ShiftMode { commensurate, fourier_interp };

/// Number of grid steps for a displacement; IncommensurateShift unless the
/// displacement is an integer multiple of the spacing to 1e-9 relative.
int shift_steps(const Grid& grid, double displacement);

/// Samples of f(x + steps*dx): an exact index rotation.
std::vector<double> shift_samples(std::span<const double> values, int steps);
std::vector<cplx> shift_samples(std::span<const cplx> values, int steps);

/// rho(x + displacement). Commensurate mode is an exact, mass-preserving
/// rotation. Fourier interpolation handles incommensurate displacements but
/// can undershoot zero; results are clipped at the floor.
DensityField circular_shift(const DensityField& field, double displacement,
                            ShiftMode mode = ShiftMode::commensurate,
                            double floor = kDensityFloor);

}  // namespace jsnl

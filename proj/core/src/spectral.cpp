#include "jsnl/spectral.hpp"

#include <cmath>
#include <numbers>

#include "jsnl/fft.hpp"

namespace jsnl {

std::vector<double> wavenumbers(const Grid& grid) {
  std::vector<double> k(static_cast<size_t>(grid.n));
  const double dk = 2.0 * std::numbers::pi / grid.length;
  for (int j = 0; j < grid.n; ++j) {
    const int n = j <= grid.n / 2 ? j : j - grid.n;
    k[static_cast<size_t>(j)] = dk * n;
  }
  return k;
}

std::vector<cplx> spectral_derivative(std::span<const cplx> values, const Grid& grid,
                                      int order) {
  if (order != 1 && order != 2)
    raise(Errc::bad_argument, "spectral_derivative: order must be 1 or 2");
  if (static_cast<int>(values.size()) != grid.n)
    raise(Errc::bad_argument, "spectral_derivative: value count does not match grid");

  std::vector<cplx> hat(values.size());
  fft::forward(values, hat);
  const std::vector<double> k = wavenumbers(grid);
  const size_t nyquist = static_cast<size_t>(grid.n / 2);
  if (order == 1) {
    for (size_t j = 0; j < hat.size(); ++j) hat[j] *= cplx(0.0, k[j]);
    hat[nyquist] = 0.0;
  } else {
    for (size_t j = 0; j < hat.size(); ++j) hat[j] *= -k[j] * k[j];
  }
  std::vector<cplx> out(values.size());
  fft::inverse(hat, out);
  return out;
}

std::vector<double> spectral_derivative(std::span<const double> values, const Grid& grid,
                                        int order) {
  std::vector<cplx> in(values.begin(), values.end());
  const std::vector<cplx> d = spectral_derivative(in, grid, order);
  std::vector<double> out(values.size());
  for (size_t j = 0; j < out.size(); ++j) out[j] = d[j].real();
  return out;
}

std::vector<double> lowpass_filter(std::span<const double> values, const Grid& grid,
                                   double fraction) {
  if (fraction >= 1.0) return std::vector<double>(values.begin(), values.end());
  if (!(fraction > 0.0)) raise(Errc::bad_argument, "lowpass_filter: fraction must be positive");
  std::vector<cplx> hat(values.begin(), values.end());
  fft::forward(hat, hat);
  const std::vector<double> k = wavenumbers(grid);
  const double kcut = fraction * std::numbers::pi / grid.spacing;
  for (size_t j = 0; j < hat.size(); ++j) {
    if (std::abs(k[j]) > kcut) hat[j] = 0.0;
  }
  std::vector<cplx> out(hat.size());
  fft::inverse(hat, out);
  std::vector<double> real(out.size());
  for (size_t j = 0; j < out.size(); ++j) real[j] = out[j].real();
  return real;
}

int shift_steps(const Grid& grid, double displacement) {
  const double ratio = displacement / grid.spacing;
  const double rounded = std::round(ratio);
  const double scale = std::max(std::abs(ratio), 1.0);
  if (std::abs(ratio - rounded) > 1e-9 * scale)
    raise(Errc::incommensurate_shift,
          "displacement " + std::to_string(displacement) +
              " is not an integer multiple of the grid spacing " +
              std::to_string(grid.spacing));
  return static_cast<int>(rounded);
}

namespace {
template <typename T>
std::vector<T> rotate_samples(std::span<const T> values, int steps) {
  const int n = static_cast<int>(values.size());
  std::vector<T> out(values.size());
  // out[j] = in[(j + steps) mod n], i.e. samples of f(x + steps*dx).
  int s = steps % n;
  if (s < 0) s += n;
  for (int j = 0; j < n; ++j)
    out[static_cast<size_t>(j)] = values[static_cast<size_t>((j + s) % n)];
  return out;
}
}  // namespace

std::vector<double> shift_samples(std::span<const double> values, int steps) {
  return rotate_samples(values, steps);
}

std::vector<cplx> shift_samples(std::span<const cplx> values, int steps) {
  return rotate_samples(values, steps);
}

DensityField circular_shift(const DensityField& field, double displacement, ShiftMode mode,
                            double floor) {
  if (mode == ShiftMode::commensurate) {
    const int s = shift_steps(field.grid, displacement);
    return DensityField{field.grid, shift_samples(std::span<const double>(field.values), s)};
  }
  // Fourier phase shift: exact for band-limited fields, may produce small
  // negative excursions which are clipped at the floor.
  std::vector<cplx> hat(field.values.begin(), field.values.end());
  fft::forward(hat, hat);
  const std::vector<double> k = wavenumbers(field.grid);
  for (size_t j = 0; j < hat.size(); ++j)
    hat[j] *= std::polar(1.0, k[j] * displacement);
  std::vector<cplx> shifted(hat.size());
  fft::inverse(hat, shifted);
  DensityField out{field.grid, std::vector<double>(hat.size())};
  for (size_t j = 0; j < hat.size(); ++j)
    out.values[j] = std::max(shifted[j].real(), floor);
  return out;
}

}  // namespace jsnl

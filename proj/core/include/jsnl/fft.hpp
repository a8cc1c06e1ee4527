#pragma once

#include <complex>
#include <span>

namespace jsnl::fft {

/// Unnormalized forward DFT. in and out may alias; sizes must match.
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

/// Inverse DFT scaled by 1/N, so inverse(forward(x)) == x.
void inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace jsnl::fft

#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace bicomm::fft {

/// In-place DFTs over a row-major array with the given extents (1 or 2 axes).
///
/// forward:  X[k] = N^{-d} sum_x x[x] exp(-2 pi i k.x / N)
/// inverse:  x[x] = sum_k X[k] exp(+2 pi i k.x / N)
///
/// With this normalization the grid inner product N^{-d} sum f conj(g)
/// equals the frequency inner product sum F conj(G).
void forward(std::span<std::complex<double>> data, std::span<const std::size_t> dims);
void inverse(std::span<std::complex<double>> data, std::span<const std::size_t> dims);

/// Signed frequency of array index m on an N-point axis: m for m < N/2,
/// m - N otherwise (so index N/2 is the Nyquist frequency -N/2).
constexpr long frequency(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

/// Inverse of `frequency`: array index of signed frequency k (taken mod N).
constexpr std::size_t index_of(long k, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

}  // namespace bicomm::fft

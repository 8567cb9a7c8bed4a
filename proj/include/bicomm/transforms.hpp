#pragma once

#include <functional>
#include <vector>

#include "bicomm/grid.hpp"

namespace bicomm {

/// Integer frequencies k in {-N/2, ..., N/2-1} per axis, laid out in FFT
/// order (index m holds k = m for m < N/2 and m - N otherwise).
struct FrequencyGrid {
  std::size_t n;

  long frequency(std::size_t m) const;
  std::size_t index(long k) const;
  bool is_nyquist(long k) const { return k == -static_cast<long>(n / 2); }
  /// sgn(k) with sgn(0) = 0 and 0 at the Nyquist frequency.
  double sign(long k) const;
};

/// Spectra under the normalization of bicomm::fft (Parseval: N^{-d} sum |f|^2
/// equals sum |F|^2).
std::vector<Complex> spectrum(const GridSignal1D& f);
std::vector<Complex> spectrum(const GridSignal2D& f);
GridSignal1D from_spectrum(std::vector<Complex> spec);
GridSignal2D from_spectrum(std::size_t n, std::vector<Complex> spec);

GridSignal1D apply_multiplier(const GridSignal1D& f, const std::function<Complex(long)>& m);
GridSignal2D apply_multiplier(const GridSignal2D& f, const std::function<Complex(long, long)>& m);

/// Classical Hilbert transform: multiplier -i sgn(k).
GridSignal1D hilbert_1d(const GridSignal1D& f);
GridSignal2D hilbert_2d_axis(const GridSignal2D& f, Axis axis);

/// Frequency-sign transform: multiplier sgn(k) = i * (Hilbert multiplier).
/// This is the operator for which the positive-frequency projection equals
/// (I + S)/2 on admissible signals; the commutator module is built on it.
GridSignal1D sign_transform(const GridSignal1D& f);
GridSignal2D sign_transform(const GridSignal2D& f, Axis axis);

/// Keep strictly positive (Sign::plus) or strictly negative (Sign::minus)
/// frequencies; Nyquist and zero are always removed.
GridSignal1D project_halfline(const GridSignal1D& f, Sign sign);
GridSignal2D project_quadrant(const GridSignal2D& f, Sign s1, Sign s2);

/// Remove every frequency with k1 or k2 in {0, Nyquist}.
GridSignal1D project_admissible(const GridSignal1D& f);
GridSignal2D project_admissible(const GridSignal2D& f);

}  // namespace bicomm

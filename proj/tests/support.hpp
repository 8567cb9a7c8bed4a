#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "bicomm/grid.hpp"
#include "bicomm/random.hpp"

namespace testing {

using bicomm::Complex;

inline bicomm::GridSignal1D random_signal_1d(bicomm::Rng& rng, std::size_t n) {
  std::vector<Complex> v(n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return bicomm::GridSignal1D(std::move(v));
}

inline bicomm::GridSignal2D random_signal_2d(bicomm::Rng& rng, std::size_t n) {
  std::vector<Complex> v(n * n);
  for (auto& x : v) x = {rng.normal(), rng.normal()};
  return bicomm::GridSignal2D(n, std::move(v));
}

/// Naive DFT with the library's normalization, kept separate from the FFT path.
inline std::vector<Complex> naive_dft_2d(const bicomm::GridSignal2D& f) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n * n);
  const double tau = 2.0 * std::acos(-1.0);
  for (std::size_t k1 = 0; k1 < n; ++k1)
    for (std::size_t k2 = 0; k2 < n; ++k2) {
      Complex acc{};
      for (std::size_t x1 = 0; x1 < n; ++x1)
        for (std::size_t x2 = 0; x2 < n; ++x2)
          acc += f.at(x1, x2) * std::polar(1.0, -tau * static_cast<double>(k1 * x1 + k2 * x2) / static_cast<double>(n));
      out[k1 * n + k2] = acc / static_cast<double>(n * n);
    }
  return out;
}

/// Plane wave exp(2 pi i (a x + b y)) on the N x N grid.
inline bicomm::GridSignal2D plane_wave(std::size_t n, long a, long b) {
  std::vector<Complex> v(n * n);
  const double tau = 2.0 * std::acos(-1.0);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2)
      v[i1 * n + i2] = std::polar(1.0, tau * static_cast<double>(a * static_cast<long>(i1) + b * static_cast<long>(i2)) /
                                           static_cast<double>(n));
  return bicomm::GridSignal2D(n, std::move(v));
}

inline double max_abs_diff(const bicomm::GridSignal2D& a, const bicomm::GridSignal2D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.samples().size(); ++i) m = std::max(m, std::abs(a.samples()[i] - b.samples()[i]));
  return m;
}

inline double max_abs_diff(const bicomm::GridSignal1D& a, const bicomm::GridSignal1D& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

/// Random cell set: union of 1..max_boxes random cell boxes.
inline bicomm::CellSet random_open_set(bicomm::Rng& rng, int n, int max_boxes = 8) {
  const int side = 1 << n;
  bicomm::CellSet u(n);
  const int boxes = static_cast<int>(rng.uniform_int(1, max_boxes));
  for (int b = 0; b < boxes; ++b) {
    const int w1 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int w2 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int lo1 = static_cast<int>(rng.uniform_int(0, side - w1));
    const int lo2 = static_cast<int>(rng.uniform_int(0, side - w2));
    u = u | bicomm::CellSet::box(n, lo1, lo1 + w1, lo2, lo2 + w2);
  }
  return u;
}

}  // namespace testing

namespace testing {

/// Unit-norm signal with random spectrum on 1 <= |k_i| <= N/4, optionally
/// restricted to the closed (+,+) quadrant.
inline bicomm::GridSignal2D bandlimited_2d(bicomm::Rng& rng, std::size_t n, bool holomorphic = false) {
  std::vector<Complex> spec(n * n);
  const long q = static_cast<long>(n / 4);
  double e = 0.0;
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const long k1 = m1 < n / 2 ? static_cast<long>(m1) : static_cast<long>(m1) - static_cast<long>(n);
      const long k2 = m2 < n / 2 ? static_cast<long>(m2) : static_cast<long>(m2) - static_cast<long>(n);
      const double re = rng.normal(), im = rng.normal();
      const bool band = std::abs(k1) >= 1 && std::abs(k1) <= q && std::abs(k2) >= 1 && std::abs(k2) <= q;
      if (!band || (holomorphic && (k1 < 0 || k2 < 0))) continue;
      spec[m1 * n + m2] = {re, im};
      e += re * re + im * im;
    }
  for (auto& v : spec) v /= std::sqrt(e);
  std::vector<Complex> copy = spec;
  return bicomm::GridSignal2D(n, [&] {
    // Inverse DFT through the naive route keeps this independent of the FFT module.
    std::vector<Complex> out(n * n);
    const double tau = 2.0 * std::acos(-1.0);
    std::vector<Complex> tmp(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        Complex acc{};
        for (std::size_t k2 = 0; k2 < n; ++k2) acc += copy[a * n + k2] * std::polar(1.0, tau * static_cast<double>(k2 * x2 % n) / n);
        tmp[a * n + x2] = acc;
      }
    for (std::size_t x1 = 0; x1 < n; ++x1)
      for (std::size_t x2 = 0; x2 < n; ++x2) {
        Complex acc{};
        for (std::size_t k1 = 0; k1 < n; ++k1) acc += tmp[k1 * n + x2] * std::polar(1.0, tau * static_cast<double>(k1 * x1 % n) / n);
        out[x1 * n + x2] = acc;
      }
    return out;
  }());
}

}  // namespace testing

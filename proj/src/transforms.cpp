#include "bicomm/transforms.hpp"

#include <array>

#include "bicomm/fft.hpp"

namespace bicomm {

long FrequencyGrid::frequency(std::size_t m) const { return fft::frequency(m, n); }
std::size_t FrequencyGrid::index(long k) const { return fft::index_of(k, n); }

double FrequencyGrid::sign(long k) const {
  if (k == 0 || is_nyquist(k)) return 0.0;
  return k > 0 ? 1.0 : -1.0;
}

std::vector<Complex> spectrum(const GridSignal1D& f) {
  auto v = f.to_vector();
  const std::array<std::size_t, 1> dims{f.size()};
  fft::forward(v, dims);
  return v;
}

std::vector<Complex> spectrum(const GridSignal2D& f) {
  auto v = f.to_vector();
  const std::array<std::size_t, 2> dims{f.size(), f.size()};
  fft::forward(v, dims);
  return v;
}

GridSignal1D from_spectrum(std::vector<Complex> spec) {
  const std::array<std::size_t, 1> dims{spec.size()};
  fft::inverse(spec, dims);
  return GridSignal1D(std::move(spec));
}

GridSignal2D from_spectrum(std::size_t n, std::vector<Complex> spec) {
  const std::array<std::size_t, 2> dims{n, n};
  fft::inverse(spec, dims);
  return GridSignal2D(n, std::move(spec));
}

GridSignal1D apply_multiplier(const GridSignal1D& f, const std::function<Complex(long)>& m) {
  auto spec = spectrum(f);
  const FrequencyGrid grid{f.size()};
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= m(grid.frequency(i));
  return from_spectrum(std::move(spec));
}

GridSignal2D apply_multiplier(const GridSignal2D& f, const std::function<Complex(long, long)>& m) {
  const std::size_t n = f.size();
  auto spec = spectrum(f);
  const FrequencyGrid grid{n};
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2) spec[i1 * n + i2] *= m(grid.frequency(i1), grid.frequency(i2));
  return from_spectrum(n, std::move(spec));
}

GridSignal1D hilbert_1d(const GridSignal1D& f) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g](long k) { return Complex(0.0, -g.sign(k)); });
}

GridSignal2D hilbert_2d_axis(const GridSignal2D& f, Axis axis) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g, axis](long k1, long k2) {
    return Complex(0.0, -g.sign(axis == Axis::first ? k1 : k2));
  });
}

GridSignal1D sign_transform(const GridSignal1D& f) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g](long k) { return Complex(g.sign(k), 0.0); });
}

GridSignal2D sign_transform(const GridSignal2D& f, Axis axis) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g, axis](long k1, long k2) {
    return Complex(g.sign(axis == Axis::first ? k1 : k2), 0.0);
  });
}

namespace {
double keeps(const FrequencyGrid& g, long k, Sign s) {
  const double sg = g.sign(k);
  return (s == Sign::plus ? sg > 0.0 : sg < 0.0) ? 1.0 : 0.0;
}
}  // namespace

GridSignal1D project_halfline(const GridSignal1D& f, Sign sign) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g, sign](long k) { return Complex(keeps(g, k, sign), 0.0); });
}

GridSignal2D project_quadrant(const GridSignal2D& f, Sign s1, Sign s2) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g, s1, s2](long k1, long k2) {
    return Complex(keeps(g, k1, s1) * keeps(g, k2, s2), 0.0);
  });
}

GridSignal1D project_admissible(const GridSignal1D& f) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g](long k) { return Complex(g.sign(k) != 0.0 ? 1.0 : 0.0, 0.0); });
}

GridSignal2D project_admissible(const GridSignal2D& f) {
  const FrequencyGrid g{f.size()};
  return apply_multiplier(f, [g](long k1, long k2) {
    return Complex(g.sign(k1) != 0.0 && g.sign(k2) != 0.0 ? 1.0 : 0.0, 0.0);
  });
}

}  // namespace bicomm

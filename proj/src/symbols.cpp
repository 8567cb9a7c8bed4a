#include "bicomm/symbols.hpp"

#include <cmath>
#include <vector>

#include "bicomm/error.hpp"
#include "bicomm/fft.hpp"
#include "bicomm/io.hpp"
#include "bicomm/journe.hpp"
#include "bicomm/transforms.hpp"

namespace bicomm {

const char* to_string(SymbolFamily f) {
  switch (f) {
    case SymbolFamily::random_carleson: return "random-carleson";
    case SymbolFamily::single_rectangle: return "single-rectangle";
    case SymbolFamily::row_of_squares_dual: return "row-of-squares-dual";
    case SymbolFamily::multiscale: return "multiscale";
    case SymbolFamily::file: return "file";
  }
  return "?";
}

SymbolFamily parse_symbol_family(const std::string& name) {
  for (auto f : {SymbolFamily::random_carleson, SymbolFamily::single_rectangle, SymbolFamily::row_of_squares_dual,
                 SymbolFamily::multiscale, SymbolFamily::file})
    if (name == to_string(f)) return f;
  fail(ErrorCode::config, "unknown symbol family '" + name + "'");
}

CellSet random_cell_union(Rng& rng, int resolution, double min_measure) {
  const int side = 1 << resolution;
  CellSet u(resolution);
  while (u.empty() || u.measure() < min_measure) {
    const int w1 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int w2 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int lo1 = static_cast<int>(rng.uniform_int(0, side - w1));
    const int lo2 = static_cast<int>(rng.uniform_int(0, side - w2));
    u = u | CellSet::box(resolution, lo1, lo1 + w1, lo2, lo2 + w2);
  }
  return u;
}

CellSet random_open_set(Rng& rng, int resolution, int max_boxes) {
  const int side = 1 << resolution;
  CellSet u(resolution);
  const int boxes = static_cast<int>(rng.uniform_int(1, max_boxes));
  for (int b = 0; b < boxes; ++b) {
    const int w1 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int w2 = static_cast<int>(rng.uniform_int(1, std::max(1, side / 2)));
    const int lo1 = static_cast<int>(rng.uniform_int(0, side - w1));
    const int lo2 = static_cast<int>(rng.uniform_int(0, side - w2));
    u = u | CellSet::box(resolution, lo1, lo1 + w1, lo2, lo2 + w2);
  }
  return u;
}

namespace {

Complex gaussian(Rng& rng) {
  const double re = rng.normal();
  return {re, rng.normal()};
}

// Random coefficients on every rectangle inside `u`, normalized so the total
// energy equals measure(u).
WaveletCoefficients fill_inside(Rng& rng, const CellSet& u, int resolution) {
  WaveletCoefficients c(resolution);
  const CellCounter counter(u);
  double e = 0.0;
  for (const auto& r : enumerate_dyadic_rectangles(resolution)) {
    if (!counter.covers(r)) continue;
    const Complex v = gaussian(rng);
    c.set(r, v);
    e += std::norm(v);
  }
  if (e == 0.0) return c;
  return c.scaled(std::sqrt(u.measure() / e));
}

}  // namespace

Symbol make_symbol(const FamilySpec& spec, std::size_t n, int resolution, Rng& rng) {
  if (resolution > max_admissible_scale(n))
    fail(ErrorCode::invalid_argument, "resolution exceeds the admissible wavelet scales of the grid");
  switch (spec.kind) {
    case SymbolFamily::random_carleson: {
      const auto u = random_cell_union(rng, resolution, 0.5);
      auto c = fill_inside(rng, u, resolution);
      auto b = synthesize(c, n);
      return {std::move(b), std::move(c), u};
    }
    case SymbolFamily::single_rectangle: {
      DyadicRectangle r = spec.rectangle.value_or(DyadicRectangle(0, 0, 0, 0));
      if (!spec.rectangle) {
        const int j1 = static_cast<int>(rng.uniform_int(0, resolution));
        const int j2 = static_cast<int>(rng.uniform_int(0, resolution));
        r = DyadicRectangle(j1, rng.uniform_int(0, (std::int64_t{1} << j1) - 1), j2,
                            rng.uniform_int(0, (std::int64_t{1} << j2) - 1));
      }
      if (r.first().scale() > resolution || r.second().scale() > resolution)
        fail(ErrorCode::config, "single-rectangle scale exceeds the resolution");
      WaveletCoefficients c(resolution);
      c.set(r, 1.0);
      return {synthesize(c, n), c, CellSet::from_rectangle(resolution, r)};
    }
    case SymbolFamily::row_of_squares_dual: {
      const auto row = row_of_squares(spec.squares, spec.density, resolution);
      auto c = fill_inside(rng, row.set, resolution);
      return {synthesize(c, n), c, row.set};
    }
    case SymbolFamily::multiscale: {
      if (spec.square_scale < 0 || spec.square_scale > resolution)
        fail(ErrorCode::config, "multiscale square scale out of range");
      const DyadicRectangle q(spec.square_scale, 0, spec.square_scale, 0);
      const auto u = CellSet::from_rectangle(resolution, q);
      WaveletCoefficients c(resolution);
      double e = 0.0;
      for (const auto& r : enumerate_dyadic_rectangles(resolution)) {
        if (!q.contains(r)) continue;
        const double weight =
            r.area() * std::exp2(-spec.anisotropy_decay * std::abs(r.first().scale() - r.second().scale()));
        const double phase = 2.0 * std::acos(-1.0) * rng.uniform();
        c.set(r, std::polar(std::sqrt(weight), phase));
        e += weight;
      }
      c = c.scaled(std::sqrt(u.measure() / e));
      return {synthesize(c, n), c, u};
    }
    case SymbolFamily::file: {
      auto b = io::read_signal_2d(spec.path);
      if (b.size() != n) fail(ErrorCode::config, "symbol file grid does not match N");
      return {std::move(b), WaveletCoefficients(resolution), CellSet(resolution)};
    }
  }
  fail(ErrorCode::invalid_argument, "unhandled symbol family");
}

GridSignal2D bandlimited_symbol(Rng& rng, std::size_t n, bool holomorphic) {
  std::vector<Complex> spec(n * n);
  const long q = static_cast<long>(n / 4);
  double e = 0.0;
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const long k1 = fft::frequency(m1, n), k2 = fft::frequency(m2, n);
      const Complex v = gaussian(rng);
      const bool band = std::abs(k1) >= 1 && std::abs(k1) <= q && std::abs(k2) >= 1 && std::abs(k2) <= q;
      if (!band || (holomorphic && (k1 < 0 || k2 < 0))) continue;
      spec[m1 * n + m2] = v;
      e += std::norm(v);
    }
  for (auto& v : spec) v /= std::sqrt(e);
  return from_spectrum(n, std::move(spec));
}

GridSignal1D bandlimited_symbol_1d(Rng& rng, std::size_t n) {
  std::vector<Complex> spec(n);
  const long q = static_cast<long>(n / 4);
  double e = 0.0;
  for (std::size_t m = 0; m < n; ++m) {
    const long k = fft::frequency(m, n);
    const Complex v = gaussian(rng);
    if (std::abs(k) < 1 || std::abs(k) > q) continue;
    spec[m] = v;
    e += std::norm(v);
  }
  for (auto& v : spec) v /= std::sqrt(e);
  return from_spectrum(std::move(spec));
}

}  // namespace bicomm

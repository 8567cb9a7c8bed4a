#include "bicomm/wavelets.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bicomm/error.hpp"
#include "bicomm/fft.hpp"
#include "bicomm/transforms.hpp"

namespace bicomm {
namespace {

constexpr double kPi = std::numbers::pi;

// Nonzero conj-spectrum factors of one scale: conj(w^_I(k)) = u(k) exp(2 pi i k p / 2^j)
// with u(k) = sqrt|I| A(2|I|k) exp(i pi k |I|).
struct BandEntry {
  std::size_t index;  // FFT index m
  long frequency;
  Complex u;
};

std::vector<BandEntry> scale_band(int j, std::size_t n) {
  const double len = std::ldexp(1.0, -j);
  std::vector<BandEntry> band;
  for (std::size_t m = 0; m < n; ++m) {
    const long k = fft::frequency(m, n);
    const double a = MeyerProfile::magnitude(2.0 * len * static_cast<double>(k));
    if (a == 0.0) continue;
    band.push_back({m, k, std::sqrt(len) * a * std::polar(1.0, kPi * static_cast<double>(k) * len)});
  }
  return band;
}

std::size_t residue(long k, int j) {
  const long period = 1L << j;
  return static_cast<std::size_t>(((k % period) + period) % period);
}

void check_scale(int j, std::size_t n) {
  if (j < 0 || j > max_admissible_scale(n))
    fail(ErrorCode::domain_violation,
         "scale " + std::to_string(j) + " outside the admissible range for N=" + std::to_string(n));
}

void check_resolution(int res, std::size_t n) {
  if (res < 0) fail(ErrorCode::invalid_argument, "negative wavelet resolution");
  if (res > max_admissible_scale(n))
    fail(ErrorCode::domain_violation,
         "resolution " + std::to_string(res) + " exceeds j_max(" + std::to_string(n) + ")");
}

}  // namespace

double meyer_transition(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double t4 = t * t * t * t;
  return t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}

double MeyerProfile::magnitude(double u) {
  const double a = std::abs(u);
  if (a <= 2.0 / 3.0 || a >= 8.0 / 3.0) return 0.0;
  if (a <= 4.0 / 3.0) return std::sin(kPi / 2 * meyer_transition(1.5 * a - 1.0));
  return std::cos(kPi / 2 * meyer_transition(0.75 * a - 1.0));
}

Complex MeyerProfile::operator()(double u) const {
  const double a = magnitude(u);
  if (phase_ == Phase::centered) return a;
  return a * std::polar(1.0, kPi * u / 2);
}

int max_admissible_scale(std::size_t n) {
  if (!is_power_of_two(n) || n < 8) fail(ErrorCode::invalid_argument, "grid size must be a power of two >= 8");
  return static_cast<int>(std::floor(std::log2(3.0 * static_cast<double>(n) / 16.0)));
}

std::vector<Complex> wavelet_spectrum(const DyadicInterval& interval, std::size_t n) {
  check_scale(interval.scale(), n);
  const double len = interval.length();
  const double c = interval.center();
  std::vector<Complex> spec(n);
  for (std::size_t m = 0; m < n; ++m) {
    const double k = static_cast<double>(fft::frequency(m, n));
    const double a = MeyerProfile::magnitude(2.0 * len * k);
    if (a != 0.0) spec[m] = std::sqrt(len) * a * std::polar(1.0, -2.0 * kPi * k * c);
  }
  return spec;
}

GridSignal1D wavelet_sample(const DyadicInterval& interval, std::size_t n) {
  return from_spectrum(wavelet_spectrum(interval, n));
}

WaveletParts wavelet_parts(const DyadicInterval& interval, std::size_t n) {
  const auto spec = wavelet_spectrum(interval, n);
  std::vector<Complex> plus(n), minus(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long k = fft::frequency(m, n);
    (k > 0 ? plus : minus)[m] = spec[m];
  }
  return {from_spectrum(spec), from_spectrum(std::move(plus)), from_spectrum(std::move(minus))};
}

GridSignal2D product_wavelet(const DyadicRectangle& r, std::size_t n) {
  const auto a = wavelet_sample(r.first(), n);
  const auto b = wavelet_sample(r.second(), n);
  std::vector<Complex> out(n * n);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2) out[i1 * n + i2] = a[i1] * b[i2];
  return GridSignal2D(n, std::move(out));
}

double localization_weight(const DyadicInterval& interval, double x) {
  const double lo = interval.left(), hi = lo + interval.length();
  x -= std::floor(x);
  double d = 0.0;
  if (x < lo || x >= hi) {
    const double right = x >= hi ? x - hi : x + 1.0 - hi;
    const double left = x < lo ? lo - x : lo + 1.0 - x;
    d = std::min(left, right);
  }
  return 1.0 / (1.0 + d / interval.length());
}

double spatial_decay_constant(const DyadicInterval& interval, std::size_t n, int power) {
  const auto parts = wavelet_parts(interval, n);
  const double root = std::sqrt(interval.length());
  double c = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double chi = std::pow(localization_weight(interval, static_cast<double>(i) / static_cast<double>(n)), power);
    c = std::max(c, root * std::max(std::abs(parts.w[i]), std::abs(parts.plus[i])) / chi);
  }
  return c;
}

// ---------------------------------------------------------------------------

WaveletCoefficients::WaveletCoefficients(int resolution, Map values) : n_(resolution), values_(std::move(values)) {
  for (const auto& [r, v] : values_) {
    (void)v;
    if (r.first().scale() > n_ || r.second().scale() > n_)
      fail(ErrorCode::invalid_argument, "coefficient rectangle finer than the resolution");
  }
}

Complex WaveletCoefficients::get(const DyadicRectangle& r) const {
  const auto it = values_.find(r);
  return it == values_.end() ? Complex{} : it->second;
}

void WaveletCoefficients::set(const DyadicRectangle& r, Complex value) {
  if (r.first().scale() > n_ || r.second().scale() > n_)
    fail(ErrorCode::invalid_argument, "coefficient rectangle finer than the resolution");
  values_[r] = value;
}

double WaveletCoefficients::energy() const {
  double e = 0.0;
  for (const auto& [r, v] : values_) e += std::norm(v);
  return e;
}

WaveletCoefficients WaveletCoefficients::restricted(const std::function<bool(const DyadicRectangle&)>& keep) const {
  WaveletCoefficients out(n_);
  for (const auto& [r, v] : values_)
    if (keep(r)) out.values_.emplace(r, v);
  return out;
}

WaveletCoefficients WaveletCoefficients::scaled(Complex t) const {
  WaveletCoefficients out(n_);
  for (const auto& [r, v] : values_) out.values_.emplace(r, t * v);
  return out;
}

Complex inner(const WaveletCoefficients& c, const WaveletCoefficients& d) {
  Complex acc{};
  for (const auto& [r, v] : c.values()) acc += v * std::conj(d.get(r));
  return acc;
}

WaveletCoefficients analyze(const GridSignal2D& f, int n) {
  const std::size_t size = f.size();
  check_resolution(n, size);
  const auto spec = spectrum(f);
  std::vector<std::vector<BandEntry>> bands;
  for (int j = 0; j <= n; ++j) bands.push_back(scale_band(j, size));

  WaveletCoefficients::Map out;
  for (int j1 = 0; j1 <= n; ++j1) {
    for (int j2 = 0; j2 <= n; ++j2) {
      const std::size_t p1 = std::size_t{1} << j1, p2 = std::size_t{1} << j2;
      std::vector<Complex> fold(p1 * p2);
      for (const auto& e1 : bands[j1]) {
        const std::size_t row = residue(e1.frequency, j1) * p2;
        for (const auto& e2 : bands[j2])
          fold[row + residue(e2.frequency, j2)] += spec[e1.index * size + e2.index] * e1.u * e2.u;
      }
      const std::size_t dims[2] = {p1, p2};
      fft::inverse(fold, dims);
      for (std::size_t k1 = 0; k1 < p1; ++k1)
        for (std::size_t k2 = 0; k2 < p2; ++k2)
          out.emplace_hint(out.end(), DyadicRectangle(j1, static_cast<std::int64_t>(k1), j2, static_cast<std::int64_t>(k2)),
                           fold[k1 * p2 + k2]);
    }
  }
  return WaveletCoefficients(n, std::move(out));
}

GridSignal2D synthesize(const WaveletCoefficients& c, std::size_t size) {
  const int n = c.resolution();
  check_resolution(n, size);
  std::vector<std::vector<BandEntry>> bands;
  for (int j = 0; j <= n; ++j) bands.push_back(scale_band(j, size));

  // Group coefficients by scale pair into dense position arrays.
  std::map<std::pair<int, int>, std::vector<Complex>> groups;
  for (const auto& [r, v] : c.values()) {
    const int j1 = r.first().scale(), j2 = r.second().scale();
    auto& g = groups[{j1, j2}];
    if (g.empty()) g.resize((std::size_t{1} << j1) << j2);
    g[static_cast<std::size_t>(r.first().position() << j2) + static_cast<std::size_t>(r.second().position())] += v;
  }

  std::vector<Complex> spec(size * size);
  for (auto& [scales, g] : groups) {
    const auto [j1, j2] = scales;
    const std::size_t p1 = std::size_t{1} << j1, p2 = std::size_t{1} << j2;
    const std::size_t dims[2] = {p1, p2};
    fft::forward(g, dims);
    const double total = static_cast<double>(p1 * p2);
    for (const auto& e1 : bands[j1]) {
      const std::size_t row = residue(e1.frequency, j1) * p2;
      for (const auto& e2 : bands[j2])
        spec[e1.index * size + e2.index] += total * std::conj(e1.u * e2.u) * g[row + residue(e2.frequency, j2)];
    }
  }
  return from_spectrum(size, std::move(spec));
}

std::map<DyadicInterval, Complex> analyze_1d(const GridSignal1D& f, int n) {
  const std::size_t size = f.size();
  check_resolution(n, size);
  const auto spec = spectrum(f);
  std::map<DyadicInterval, Complex> out;
  for (int j = 0; j <= n; ++j) {
    const std::size_t p = std::size_t{1} << j;
    std::vector<Complex> fold(p);
    for (const auto& e : scale_band(j, size)) fold[residue(e.frequency, j)] += spec[e.index] * e.u;
    const std::size_t dims[1] = {p};
    fft::inverse(fold, dims);
    for (std::size_t k = 0; k < p; ++k) out.emplace(DyadicInterval(j, static_cast<std::int64_t>(k)), fold[k]);
  }
  return out;
}

GridSignal1D synthesize_1d(const std::map<DyadicInterval, Complex>& c, std::size_t size) {
  int n = 0;
  for (const auto& [i, v] : c) n = std::max(n, i.scale());
  check_resolution(n, size);
  std::vector<Complex> spec(size);
  for (int j = 0; j <= n; ++j) {
    const std::size_t p = std::size_t{1} << j;
    std::vector<Complex> g(p);
    bool any = false;
    for (std::size_t k = 0; k < p; ++k) {
      const auto it = c.find(DyadicInterval(j, static_cast<std::int64_t>(k)));
      if (it != c.end()) {
        g[k] = it->second;
        any = true;
      }
    }
    if (!any) continue;
    const std::size_t dims[1] = {p};
    fft::forward(g, dims);
    for (const auto& e : scale_band(j, size))
      spec[e.index] += static_cast<double>(p) * std::conj(e.u) * g[residue(e.frequency, j)];
  }
  return from_spectrum(std::move(spec));
}

std::vector<double> square_function(const WaveletCoefficients& c, std::size_t n) {
  std::vector<double> acc(n * n, 0.0);
  for (const auto& [r, v] : c.values()) {
    if ((std::size_t{1} << r.first().scale()) > n || (std::size_t{1} << r.second().scale()) > n)
      fail(ErrorCode::invalid_argument, "rectangle finer than the sampling grid");
    const double w = std::norm(v) / r.area();
    if (w == 0.0) continue;
    const std::size_t len1 = n >> r.first().scale(), len2 = n >> r.second().scale();
    const std::size_t lo1 = static_cast<std::size_t>(r.first().position()) * len1;
    const std::size_t lo2 = static_cast<std::size_t>(r.second().position()) * len2;
    for (std::size_t i1 = lo1; i1 < lo1 + len1; ++i1)
      for (std::size_t i2 = lo2; i2 < lo2 + len2; ++i2) acc[i1 * n + i2] += w;
  }
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

std::vector<double> square_function_1d(const std::map<DyadicInterval, Complex>& c, std::size_t n) {
  std::vector<double> acc(n, 0.0);
  for (const auto& [interval, v] : c) {
    if ((std::size_t{1} << interval.scale()) > n) fail(ErrorCode::invalid_argument, "interval finer than the grid");
    const std::size_t len = n >> interval.scale();
    const std::size_t lo = static_cast<std::size_t>(interval.position()) * len;
    for (std::size_t i = lo; i < lo + len; ++i) acc[i] += std::norm(v) / interval.length();
  }
  for (auto& v : acc) v = std::sqrt(v);
  return acc;
}

double lp_norm(std::span<const double> values, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "lp_norm requires p >= 1");
  if (values.empty()) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += std::pow(std::abs(v), p);
  return std::pow(acc / static_cast<double>(values.size()), 1.0 / p);
}

double lp_norm(const GridSignal1D& f, double p) {
  std::vector<double> m;
  for (const auto& v : f.samples()) m.push_back(std::abs(v));
  return lp_norm(m, p);
}

double lp_norm(const GridSignal2D& f, double p) {
  std::vector<double> m;
  for (const auto& v : f.samples()) m.push_back(std::abs(v));
  return lp_norm(m, p);
}

const char* to_string(KernelCase c) {
  switch (c) {
    case KernelCase::zero: return "zero";
    case KernelCase::diagonal: return "diagonal";
    case KernelCase::coarse: return "coarse";
    case KernelCase::other: return "other";
  }
  return "other";
}

KernelCase classify_kernel(const DyadicInterval& i, const DyadicInterval& j) {
  if (i == j) return KernelCase::diagonal;
  if (j.scale() - i.scale() >= 2) return KernelCase::zero;
  if (i.scale() - j.scale() >= 2) return KernelCase::coarse;
  return KernelCase::other;
}

CommutatorKernel commutator_kernel(const DyadicInterval& i, const DyadicInterval& j, std::size_t n) {
  const auto wi = wavelet_sample(i, n);
  const auto cj = conj(wavelet_sample(j, n));
  const auto k = multiply(wi, project_halfline(cj, Sign::plus)) - project_halfline(multiply(wi, cj), Sign::plus);
  return {project_admissible(k), classify_kernel(i, j)};
}

}  // namespace bicomm

#include "bicomm/grid.hpp"

#include <algorithm>
#include <functional>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bicomm/error.hpp"
#include "bicomm/fft.hpp"

namespace bicomm {

int exact_log2(std::size_t n) {
  if (!is_power_of_two(n)) fail(ErrorCode::invalid_argument, "not a power of two: " + std::to_string(n));
  int j = 0;
  while ((std::size_t{1} << j) < n) ++j;
  return j;
}

// ---------------------------------------------------------------------------

GridSignal1D::GridSignal1D(std::vector<Complex> samples) : samples_(std::move(samples)) {
  if (!is_power_of_two(samples_.size()))
    fail(ErrorCode::invalid_argument, "GridSignal1D length must be a power of two, got " +
                                          std::to_string(samples_.size()));
}

GridSignal1D GridSignal1D::zeros(std::size_t n) { return GridSignal1D(std::vector<Complex>(n)); }

GridSignal2D::GridSignal2D(std::size_t n, std::vector<Complex> samples) : n_(n), samples_(std::move(samples)) {
  if (!is_power_of_two(n_))
    fail(ErrorCode::invalid_argument, "GridSignal2D side must be a power of two, got " + std::to_string(n_));
  if (samples_.size() != n_ * n_)
    fail(ErrorCode::dimension_mismatch, "GridSignal2D expects N*N samples");
}

GridSignal2D GridSignal2D::zeros(std::size_t n) { return GridSignal2D(n, std::vector<Complex>(n * n)); }

namespace {

Complex inner_span(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "inner product of signals with different sizes");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * std::conj(b[i]);
  return s / static_cast<double>(a.size());
}

template <class F>
std::vector<Complex> zip(std::span<const Complex> a, std::span<const Complex> b, F f) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "signals have different sizes");
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i], b[i]);
  return out;
}

template <class F>
std::vector<Complex> map_samples(std::span<const Complex> a, F f) {
  std::vector<Complex> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = f(a[i]);
  return out;
}

void check_size(const GridSignal2D& a, const GridSignal2D& b) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "2D signals have different grid sizes");
}

}  // namespace

Complex inner(const GridSignal1D& f, const GridSignal1D& g) { return inner_span(f.samples(), g.samples()); }
Complex inner(const GridSignal2D& f, const GridSignal2D& g) { return inner_span(f.samples(), g.samples()); }
double norm2(const GridSignal1D& f) { return std::sqrt(inner(f, f).real()); }
double norm2(const GridSignal2D& f) { return std::sqrt(inner(f, f).real()); }

double sup_norm(const GridSignal2D& f) {
  double m = 0.0;
  for (const auto& v : f.samples()) m = std::max(m, std::abs(v));
  return m;
}

GridSignal1D operator+(const GridSignal1D& a, const GridSignal1D& b) {
  return GridSignal1D(zip(a.samples(), b.samples(), std::plus<>{}));
}
GridSignal1D operator-(const GridSignal1D& a, const GridSignal1D& b) {
  return GridSignal1D(zip(a.samples(), b.samples(), std::minus<>{}));
}
GridSignal1D operator*(Complex s, const GridSignal1D& a) {
  return GridSignal1D(map_samples(a.samples(), [s](Complex v) { return s * v; }));
}
GridSignal2D operator+(const GridSignal2D& a, const GridSignal2D& b) {
  check_size(a, b);
  return GridSignal2D(a.size(), zip(a.samples(), b.samples(), std::plus<>{}));
}
GridSignal2D operator-(const GridSignal2D& a, const GridSignal2D& b) {
  check_size(a, b);
  return GridSignal2D(a.size(), zip(a.samples(), b.samples(), std::minus<>{}));
}
GridSignal2D operator*(Complex s, const GridSignal2D& a) {
  return GridSignal2D(a.size(), map_samples(a.samples(), [s](Complex v) { return s * v; }));
}

GridSignal1D multiply(const GridSignal1D& a, const GridSignal1D& b) {
  return GridSignal1D(zip(a.samples(), b.samples(), std::multiplies<>{}));
}
GridSignal2D multiply(const GridSignal2D& a, const GridSignal2D& b) {
  check_size(a, b);
  return GridSignal2D(a.size(), zip(a.samples(), b.samples(), std::multiplies<>{}));
}
GridSignal1D conj(const GridSignal1D& a) {
  return GridSignal1D(map_samples(a.samples(), [](Complex v) { return std::conj(v); }));
}
GridSignal2D conj(const GridSignal2D& a) {
  return GridSignal2D(a.size(), map_samples(a.samples(), [](Complex v) { return std::conj(v); }));
}
GridSignal1D abs_squared(const GridSignal1D& a) {
  return GridSignal1D(map_samples(a.samples(), [](Complex v) { return Complex(std::norm(v), 0.0); }));
}
GridSignal2D abs_squared(const GridSignal2D& a) {
  return GridSignal2D(a.size(), map_samples(a.samples(), [](Complex v) { return Complex(std::norm(v), 0.0); }));
}

GridSignal2D translate(const GridSignal2D& f, long shift1, long shift2) {
  const std::size_t n = f.size();
  std::vector<Complex> out(n * n);
  for (std::size_t i1 = 0; i1 < n; ++i1)
    for (std::size_t i2 = 0; i2 < n; ++i2) {
      const std::size_t s1 = fft::index_of(static_cast<long>(i1) - shift1, n);
      const std::size_t s2 = fft::index_of(static_cast<long>(i2) - shift2, n);
      out[i1 * n + i2] = f.at(s1, s2);
    }
  return GridSignal2D(n, std::move(out));
}

bool is_admissible(const GridSignal1D& f, double tol) {
  auto spec = f.to_vector();
  const std::array<std::size_t, 1> dims{f.size()};
  fft::forward(spec, dims);
  const double scale = std::max(norm2(f), std::numeric_limits<double>::min());
  const std::size_t n = f.size();
  double bad = std::abs(spec[0]);
  if (n > 1) bad = std::max(bad, std::abs(spec[n / 2]));
  return bad <= tol * scale;
}

bool is_admissible(const GridSignal2D& f, double tol) {
  auto spec = f.to_vector();
  const std::size_t n = f.size();
  const std::array<std::size_t, 2> dims{n, n};
  fft::forward(spec, dims);
  const double scale = std::max(norm2(f), std::numeric_limits<double>::min());
  double bad = 0.0;
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const bool edge1 = m1 == 0 || m1 == n / 2;
      const bool edge2 = m2 == 0 || m2 == n / 2;
      if (edge1 || edge2) bad = std::max(bad, std::abs(spec[m1 * n + m2]));
    }
  return bad <= tol * scale;
}

// ---------------------------------------------------------------------------

DyadicInterval::DyadicInterval(int scale, std::int64_t position) : scale_(scale), position_(position) {
  if (scale < 0 || scale > 60) fail(ErrorCode::invalid_argument, "dyadic scale out of range");
  if (position < 0 || position >= (std::int64_t{1} << scale))
    fail(ErrorCode::invalid_argument, "dyadic position out of range for scale " + std::to_string(scale));
}

double DyadicInterval::length() const { return std::ldexp(1.0, -scale_); }
double DyadicInterval::left() const { return static_cast<double>(position_) * length(); }
double DyadicInterval::center() const { return (static_cast<double>(position_) + 0.5) * length(); }

bool DyadicInterval::contains(const DyadicInterval& other) const {
  if (other.scale_ < scale_) return false;
  return (other.position_ >> (other.scale_ - scale_)) == position_;
}

DyadicInterval DyadicInterval::parent() const {
  if (scale_ == 0) fail(ErrorCode::invalid_argument, "the unit interval has no dyadic parent");
  return DyadicInterval(scale_ - 1, position_ >> 1);
}

std::strong_ordering DyadicRectangle::operator<=>(const DyadicRectangle& o) const {
  if (auto c = first_.scale() <=> o.first_.scale(); c != 0) return c;
  if (auto c = second_.scale() <=> o.second_.scale(); c != 0) return c;
  if (auto c = first_.position() <=> o.first_.position(); c != 0) return c;
  return second_.position() <=> o.second_.position();
}

std::vector<DyadicRectangle> enumerate_dyadic_rectangles(int n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "resolution must be non-negative");
  std::vector<DyadicRectangle> out;
  const std::size_t per_axis = (std::size_t{2} << n) - 1;
  out.reserve(per_axis * per_axis);
  for (int j1 = 0; j1 <= n; ++j1)
    for (int j2 = 0; j2 <= n; ++j2)
      for (std::int64_t k1 = 0; k1 < (std::int64_t{1} << j1); ++k1)
        for (std::int64_t k2 = 0; k2 < (std::int64_t{1} << j2); ++k2) out.emplace_back(j1, k1, j2, k2);
  return out;
}

// ---------------------------------------------------------------------------

CellSet::CellSet(int resolution) : n_(resolution) {
  if (resolution < 0 || resolution > 12) fail(ErrorCode::invalid_argument, "cell resolution out of range");
  mask_.assign(static_cast<std::size_t>(side()) * side(), 0);
}

CellSet::CellSet(int resolution, std::vector<std::uint8_t> mask) : CellSet(resolution) {
  if (mask.size() != mask_.size()) fail(ErrorCode::dimension_mismatch, "cell mask has the wrong size");
  for (std::size_t i = 0; i < mask.size(); ++i) mask_[i] = mask[i] ? 1 : 0;
}

CellSet CellSet::full(int resolution) {
  CellSet u(resolution);
  std::fill(u.mask_.begin(), u.mask_.end(), 1);
  return u;
}

CellRange cell_range(const DyadicInterval& interval, int resolution) {
  if (interval.scale() > resolution)
    fail(ErrorCode::invalid_argument, "dyadic interval finer than the cell resolution");
  const int width = 1 << (resolution - interval.scale());
  const int lo = static_cast<int>(interval.position()) * width;
  return {lo, lo + width};
}

CellSet CellSet::from_rectangle(int resolution, const DyadicRectangle& r) {
  const auto a = cell_range(r.first(), resolution);
  const auto b = cell_range(r.second(), resolution);
  return box(resolution, a.lo, a.hi, b.lo, b.hi);
}

CellSet CellSet::box(int resolution, int lo1, int hi1, int lo2, int hi2) {
  CellSet u(resolution);
  const int m = u.side();
  for (int c2 = std::max(lo2, 0); c2 < std::min(hi2, m); ++c2)
    for (int c1 = std::max(lo1, 0); c1 < std::min(hi1, m); ++c1) u.mask_[u.index(c1, c2)] = 1;
  return u;
}

std::size_t CellSet::count() const { return static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1)); }

double CellSet::measure() const { return std::ldexp(static_cast<double>(count()), -2 * n_); }

CellSet CellSet::with_cell(int c1, int c2, bool value) const {
  CellSet u = *this;
  u.mask_[index(c1, c2)] = value ? 1 : 0;
  return u;
}

CellSet CellSet::operator|(const CellSet& o) const {
  if (o.n_ != n_) fail(ErrorCode::dimension_mismatch, "cell sets at different resolutions");
  CellSet u = *this;
  for (std::size_t i = 0; i < mask_.size(); ++i) u.mask_[i] = mask_[i] | o.mask_[i];
  return u;
}

CellSet CellSet::operator&(const CellSet& o) const {
  if (o.n_ != n_) fail(ErrorCode::dimension_mismatch, "cell sets at different resolutions");
  CellSet u = *this;
  for (std::size_t i = 0; i < mask_.size(); ++i) u.mask_[i] = mask_[i] & o.mask_[i];
  return u;
}

CellSet CellSet::operator~() const {
  CellSet u = *this;
  for (auto& b : u.mask_) b ^= 1;
  return u;
}

// ---------------------------------------------------------------------------

CellField::CellField(int resolution, std::vector<double> values) : n_(resolution), values_(std::move(values)) {
  const auto side = static_cast<std::size_t>(1) << resolution;
  if (values_.size() != side * side) fail(ErrorCode::dimension_mismatch, "cell field has the wrong size");
}

CellField CellField::indicator(const CellSet& u) {
  std::vector<double> v(u.mask().begin(), u.mask().end());
  return CellField(u.resolution(), std::move(v));
}

CellSet CellField::above(double threshold) const {
  std::vector<std::uint8_t> mask(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) mask[i] = values_[i] > threshold ? 1 : 0;
  return CellSet(n_, std::move(mask));
}

CellCounter::CellCounter(const CellSet& u) : n_(u.resolution()), side_(u.side()) {
  const auto w = static_cast<std::size_t>(side_) + 1;
  table_.assign(w * w, 0);
  for (int c2 = 0; c2 < side_; ++c2)
    for (int c1 = 0; c1 < side_; ++c1)
      table_[(c2 + 1) * w + (c1 + 1)] = (u.contains(c1, c2) ? 1 : 0) + table_[c2 * w + (c1 + 1)] +
                                        table_[(c2 + 1) * w + c1] - table_[c2 * w + c1];
}

long CellCounter::count(int lo1, int hi1, int lo2, int hi2) const {
  lo1 = std::clamp(lo1, 0, side_);
  hi1 = std::clamp(hi1, 0, side_);
  lo2 = std::clamp(lo2, 0, side_);
  hi2 = std::clamp(hi2, 0, side_);
  if (lo1 >= hi1 || lo2 >= hi2) return 0;
  const auto w = static_cast<std::size_t>(side_) + 1;
  return table_[hi2 * w + hi1] - table_[lo2 * w + hi1] - table_[hi2 * w + lo1] + table_[lo2 * w + lo1];
}

bool CellCounter::covers(int lo1, int hi1, int lo2, int hi2) const {
  if (lo1 < 0 || lo2 < 0 || hi1 > side_ || hi2 > side_) return false;
  if (lo1 >= hi1 || lo2 >= hi2) return true;
  return count(lo1, hi1, lo2, hi2) == static_cast<long>(hi1 - lo1) * (hi2 - lo2);
}

bool CellCounter::covers(const DyadicRectangle& r) const {
  const auto a = cell_range(r.first(), n_);
  const auto b = cell_range(r.second(), n_);
  return covers(a.lo, a.hi, b.lo, b.hi);
}

// ---------------------------------------------------------------------------

namespace {

// Uncentered maximal averages of one line: best[i] = max over a <= i <= b of
// mean(v[a..b]). For fixed a, a downward sweep over b keeps the running
// maximum of mean(v[a..b']) over b' >= b, and every such run contains b.
void line_maximal(std::span<const double> v, std::span<double> best) {
  const std::size_t len = v.size();
  std::vector<double> prefix(len + 1, 0.0);
  for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + v[i];
  std::fill(best.begin(), best.end(), -std::numeric_limits<double>::infinity());
  for (std::size_t a = 0; a < len; ++a) {
    double running = -std::numeric_limits<double>::infinity();
    for (std::size_t b = len; b-- > a;) {
      const double avg = (prefix[b + 1] - prefix[a]) / static_cast<double>(b + 1 - a);
      running = std::max(running, avg);
      best[b] = std::max(best[b], running);
    }
  }
}

// Same sweep on integer cell counts, each averaged over `height` rows; every
// average is a single correctly rounded quotient count / (length * height).
void line_maximal_counts(std::span<const long> counts, long height, std::span<double> best) {
  const std::size_t len = counts.size();
  std::vector<long> prefix(len + 1, 0);
  for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + counts[i];
  std::fill(best.begin(), best.end(), 0.0);
  for (std::size_t a = 0; a < len; ++a) {
    double running = 0.0;
    for (std::size_t b = len; b-- > a;) {
      const double avg = static_cast<double>(prefix[b + 1] - prefix[a]) /
                         static_cast<double>(static_cast<long>(b + 1 - a) * height);
      running = std::max(running, avg);
      best[b] = std::max(best[b], running);
    }
  }
}

}  // namespace

CellField maximal_1d(const CellField& f, Axis axis) {
  const int m = f.side();
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  std::vector<double> line(m), best(m);
  for (int fixed = 0; fixed < m; ++fixed) {
    for (int t = 0; t < m; ++t) line[t] = axis == Axis::first ? f.at(t, fixed) : f.at(fixed, t);
    line_maximal(line, best);
    for (int t = 0; t < m; ++t) {
      const int c1 = axis == Axis::first ? t : fixed;
      const int c2 = axis == Axis::first ? fixed : t;
      out[static_cast<std::size_t>(c2) * m + c1] = best[t];
    }
  }
  return CellField(f.resolution(), std::move(out));
}

CellField maximal_1d(const CellSet& u, Axis axis) {
  const int m = u.side();
  std::vector<double> out(static_cast<std::size_t>(m) * m);
  std::vector<long> line(m);
  std::vector<double> best(m);
  for (int fixed = 0; fixed < m; ++fixed) {
    for (int t = 0; t < m; ++t) line[t] = axis == Axis::first ? u.contains(t, fixed) : u.contains(fixed, t);
    line_maximal_counts(line, 1, best);
    for (int t = 0; t < m; ++t) {
      const int c1 = axis == Axis::first ? t : fixed;
      const int c2 = axis == Axis::first ? fixed : t;
      out[static_cast<std::size_t>(c2) * m + c1] = best[t];
    }
  }
  return CellField(u.resolution(), std::move(out));
}

CellField strong_maximal(const CellSet& u) {
  const int m = u.side();
  const CellCounter counter(u);
  std::vector<double> out(static_cast<std::size_t>(m) * m, 0.0);
  std::vector<long> column(m);
  std::vector<double> best(m);
  // Fix the second-axis run [lo2, hi2]; the box average is then a
  // first-axis run average of per-column counts.
  for (int lo2 = 0; lo2 < m; ++lo2)
    for (int hi2 = lo2; hi2 < m; ++hi2) {
      for (int c1 = 0; c1 < m; ++c1) column[c1] = counter.count(c1, c1 + 1, lo2, hi2 + 1);
      line_maximal_counts(column, hi2 - lo2 + 1, best);
      for (int c2 = lo2; c2 <= hi2; ++c2)
        for (int c1 = 0; c1 < m; ++c1) {
          auto& slot = out[static_cast<std::size_t>(c2) * m + c1];
          slot = std::max(slot, best[c1]);
        }
    }
  return CellField(u.resolution(), std::move(out));
}

}  // namespace bicomm

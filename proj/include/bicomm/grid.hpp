#pragma once

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bicomm {

using Complex = std::complex<double>;

enum class Axis { first = 1, second = 2 };
enum class Sign { plus, minus };

constexpr bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// log2 of a power of two.
int exact_log2(std::size_t n);

// ---------------------------------------------------------------------------
// Periodic grid signals
// ---------------------------------------------------------------------------

/// Complex samples f(i/N), i = 0..N-1, of a function on the torus [0,1).
class GridSignal1D {
 public:
  explicit GridSignal1D(std::vector<Complex> samples);
  static GridSignal1D zeros(std::size_t n);

  std::size_t size() const noexcept { return samples_.size(); }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& operator[](std::size_t i) const { return samples_[i]; }
  std::vector<Complex> to_vector() const { return samples_; }

 private:
  std::vector<Complex> samples_;
};

/// Samples f(i1/N, i2/N) on the N x N torus grid, stored row-major with the
/// first-axis index i1 selecting the row: element (i1, i2) sits at i1*N + i2.
class GridSignal2D {
 public:
  GridSignal2D(std::size_t n, std::vector<Complex> samples);
  static GridSignal2D zeros(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::span<const Complex> samples() const noexcept { return samples_; }
  const Complex& at(std::size_t i1, std::size_t i2) const { return samples_[i1 * n_ + i2]; }
  std::vector<Complex> to_vector() const { return samples_; }

 private:
  std::size_t n_;
  std::vector<Complex> samples_;
};

/// Grid inner products N^{-d} sum f conj(g) and the induced norms.
Complex inner(const GridSignal1D& f, const GridSignal1D& g);
Complex inner(const GridSignal2D& f, const GridSignal2D& g);
double norm2(const GridSignal1D& f);
double norm2(const GridSignal2D& f);
double sup_norm(const GridSignal2D& f);

GridSignal1D operator+(const GridSignal1D& a, const GridSignal1D& b);
GridSignal1D operator-(const GridSignal1D& a, const GridSignal1D& b);
GridSignal1D operator*(Complex s, const GridSignal1D& a);
GridSignal2D operator+(const GridSignal2D& a, const GridSignal2D& b);
GridSignal2D operator-(const GridSignal2D& a, const GridSignal2D& b);
GridSignal2D operator*(Complex s, const GridSignal2D& a);

/// Pointwise product, conjugate and squared modulus.
GridSignal1D multiply(const GridSignal1D& a, const GridSignal1D& b);
GridSignal2D multiply(const GridSignal2D& a, const GridSignal2D& b);
GridSignal1D conj(const GridSignal1D& a);
GridSignal2D conj(const GridSignal2D& a);
GridSignal1D abs_squared(const GridSignal1D& a);
GridSignal2D abs_squared(const GridSignal2D& a);

/// Cyclic translation: result(i) = f(i - shift).
GridSignal2D translate(const GridSignal2D& f, long shift1, long shift2);

/// Admissible signals have no energy on frequency 0 or the Nyquist frequency
/// (in either axis for 2D). `tol` is relative to the L2 norm.
bool is_admissible(const GridSignal1D& f, double tol = 1e-12);
bool is_admissible(const GridSignal2D& f, double tol = 1e-12);

// ---------------------------------------------------------------------------
// Dyadic lattice
// ---------------------------------------------------------------------------

/// [k 2^-j, (k+1) 2^-j) inside [0,1).
class DyadicInterval {
 public:
  DyadicInterval(int scale, std::int64_t position);

  int scale() const noexcept { return scale_; }
  std::int64_t position() const noexcept { return position_; }
  double length() const;
  double left() const;
  double center() const;
  bool contains(const DyadicInterval& other) const;
  DyadicInterval parent() const;

  bool operator==(const DyadicInterval&) const = default;
  auto operator<=>(const DyadicInterval&) const = default;

 private:
  int scale_;
  std::int64_t position_;
};

class DyadicRectangle {
 public:
  DyadicRectangle(DyadicInterval first, DyadicInterval second) : first_(first), second_(second) {}
  DyadicRectangle(int j1, std::int64_t k1, int j2, std::int64_t k2)
      : first_(j1, k1), second_(j2, k2) {}

  const DyadicInterval& first() const noexcept { return first_; }
  const DyadicInterval& second() const noexcept { return second_; }
  const DyadicInterval& side(Axis axis) const { return axis == Axis::first ? first_ : second_; }
  double area() const { return first_.length() * second_.length(); }
  bool contains(const DyadicRectangle& other) const {
    return first_.contains(other.first_) && second_.contains(other.second_);
  }

  bool operator==(const DyadicRectangle&) const = default;
  /// Orders by (j1, j2, k1, k2), the canonical enumeration order.
  std::strong_ordering operator<=>(const DyadicRectangle& o) const;

 private:
  DyadicInterval first_;
  DyadicInterval second_;
};

/// All rectangles with both scales in [0, n], in (j1, j2, k1, k2) order.
std::vector<DyadicRectangle> enumerate_dyadic_rectangles(int n);

// ---------------------------------------------------------------------------
// Cell sets and cell fields
// ---------------------------------------------------------------------------

/// Union of cells of the uniform 2^n x 2^n partition of [0,1)^2. Cell (c1, c2)
/// is [c1 2^-n, (c1+1) 2^-n) x [c2 2^-n, (c2+1) 2^-n).
class CellSet {
 public:
  explicit CellSet(int resolution);
  CellSet(int resolution, std::vector<std::uint8_t> mask);
  static CellSet full(int resolution);
  /// Cells covered by a dyadic rectangle; its scales must not exceed `resolution`.
  static CellSet from_rectangle(int resolution, const DyadicRectangle& r);
  /// Cells with c1 in [lo1, hi1) and c2 in [lo2, hi2).
  static CellSet box(int resolution, int lo1, int hi1, int lo2, int hi2);

  int resolution() const noexcept { return n_; }
  int side() const noexcept { return 1 << n_; }
  bool contains(int c1, int c2) const { return mask_[index(c1, c2)] != 0; }
  std::size_t count() const;
  double measure() const;
  bool empty() const { return count() == 0; }
  std::span<const std::uint8_t> mask() const noexcept { return mask_; }

  CellSet with_cell(int c1, int c2, bool value) const;

  CellSet operator|(const CellSet& o) const;
  CellSet operator&(const CellSet& o) const;
  CellSet operator~() const;
  bool operator==(const CellSet& o) const = default;

  std::size_t index(int c1, int c2) const {
    return static_cast<std::size_t>(c2) * static_cast<std::size_t>(side()) + static_cast<std::size_t>(c1);
  }

 private:
  int n_;
  std::vector<std::uint8_t> mask_;
};

/// Real values on the cells of a 2^n x 2^n partition, indexed like CellSet.
class CellField {
 public:
  CellField(int resolution, std::vector<double> values);
  static CellField indicator(const CellSet& u);

  int resolution() const noexcept { return n_; }
  int side() const noexcept { return 1 << n_; }
  double at(int c1, int c2) const { return values_[static_cast<std::size_t>(c2) * side() + c1]; }
  std::span<const double> values() const noexcept { return values_; }

  /// {x : field(x) > threshold}.
  CellSet above(double threshold) const;

 private:
  int n_;
  std::vector<double> values_;
};

/// Summed-area table for O(1) cell counts over boxes of a CellSet.
class CellCounter {
 public:
  explicit CellCounter(const CellSet& u);

  /// Number of set cells with c1 in [lo1, hi1) and c2 in [lo2, hi2); the box
  /// is clipped to the grid.
  long count(int lo1, int hi1, int lo2, int hi2) const;
  /// Whether every cell of the box lies in the grid and in the set.
  bool covers(int lo1, int hi1, int lo2, int hi2) const;
  bool covers(const DyadicRectangle& r) const;

 private:
  int n_;
  int side_;
  std::vector<long> table_;
};

/// Cell-index extent [lo, hi) of a dyadic interval at resolution n.
struct CellRange {
  int lo;
  int hi;
};
CellRange cell_range(const DyadicInterval& interval, int resolution);

/// Uncentered one-dimensional maximal function along `axis`: at each cell the
/// largest average of the field over runs of consecutive cells (same row or
/// column, no wrap-around) that contain the cell.
CellField maximal_1d(const CellField& f, Axis axis);
CellField maximal_1d(const CellSet& u, Axis axis);

/// Uncentered strong maximal function: largest average over axis-parallel
/// boxes of cells containing the cell.
CellField strong_maximal(const CellSet& u);

}  // namespace bicomm

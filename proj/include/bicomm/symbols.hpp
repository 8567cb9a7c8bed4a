#pragma once

#include <optional>
#include <string>

#include "bicomm/grid.hpp"
#include "bicomm/random.hpp"
#include "bicomm/wavelets.hpp"

namespace bicomm {

enum class SymbolFamily { random_carleson, single_rectangle, row_of_squares_dual, multiscale, file };

const char* to_string(SymbolFamily f);
SymbolFamily parse_symbol_family(const std::string& name);

struct FamilySpec {
  SymbolFamily kind = SymbolFamily::random_carleson;
  /// single-rectangle: fixed rectangle; drawn at random when absent.
  std::optional<DyadicRectangle> rectangle;
  /// row-of-squares-dual: number of squares and horizontal fill density.
  int squares = 8;
  double density = 2.0 / 3.0;
  /// multiscale: the square [0, 2^-s)^2 and the anisotropy decay beta in
  /// |c_R|^2 proportional to |R| 2^{-beta |j1 - j2|}.
  int square_scale = 1;
  double anisotropy_decay = 1.0;
  /// file: base path of a GridSignal (.bin plus .json sidecar).
  std::string path;
};

struct Symbol {
  GridSignal2D b;
  /// Coefficient set the symbol was synthesized from (empty for file symbols).
  WaveletCoefficients coefficients;
  /// Set carrying the coefficient mass (empty for file symbols).
  CellSet support;
};

/// Union of random cell boxes; boxes are added until the measure reaches
/// `min_measure`.
CellSet random_cell_union(Rng& rng, int resolution, double min_measure);

/// Union of 1..max_boxes random boxes with sides up to half the grid.
CellSet random_open_set(Rng& rng, int resolution, int max_boxes = 8);

/// Draws one symbol of the family on the N x N grid with wavelet scales up
/// to `resolution`.
Symbol make_symbol(const FamilySpec& spec, std::size_t n, int resolution, Rng& rng);

/// Unit-norm admissible symbols with spectrum in 1 <= |k_i| <= N/4 (all
/// products alias-free); `holomorphic` keeps only k1, k2 > 0.
GridSignal2D bandlimited_symbol(Rng& rng, std::size_t n, bool holomorphic = false);
GridSignal1D bandlimited_symbol_1d(Rng& rng, std::size_t n);

}  // namespace bicomm

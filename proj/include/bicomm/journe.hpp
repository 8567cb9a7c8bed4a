#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bicomm/collection.hpp"
#include "bicomm/grid.hpp"
#include "bicomm/wavelets.hpp"

namespace bicomm {

/// Dyadic rectangles R in U that are maximal under inclusion among dyadic
/// rectangles contained in U.
RectCollection maximal_rectangles(const CellSet& u);

/// {M_outer 1_{M_inner 1_U > threshold} > threshold}.
CellSet composed_level_set(const CellSet& u, Axis inner, Axis outer, double threshold);

/// V = V_12 u V_21 with V_ij = {M_i 1_{M_j 1_U > delta} > delta}.
CellSet enlargement(const CellSet& u, double delta);

enum class DilationMode { both_axes, first_axis_only };

/// Largest lambda such that the centered dilate (lambda R in both axes, or
/// lambda R_1 x R_2) lies in `target`. The dilate is rasterized to the cells
/// meeting its open interior, so the supremum is attained at one of the
/// finitely many lambda where the dilate boundary crosses a grid line.
/// Dilates leaving [0,1)^2 do not fit. Returns 0 when no lambda > 0 fits.
double dilation_depth(const DyadicRectangle& r, const CellSet& target, DilationMode mode);

struct EmbeddednessReport {
  DyadicRectangle rect{0, 0, 0, 0};
  double mu = 0.0;
  double nu = 0.0;
  double delta = 0.0;
  bool has_nu = false;
};

/// mu = dilation_depth(R, V, both_axes). When U is supplied, also
/// nu = dilation_depth(R, {strong_maximal(1_U) > 1/2}, first_axis_only).
EmbeddednessReport embeddedness(const DyadicRectangle& r, const CellSet& v, double delta,
                                const CellSet* u = nullptr);

struct JourneSum {
  double sum = 0.0;
  double ratio = 0.0;  // sum / measure(U)
  std::vector<EmbeddednessReport> table;
};

/// sum over maximal rectangles R of U of mu_delta(R)^{-epsilon} |R|.
JourneSum journe_sum(const CellSet& u, double delta, double epsilon);

/// Members R of S for which the rectangles of S - {R} that are longer than R
/// in axis j cover strictly more than gamma |R| of R.
RectCollection bad_class(const RectCollection& s, Axis j, double gamma);

/// d = ceil(log2(32 mu / (1 - gamma))).
int thinning_modulus(double mu, double gamma);

/// The d^2 residue classes of (j1 mod d, j2 mod d), in lexicographic
/// residue order. Members of one class that differ in side length along an
/// axis differ by a factor 2^d > 16 mu / (1 - gamma).
std::vector<RectCollection> thin_collection(const RectCollection& s, double mu, double gamma);

enum class PairTag { lt, lt1, lt2, sim };
const char* to_string(PairTag t);

/// Tag for R' against R when |R'_j| <= 4 |R_j| for both j; nullopt
/// otherwise. "Small" in axis j means 8 |R'_j| <= |R_j|; '<' is small in
/// both axes, '<1' / '<2' only in that axis, and '~' in neither.
std::optional<PairTag> classify_pair(const DyadicRectangle& rp, const DyadicRectangle& r);

using RectPair = std::pair<DyadicRectangle, DyadicRectangle>;  // (R', R)

struct PairPartition {
  std::vector<RectPair> lt, lt1, lt2, sim;
};

PairPartition partition_pairs(const RectCollection& w, const RectCollection& u);

/// 0 for mu <= 1, else the k with 2^{k-1} < mu <= 2^k.
int stratum_of(double mu);

/// Splits the collection by stratum of mu(R) = dilation_depth(R, V), using a
/// stored mu attribute when present. Returned members carry mu and stratum.
std::map<int, RectCollection> stratify(const RectCollection& ucol, const CellSet& v);

/// At each grid point, max over cutoffs (s1, s2) of
/// |sum_{R in A, j1(R) <= s1, j2(R) <= s2} c_R v_R(x)|; the cutoffs are the
/// distinct scale pairs selected by R' < R as R' ranges over the lattice.
/// Row-major like GridSignal2D.
std::vector<double> maximal_truncation(const WaveletCoefficients& c, const RectCollection& a, std::size_t n);

struct RowOfSquares {
  CellSet set{0};
  DyadicRectangle middle{0, 0, 0, 0};
  int side_cells = 0;
  int gap_cells = 0;
};

/// K congruent squares of side 2^m cells in a horizontal row with gap
/// max(1, floor(side (1 - density) / density)) cells, choosing the largest
/// side that fits. Square K/2 is dyadic. Requires K >= 2, density > 1/2.
RowOfSquares row_of_squares(int k, double density, int resolution = 7);

struct ThinningAudit {
  int subclasses = 0;             // nonempty subclasses examined
  int counterexamples = 0;
  std::vector<RectCollection> failing;  // B1(B1(S')) != empty, archived
};

/// Stratifies the maximal rectangles of U by mu_delta, thins each stratum k
/// with mu = max(1, 2^{k-1}) and gamma (default delta^{1/3}), and checks that
/// B_1(B_1(S')) is empty for every subclass S'.
ThinningAudit thinning_audit(const CellSet& u, double delta, std::optional<double> gamma = std::nullopt);

}  // namespace bicomm

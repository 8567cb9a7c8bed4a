#pragma once

#include <map>
#include <optional>
#include <vector>

#include "bicomm/error.hpp"
#include "bicomm/grid.hpp"
#include "bicomm/wavelets.hpp"

namespace bicomm {

/// A lower bound for a Carleson-type supremum together with the open set
/// that attains it. `value^2 * measure(witness)` never exceeds the packed
/// energy of the witness (up to roundoff).
struct BmoEstimate {
  double value = 0.0;
  CellSet witness{0};
  bool exact = false;
};

/// sum of |c_R|^2 over coefficients whose rectangle lies inside u. The cell
/// resolution of u must be at least the coefficient resolution.
double energy_inside(const WaveletCoefficients& c, const CellSet& u);

/// Re-checks value^2 * |witness| <= energy_inside(witness) + slack.
bool certificate_holds(const WaveletCoefficients& c, const BmoEstimate& e, double slack = 1e-12);

/// Exact supremum over dyadic rectangles S of (|S|^{-1} sum_{R in S} |c_R|^2)^{1/2}.
/// Ties go to the first S in (j1, j2, k1, k2) order.
BmoEstimate rect_bmo(const WaveletCoefficients& c);

struct GreedyOptions {
  int budget = 64;            // maximum number of accepted additions
  bool allow_exhaustive = true;
};

/// Greedy search over cell unions seeded by the rect_bmo witness. Each step
/// adds the dyadic rectangle whose union with the current set has the best
/// energy-to-measure ratio, as long as that ratio does not drop and the
/// packed energy grows. When `trajectory` is given, every accepted set is
/// appended to it.
BmoEstimate product_bmo_greedy(const WaveletCoefficients& c, int budget,
                               std::vector<CellSet>* trajectory = nullptr);

/// Scan of all 2^(4^n) cell unions; resolution n <= 2 only.
BmoEstimate product_bmo_exhaustive(const WaveletCoefficients& c);

inline constexpr int kExhaustiveResolution = 2;

/// Exhaustive when the resolution allows it (and the caller permits it),
/// greedy otherwise. Never below rect_bmo.
BmoEstimate product_bmo_lower(const WaveletCoefficients& c, const GreedyOptions& options = {});

/// Raised when the packing premise sum_{R in U'} a_R <= |U'| fails.
class PackingViolation : public Error {
 public:
  PackingViolation(const std::string& what, CellSet offending, double excess)
      : Error(ErrorCode::domain_violation, what), offending_(std::move(offending)), excess_(excess) {}
  const CellSet& offending() const noexcept { return offending_; }
  double excess() const noexcept { return excess_; }

 private:
  CellSet offending_;
  double excess_;
};

using RectWeights = std::map<DyadicRectangle, double>;

/// ||sum_{R in U} a_R |R|^{-1} 1_R||_p / |U|^{1/p}, evaluated on the cells of U.
/// The packing premise is verified on `premise_sets` (default: U itself and
/// every dyadic square at the resolution of U); this is a partial check.
double john_nirenberg_ratio(const RectWeights& a, const CellSet& u, double p,
                            const std::optional<std::vector<CellSet>>& premise_sets = std::nullopt);

struct PackingReport {
  bool passed = false;
  double worst_ratio = 0.0;  // max over the family of energy / (norm^2 |U|)
  CellSet worst_set{0};
};

/// Carleson packing check over all dyadic rectangles plus the sets visited by
/// the greedy search.
PackingReport carleson_packing_check(const WaveletCoefficients& c, double norm, int greedy_budget = 64);

}  // namespace bicomm

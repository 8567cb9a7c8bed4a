#include "bicomm/bmo.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace bicomm {
namespace {

void check_cells(const WaveletCoefficients& c, const CellSet& u) {
  if (u.resolution() < c.resolution())
    fail(ErrorCode::dimension_mismatch, "cell set coarser than the coefficient resolution");
}

double ratio_of(double energy, const CellSet& u) { return u.empty() ? 0.0 : energy / u.measure(); }

// Nonzero squared coefficients, kept in canonical rectangle order.
struct Weighted {
  DyadicRectangle rect;
  double weight;
};

std::vector<Weighted> nonzero(const WaveletCoefficients& c) {
  std::vector<Weighted> out;
  for (const auto& [r, v] : c.values())
    if (std::norm(v) > 0.0) out.push_back({r, std::norm(v)});
  return out;
}

double energy_with(const std::vector<Weighted>& ws, const CellSet& u) {
  const CellCounter counter(u);
  double e = 0.0;
  for (const auto& w : ws)
    if (counter.covers(w.rect)) e += w.weight;
  return e;
}

}  // namespace

double energy_inside(const WaveletCoefficients& c, const CellSet& u) {
  check_cells(c, u);
  return energy_with(nonzero(c), u);
}

bool certificate_holds(const WaveletCoefficients& c, const BmoEstimate& e, double slack) {
  return e.value * e.value * e.witness.measure() <= energy_inside(c, e.witness) + slack;
}

BmoEstimate rect_bmo(const WaveletCoefficients& c) {
  const int n = c.resolution();
  // acc[j1][j2] holds values indexed k1 * 2^j2 + k2.
  std::vector<std::vector<std::vector<double>>> acc(n + 1, std::vector<std::vector<double>>(n + 1));
  for (int j1 = 0; j1 <= n; ++j1)
    for (int j2 = 0; j2 <= n; ++j2) acc[j1][j2].assign((std::size_t{1} << j1) << j2, 0.0);
  for (const auto& [r, v] : c.values()) {
    const int j2 = r.second().scale();
    acc[r.first().scale()][j2][(static_cast<std::size_t>(r.first().position()) << j2) +
                               static_cast<std::size_t>(r.second().position())] += std::norm(v);
  }
  // Subtree sums along the first axis, then along the second.
  for (int j1 = n - 1; j1 >= 0; --j1)
    for (int j2 = 0; j2 <= n; ++j2) {
      const std::size_t w = std::size_t{1} << j2;
      for (std::size_t k1 = 0; k1 < (std::size_t{1} << j1); ++k1)
        for (std::size_t k2 = 0; k2 < w; ++k2)
          acc[j1][j2][k1 * w + k2] += acc[j1 + 1][j2][(2 * k1) * w + k2] + acc[j1 + 1][j2][(2 * k1 + 1) * w + k2];
    }
  for (int j1 = 0; j1 <= n; ++j1)
    for (int j2 = n - 1; j2 >= 0; --j2) {
      const std::size_t w = std::size_t{1} << j2;
      for (std::size_t k1 = 0; k1 < (std::size_t{1} << j1); ++k1)
        for (std::size_t k2 = 0; k2 < w; ++k2)
          acc[j1][j2][k1 * w + k2] += acc[j1][j2 + 1][k1 * 2 * w + 2 * k2] + acc[j1][j2 + 1][k1 * 2 * w + 2 * k2 + 1];
    }

  double best = -1.0;
  DyadicRectangle arg(0, 0, 0, 0);
  for (int j1 = 0; j1 <= n; ++j1)
    for (int j2 = 0; j2 <= n; ++j2) {
      const std::size_t w = std::size_t{1} << j2;
      const double area = std::ldexp(1.0, -(j1 + j2));
      for (std::size_t k1 = 0; k1 < (std::size_t{1} << j1); ++k1)
        for (std::size_t k2 = 0; k2 < w; ++k2) {
          const double ratio = acc[j1][j2][k1 * w + k2] / area;
          if (ratio > best) {
            best = ratio;
            arg = DyadicRectangle(j1, static_cast<std::int64_t>(k1), j2, static_cast<std::int64_t>(k2));
          }
        }
    }
  return {std::sqrt(best), CellSet::from_rectangle(n, arg), true};
}

BmoEstimate product_bmo_greedy(const WaveletCoefficients& c, int budget, std::vector<CellSet>* trajectory) {
  if (budget < 1) fail(ErrorCode::invalid_argument, "greedy budget must be at least 1");
  const int n = c.resolution();
  const auto ws = nonzero(c);
  const auto seed = rect_bmo(c);
  CellSet current = seed.witness;
  double energy = energy_with(ws, current);
  double ratio = ratio_of(energy, current);
  if (trajectory) trajectory->push_back(current);

  CellSet best_set = current;
  double best_ratio = ratio;
  const auto candidates = enumerate_dyadic_rectangles(n);
  for (int step = 0; step < budget && !ws.empty(); ++step) {
    const CellCounter inside(current);
    std::optional<CellSet> pick;
    double pick_ratio = -1.0, pick_energy = 0.0;
    for (const auto& q : candidates) {
      if (inside.covers(q)) continue;
      CellSet trial = current | CellSet::from_rectangle(n, q);
      const double e = energy_with(ws, trial);
      const double r = ratio_of(e, trial);
      if (r > pick_ratio) {
        pick_ratio = r;
        pick_energy = e;
        pick = std::move(trial);
      }
    }
    if (!pick || pick_energy <= energy || pick_ratio < ratio * (1.0 - 1e-12)) break;
    current = std::move(*pick);
    energy = pick_energy;
    ratio = pick_ratio;
    if (trajectory) trajectory->push_back(current);
    if (ratio >= best_ratio * (1.0 - 1e-12)) {
      best_ratio = std::max(best_ratio, ratio);
      best_set = current;
    }
  }
  const double value = std::sqrt(ratio_of(energy_with(ws, best_set), best_set));
  return {value, best_set, false};
}

BmoEstimate product_bmo_exhaustive(const WaveletCoefficients& c) {
  const int n = c.resolution();
  if (n > kExhaustiveResolution)
    fail(ErrorCode::invalid_argument, "exhaustive scan needs resolution <= " + std::to_string(kExhaustiveResolution));
  const int side = 1 << n;
  const int cells = side * side;
  std::vector<std::pair<std::uint32_t, double>> masks;
  for (const auto& w : nonzero(c)) {
    const auto set = CellSet::from_rectangle(n, w.rect);
    std::uint32_t m = 0;
    for (int i = 0; i < cells; ++i)
      if (set.mask()[i]) m |= 1u << i;
    masks.emplace_back(m, w.weight);
  }
  double best = -1.0;
  std::uint32_t arg = (1u << cells) - 1;
  for (std::uint32_t u = 1; u < (1u << cells); ++u) {
    double e = 0.0;
    for (const auto& [m, w] : masks)
      if ((m & ~u) == 0) e += w;
    const double ratio = e * cells / __builtin_popcount(u);
    if (ratio > best) {
      best = ratio;
      arg = u;
    }
  }
  std::vector<std::uint8_t> bits(cells);
  for (int i = 0; i < cells; ++i) bits[i] = (arg >> i) & 1u;
  return {std::sqrt(best), CellSet(n, std::move(bits)), true};
}

BmoEstimate product_bmo_lower(const WaveletCoefficients& c, const GreedyOptions& options) {
  if (options.budget < 1) fail(ErrorCode::invalid_argument, "greedy budget must be at least 1");
  if (options.allow_exhaustive && c.resolution() <= kExhaustiveResolution) return product_bmo_exhaustive(c);
  return product_bmo_greedy(c, options.budget);
}

double john_nirenberg_ratio(const RectWeights& a, const CellSet& u, double p,
                            const std::optional<std::vector<CellSet>>& premise_sets) {
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "John-Nirenberg ratio needs p >= 1");
  const int n = u.resolution();
  for (const auto& [r, w] : a) {
    if (w < 0.0) fail(ErrorCode::invalid_argument, "packing weights must be nonnegative");
    if (r.first().scale() > n || r.second().scale() > n)
      fail(ErrorCode::dimension_mismatch, "weighted rectangle finer than the cell resolution");
  }
  std::vector<CellSet> family;
  if (premise_sets) {
    family = *premise_sets;
  } else {
    family.push_back(u);
    for (int j = 0; j <= n; ++j)
      for (std::int64_t k1 = 0; k1 < (std::int64_t{1} << j); ++k1)
        for (std::int64_t k2 = 0; k2 < (std::int64_t{1} << j); ++k2)
          family.push_back(CellSet::from_rectangle(n, DyadicRectangle(j, k1, j, k2)));
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const CellCounter counter(family[i]);
    double mass = 0.0;
    for (const auto& [r, w] : a)
      if (counter.covers(r)) mass += w;
    if (mass > family[i].measure() + 1e-12)
      throw PackingViolation("packing premise fails on test set #" + std::to_string(i) + ": mass " +
                                 std::to_string(mass) + " > measure " + std::to_string(family[i].measure()),
                             family[i], mass - family[i].measure());
  }
  if (u.empty()) return 0.0;

  const int side = u.side();
  std::vector<double> field(static_cast<std::size_t>(side) * side, 0.0);
  const CellCounter inside(u);
  for (const auto& [r, w] : a) {
    if (!inside.covers(r)) continue;
    const auto r1 = cell_range(r.first(), n), r2 = cell_range(r.second(), n);
    const double h = w / r.area();
    for (int c2 = r2.lo; c2 < r2.hi; ++c2)
      for (int c1 = r1.lo; c1 < r1.hi; ++c1) field[static_cast<std::size_t>(c2) * side + c1] += h;
  }
  double acc = 0.0;
  for (double v : field) acc += std::pow(v, p);
  const double cell = std::ldexp(1.0, -2 * n);
  return std::pow(acc * cell, 1.0 / p) / std::pow(u.measure(), 1.0 / p);
}

PackingReport carleson_packing_check(const WaveletCoefficients& c, double norm, int greedy_budget) {
  if (!(norm > 0.0)) fail(ErrorCode::invalid_argument, "packing norm must be positive");
  const int n = c.resolution();
  const auto ws = nonzero(c);
  std::vector<CellSet> family;
  for (const auto& r : enumerate_dyadic_rectangles(n)) family.push_back(CellSet::from_rectangle(n, r));
  if (!ws.empty()) product_bmo_greedy(c, greedy_budget, &family);

  PackingReport report;
  report.worst_ratio = -1.0;
  for (const auto& u : family) {
    const double r = energy_with(ws, u) / (norm * norm * u.measure());
    if (r > report.worst_ratio) {
      report.worst_ratio = r;
      report.worst_set = u;
    }
  }
  report.passed = report.worst_ratio <= 1.0 + 1e-12;
  return report;
}

}  // namespace bicomm

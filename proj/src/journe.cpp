#include "bicomm/journe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bicomm/error.hpp"

namespace bicomm {
namespace {

void check_unit_interval(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) fail(ErrorCode::invalid_argument, std::string(name) + " must lie in (0, 1)");
}

// Rasterized centered dilate of one side. Even widths are centered on a grid
// line and grow by whole cells at lambda = 2m / w; the single-cell width is
// centered inside a cell and grows at lambda = 2m + 1.
struct SideDilation {
  int lo, hi;

  int width() const { return hi - lo; }

  CellRange at(double lambda) const {
    const int w = width();
    if (w % 2 == 0) {
      const int c = lo + w / 2;
      const int k = static_cast<int>(std::ceil(lambda * w / 2.0));
      return {c - k, c + k};
    }
    const int k = static_cast<int>(std::ceil((lambda - 1.0) / 2.0));
    return {lo - std::max(k, 0), hi + std::max(k, 0)};
  }

  void candidates(int side, std::vector<double>& out) const {
    const int w = width();
    if (w % 2 == 0) {
      for (int m = 1; m <= side + w; ++m) out.push_back(2.0 * m / w);
    } else {
      for (int m = 0; m <= side; ++m) out.push_back(2.0 * m + 1.0);
    }
  }
};

}  // namespace

RectCollection maximal_rectangles(const CellSet& u) {
  const int n = u.resolution();
  const CellCounter counter(u);
  RectCollection out(n);
  for (const auto& r : enumerate_dyadic_rectangles(n)) {
    if (!counter.covers(r)) continue;
    const bool grow1 = r.first().scale() > 0 && counter.covers(DyadicRectangle(r.first().parent(), r.second()));
    const bool grow2 = r.second().scale() > 0 && counter.covers(DyadicRectangle(r.first(), r.second().parent()));
    if (!grow1 && !grow2) out.insert(r);
  }
  return out;
}

CellSet composed_level_set(const CellSet& u, Axis inner, Axis outer, double threshold) {
  const CellSet level = maximal_1d(u, inner).above(threshold);
  return maximal_1d(level, outer).above(threshold);
}

CellSet enlargement(const CellSet& u, double delta) {
  check_unit_interval(delta, "delta");
  return composed_level_set(u, Axis::second, Axis::first, delta) | composed_level_set(u, Axis::first, Axis::second, delta);
}

double dilation_depth(const DyadicRectangle& r, const CellSet& target, DilationMode mode) {
  const int n = target.resolution();
  if (r.first().scale() > n || r.second().scale() > n)
    fail(ErrorCode::dimension_mismatch, "rectangle finer than the cell resolution");
  const int side = target.side();
  const CellRange c1 = cell_range(r.first(), n), c2 = cell_range(r.second(), n);
  const SideDilation d1{c1.lo, c1.hi}, d2{c2.lo, c2.hi};
  const bool both = mode == DilationMode::both_axes;

  std::vector<double> lambdas;
  d1.candidates(side, lambdas);
  if (both) d2.candidates(side, lambdas);
  std::sort(lambdas.begin(), lambdas.end());
  lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

  const CellCounter counter(target);
  double best = 0.0;
  for (double lambda : lambdas) {
    const CellRange a = d1.at(lambda);
    const CellRange b = both ? d2.at(lambda) : c2;
    if (!counter.covers(a.lo, a.hi, b.lo, b.hi)) break;
    best = lambda;
  }
  return best;
}

EmbeddednessReport embeddedness(const DyadicRectangle& r, const CellSet& v, double delta, const CellSet* u) {
  EmbeddednessReport rep;
  rep.rect = r;
  rep.delta = delta;
  rep.mu = dilation_depth(r, v, DilationMode::both_axes);
  if (u) {
    rep.nu = dilation_depth(r, strong_maximal(*u).above(0.5), DilationMode::first_axis_only);
    rep.has_nu = true;
  }
  return rep;
}

JourneSum journe_sum(const CellSet& u, double delta, double epsilon) {
  check_unit_interval(delta, "delta");
  check_unit_interval(epsilon, "epsilon");
  JourneSum out;
  if (u.empty()) return out;
  const CellSet v = enlargement(u, delta);
  for (const auto& [r, attrs] : maximal_rectangles(u)) {
    (void)attrs;
    auto rep = embeddedness(r, v, delta);
    out.sum += std::pow(rep.mu, -epsilon) * r.area();
    out.table.push_back(rep);
  }
  out.ratio = out.sum / u.measure();
  return out;
}

RectCollection bad_class(const RectCollection& s, Axis j, double gamma) {
  const int n = s.resolution();
  const auto rects = s.rectangles();
  RectCollection out(n);
  for (const auto& r : rects) {
    const CellRange a1 = cell_range(r.first(), n), a2 = cell_range(r.second(), n);
    const int w1 = a1.hi - a1.lo, w2 = a2.hi - a2.lo;
    std::vector<char> covered(static_cast<std::size_t>(w1) * w2, 0);
    for (const auto& q : rects) {
      if (q == r || q.side(j).scale() >= r.side(j).scale()) continue;
      const CellRange b1 = cell_range(q.first(), n), b2 = cell_range(q.second(), n);
      const int lo1 = std::max(a1.lo, b1.lo), hi1 = std::min(a1.hi, b1.hi);
      const int lo2 = std::max(a2.lo, b2.lo), hi2 = std::min(a2.hi, b2.hi);
      for (int x = lo1; x < hi1; ++x)
        for (int y = lo2; y < hi2; ++y) covered[static_cast<std::size_t>(x - a1.lo) * w2 + (y - a2.lo)] = 1;
    }
    const auto count = std::count(covered.begin(), covered.end(), 1);
    if (static_cast<double>(count) > gamma * static_cast<double>(covered.size())) out.insert(r, s.attributes(r));
  }
  return out;
}

int thinning_modulus(double mu, double gamma) {
  if (!(mu >= 1.0)) fail(ErrorCode::invalid_argument, "thinning needs mu >= 1");
  check_unit_interval(gamma, "gamma");
  return static_cast<int>(std::ceil(std::log2(32.0 * mu / (1.0 - gamma))));
}

std::vector<RectCollection> thin_collection(const RectCollection& s, double mu, double gamma) {
  const int d = thinning_modulus(mu, gamma);
  std::vector<RectCollection> out(static_cast<std::size_t>(d) * d, RectCollection(s.resolution()));
  for (const auto& [r, attrs] : s)
    out[static_cast<std::size_t>(r.first().scale() % d) * d + r.second().scale() % d].insert(r, attrs);
  return out;
}

const char* to_string(PairTag t) {
  switch (t) {
    case PairTag::lt: return "<";
    case PairTag::lt1: return "<1";
    case PairTag::lt2: return "<2";
    case PairTag::sim: return "~";
  }
  return "~";
}

std::optional<PairTag> classify_pair(const DyadicRectangle& rp, const DyadicRectangle& r) {
  // |R'_j| <= 4|R_j| reads j(R'_j) >= j(R_j) - 2; 8|R'_j| <= |R_j| reads j(R'_j) >= j(R_j) + 3.
  const int d1 = rp.first().scale() - r.first().scale();
  const int d2 = rp.second().scale() - r.second().scale();
  if (d1 < -2 || d2 < -2) return std::nullopt;
  const bool s1 = d1 >= 3, s2 = d2 >= 3;
  if (s1 && s2) return PairTag::lt;
  if (s1) return PairTag::lt1;
  if (s2) return PairTag::lt2;
  return PairTag::sim;
}

PairPartition partition_pairs(const RectCollection& w, const RectCollection& u) {
  PairPartition out;
  for (const auto& [rp, a] : w)
    for (const auto& [r, b] : u) {
      const auto tag = classify_pair(rp, r);
      if (!tag) continue;
      auto& list = *tag == PairTag::lt ? out.lt : *tag == PairTag::lt1 ? out.lt1 : *tag == PairTag::lt2 ? out.lt2 : out.sim;
      list.emplace_back(rp, r);
    }
  return out;
}

int stratum_of(double mu) {
  if (mu <= 1.0) return 0;
  int k = 1;
  while (std::ldexp(1.0, k) < mu) ++k;
  return k;
}

std::map<int, RectCollection> stratify(const RectCollection& ucol, const CellSet& v) {
  std::map<int, RectCollection> out;
  for (const auto& [r, attrs] : ucol) {
    RectAttributes a = attrs;
    if (!a.mu) a.mu = dilation_depth(r, v, DilationMode::both_axes);
    a.stratum = stratum_of(*a.mu);
    out.try_emplace(*a.stratum, ucol.resolution()).first->second.insert(r, a);
  }
  return out;
}

std::vector<double> maximal_truncation(const WaveletCoefficients& c, const RectCollection& a, std::size_t n) {
  const int res = c.resolution();
  const std::size_t total = n * n;
  std::vector<double> field(total, 0.0);
  // Partial sums over scale pairs, accumulated as a 2D prefix over (j1, j2).
  std::vector<std::vector<Complex>> prefix((res + 1) * (res + 1));
  for (int j1 = 0; j1 <= res; ++j1)
    for (int j2 = 0; j2 <= res; ++j2) {
      const auto part = c.restricted([&](const DyadicRectangle& r) {
        return r.first().scale() == j1 && r.second().scale() == j2 && a.contains(r);
      });
      std::vector<Complex> acc = part.size() ? synthesize(part, n).to_vector() : std::vector<Complex>(total);
      if (j1 > 0)
        for (std::size_t i = 0; i < total; ++i) acc[i] += prefix[(j1 - 1) * (res + 1) + j2][i];
      if (j2 > 0)
        for (std::size_t i = 0; i < total; ++i) acc[i] += prefix[j1 * (res + 1) + j2 - 1][i];
      if (j1 > 0 && j2 > 0)
        for (std::size_t i = 0; i < total; ++i) acc[i] -= prefix[(j1 - 1) * (res + 1) + j2 - 1][i];
      for (std::size_t i = 0; i < total; ++i) field[i] = std::max(field[i], std::abs(acc[i]));
      prefix[j1 * (res + 1) + j2] = std::move(acc);
    }
  return field;
}

RowOfSquares row_of_squares(int k, double density, int resolution) {
  if (k < 2) fail(ErrorCode::invalid_argument, "row of squares needs K >= 2");
  if (!(density > 0.5 && density < 1.0)) fail(ErrorCode::invalid_argument, "density must lie in (1/2, 1)");
  if (resolution < 1 || resolution > 12) fail(ErrorCode::invalid_argument, "resolution out of range");
  const int m = 1 << resolution;
  for (int e = resolution - 1; e >= 0; --e) {
    const int s = 1 << e;
    const int g = std::max(1, static_cast<int>(std::floor(s * (1.0 - density) / density)));
    if (g >= s) continue;
    const int period = s + g;
    const int length = k * s + (k - 1) * g;
    if (length > m) continue;
    const int ideal_mid = (m - length) / 2 + (k / 2) * period;
    for (int mid : {ideal_mid - ideal_mid % s, ideal_mid - ideal_mid % s + s}) {
      const int start = mid - (k / 2) * period;
      if (start < 0 || start + length > m) continue;
      RowOfSquares out;
      out.set = CellSet(resolution);
      const int lo2 = m / 2;
      for (int q = 0; q < k; ++q) {
        const int lo1 = start + q * period;
        out.set = out.set | CellSet::box(resolution, lo1, lo1 + s, lo2, lo2 + s);
      }
      const int j = resolution - e;
      out.middle = DyadicRectangle(j, mid / s, j, lo2 / s);
      out.side_cells = s;
      out.gap_cells = g;
      return out;
    }
  }
  fail(ErrorCode::domain_violation, "no row of " + std::to_string(k) + " squares fits at resolution " +
                                        std::to_string(resolution));
}

ThinningAudit thinning_audit(const CellSet& u, double delta, std::optional<double> gamma_override) {
  check_unit_interval(delta, "delta");
  const double gamma = gamma_override.value_or(std::cbrt(delta));
  check_unit_interval(gamma, "gamma");
  ThinningAudit audit;
  const auto strata = stratify(maximal_rectangles(u), enlargement(u, delta));
  for (const auto& [k, members] : strata) {
    const double mu = k == 0 ? 1.0 : std::ldexp(1.0, k - 1);
    for (const auto& sub : thin_collection(members, mu, gamma)) {
      if (sub.empty()) continue;
      ++audit.subclasses;
      if (!bad_class(bad_class(sub, Axis::first, gamma), Axis::first, gamma).empty()) {
        ++audit.counterexamples;
        audit.failing.push_back(sub);
      }
    }
  }
  return audit;
}

}  // namespace bicomm

#include <cmath>

#include "bicomm/bmo.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bicomm;

namespace {

WaveletCoefficients random_coefficients(Rng& rng, int n, double fill = 1.0) {
  WaveletCoefficients c(n);
  for (const auto& r : enumerate_dyadic_rectangles(n))
    if (rng.uniform() < fill) c.set(r, {rng.normal(), rng.normal()});
  return c;
}

// Oracle: direct sum over all S using rectangle containment.
double brute_rect(const WaveletCoefficients& c) {
  double best = 0.0;
  for (const auto& s : enumerate_dyadic_rectangles(c.resolution())) {
    double e = 0.0;
    for (const auto& [r, v] : c.values())
      if (s.contains(r)) e += std::norm(v);
    best = std::max(best, e / s.area());
  }
  return std::sqrt(best);
}

// Oracle: every cell union, containment checked cell by cell.
double brute_open(const WaveletCoefficients& c) {
  const int n = c.resolution(), side = 1 << n, cells = side * side;
  double best = 0.0;
  for (long u = 1; u < (1L << cells); ++u) {
    double e = 0.0;
    for (const auto& [r, v] : c.values()) {
      bool in = true;
      const int lo1 = static_cast<int>(r.first().position()) << (n - r.first().scale());
      const int lo2 = static_cast<int>(r.second().position()) << (n - r.second().scale());
      for (int a = lo1; a < lo1 + (side >> r.first().scale()) && in; ++a)
        for (int b = lo2; b < lo2 + (side >> r.second().scale()) && in; ++b) in = (u >> (b * side + a)) & 1;
      if (in) e += std::norm(v);
    }
    best = std::max(best, e * cells / __builtin_popcountl(u));
  }
  return std::sqrt(best);
}

}  // namespace

TEST_CASE("rect_bmo examples") {
  WaveletCoefficients c(3);
  CHECK(rect_bmo(c).value == 0.0);
  const DyadicRectangle r(1, 1, 3, 2);
  c.set(r, {0.3, 0.4});
  const auto e = rect_bmo(c);
  CHECK(e.value == doctest::Approx(0.5 / std::sqrt(r.area())).epsilon(1e-14));
  CHECK(e.witness == CellSet::from_rectangle(3, r));
  CHECK(e.exact);

  WaveletCoefficients sib(3);
  sib.set(DyadicRectangle(2, 0, 1, 1), 1.0);
  sib.set(DyadicRectangle(2, 1, 1, 1), 1.0);
  CHECK(rect_bmo(sib).value == doctest::Approx(brute_rect(sib)).epsilon(1e-14));

  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const auto d = random_coefficients(rng, 3, 0.3);
    const auto est = rect_bmo(d);
    CHECK(est.value == doctest::Approx(brute_rect(d)).epsilon(1e-13));
    CHECK(certificate_holds(d, est));
  }
}

TEST_CASE("exhaustive scan matches an independent brute force") {
  Rng rng(32);
  for (int n : {0, 1, 2}) {
    for (int t = 0; t < 3; ++t) {
      const auto c = random_coefficients(rng, n, 0.5);
      const auto e = product_bmo_exhaustive(c);
      CHECK(e.exact);
      CHECK(e.value == doctest::Approx(brute_open(c)).epsilon(1e-13));
      CHECK(certificate_holds(c, e));
    }
  }
}

TEST_CASE("product lower bound dominates the rectangular value") {
  Rng rng(33);
  for (int n : {2, 3, 4}) {
    for (int t = 0; t < 5; ++t) {
      const auto c = random_coefficients(rng, n, 0.4);
      const auto r = rect_bmo(c);
      const auto p = product_bmo_lower(c);
      const auto g = product_bmo_greedy(c, 32);
      CHECK(p.value >= r.value - 1e-12);
      CHECK(g.value >= r.value - 1e-12);
      CHECK(p.exact == (n <= kExhaustiveResolution));
      CHECK(certificate_holds(c, p));
      CHECK(certificate_holds(c, g));
    }
  }
}

TEST_CASE("greedy calibration against the exhaustive scan at n = 2") {
  Rng rng(34);
  double worst = 1.0;
  for (int t = 0; t < 50; ++t) {
    const auto c = random_coefficients(rng, 2, 0.5);
    const double g = product_bmo_greedy(c, 64).value, x = product_bmo_exhaustive(c).value;
    CHECK(g <= x + 1e-12);
    worst = std::min(worst, g / x);
  }
  CHECK(worst >= 0.75);
}

TEST_CASE("two separated rectangles with equal density") {
  // The union's ratio is the mediant of the two equal ratios, so it equals
  // each of them; the search must still return the union as its witness.
  WaveletCoefficients c(3);
  const DyadicRectangle a(2, 0, 2, 0), b(2, 3, 2, 3);
  c.set(a, 0.5);
  c.set(b, 0.5);
  const auto g = product_bmo_greedy(c, 8);
  CHECK(g.witness == (CellSet::from_rectangle(3, a) | CellSet::from_rectangle(3, b)));
  CHECK(g.value == doctest::Approx(rect_bmo(c).value).epsilon(1e-12));
}

TEST_CASE("homogeneity, monotonicity and dilation covariance") {
  Rng rng(35);
  for (int t = 0; t < 10; ++t) {
    const auto c = random_coefficients(rng, 2, 0.5);
    const double s = 2.5;
    CHECK(rect_bmo(c.scaled(s)).value == doctest::Approx(s * rect_bmo(c).value).epsilon(1e-13));
    CHECK(product_bmo_lower(c.scaled(s)).value == doctest::Approx(s * product_bmo_lower(c).value).epsilon(1e-13));
    CHECK(product_bmo_greedy(c.scaled(s), 16).value ==
          doctest::Approx(s * product_bmo_greedy(c, 16).value).epsilon(1e-13));

    auto more = c;
    const auto rects = enumerate_dyadic_rectangles(2);
    more.set(rects[rng.uniform_int(0, static_cast<std::int64_t>(rects.size()) - 1)], {rng.normal(), 1.0});
    // Adding a coefficient (or enlarging one in modulus).
    auto grown = c;
    for (const auto& [r, v] : more.values())
      if (std::abs(v) > std::abs(c.get(r))) grown.set(r, v);
    CHECK(rect_bmo(grown).value >= rect_bmo(c).value - 1e-15);
    CHECK(product_bmo_exhaustive(grown).value >= product_bmo_exhaustive(c).value - 1e-15);

    // f(2x) has coefficients c_R / 2 on the half-size rectangles.
    const auto small = random_coefficients(rng, 1, 0.8);
    WaveletCoefficients dilated(2);
    for (const auto& [r, v] : small.values())
      dilated.set(DyadicRectangle(r.first().scale() + 1, r.first().position(), r.second().scale() + 1,
                                  r.second().position()),
                  0.5 * v);
    CHECK(rect_bmo(dilated).value == doctest::Approx(rect_bmo(small).value).epsilon(1e-13));
    CHECK(product_bmo_exhaustive(dilated).value == doctest::Approx(product_bmo_exhaustive(small).value).epsilon(1e-13));
  }
}

TEST_CASE("John-Nirenberg ratio") {
  const CellSet u = CellSet::box(3, 0, 5, 1, 7);
  RectWeights a;
  a[DyadicRectangle(2, 0, 2, 1)] = 1.0 / 16;
  a[DyadicRectangle(3, 3, 3, 4)] = 1.0 / 64;
  CHECK(john_nirenberg_ratio(a, u, 1.0) <= 1.0 + 1e-15);

  const DyadicRectangle r(1, 0, 2, 1);
  RectWeights single{{r, r.area()}};
  const auto ur = CellSet::from_rectangle(3, r);
  CHECK(john_nirenberg_ratio(single, ur, 2.0) == doctest::Approx(1.0).epsilon(1e-14));

  RectWeights heavy{{r, 2.0 * r.area()}};
  try {
    john_nirenberg_ratio(heavy, ur, 2.0);
    CHECK(false);
  } catch (const PackingViolation& v) {
    CHECK(v.offending() == ur);
    CHECK(v.excess() == doctest::Approx(r.area()));
  }

  Rng rng(36);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto v = testing::random_open_set(rng, 4);
    // Random weights inside v, rescaled so that the premise holds on every
    // default test set.
    RectWeights w;
    const CellCounter inside(v);
    for (const auto& s : enumerate_dyadic_rectangles(4))
      if (inside.covers(s) && rng.uniform() < 0.3) w[s] = rng.uniform() * s.area();
    double excess = 1.0;
    std::vector<CellSet> family{v};
    for (int j = 0; j <= 4; ++j)
      for (int k1 = 0; k1 < (1 << j); ++k1)
        for (int k2 = 0; k2 < (1 << j); ++k2) family.push_back(CellSet::from_rectangle(4, DyadicRectangle(j, k1, j, k2)));
    for (const auto& f : family) {
      const CellCounter cc(f);
      double m = 0.0;
      for (const auto& [s, x] : w)
        if (cc.covers(s)) m += x;
      if (m > 0) excess = std::max(excess, m / f.measure());
    }
    for (auto& [s, x] : w) x /= excess * (1 + 1e-12);
    for (double p : {2.0, 4.0}) {
      const double ratio = john_nirenberg_ratio(w, v, p);
      CHECK(std::isfinite(ratio));
      worst = std::max(worst, ratio);
    }
  }
  CHECK(worst <= 50.0);
}

TEST_CASE("Carleson packing check") {
  const std::size_t n = 64;
  const DyadicRectangle r(1, 1, 2, 3);
  const auto c = analyze(product_wavelet(r, n), 3);
  const auto rep = carleson_packing_check(c, 1.0 / std::sqrt(r.area()));
  CHECK(rep.passed);
  CHECK(rep.worst_ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.worst_set == CellSet::from_rectangle(3, r));
  const auto scaled = carleson_packing_check(c.scaled(3.0), 1.0 / std::sqrt(r.area()));
  CHECK(scaled.worst_ratio == doctest::Approx(9.0 * rep.worst_ratio).epsilon(1e-12));
  CHECK_FALSE(scaled.passed);

  Rng rng(37);
  for (int t = 0; t < 20; ++t) {
    const auto d = random_coefficients(rng, 2, 0.5);
    const double greedy = carleson_packing_check(d, 1.0).worst_ratio;
    const double exact = std::pow(product_bmo_exhaustive(d).value, 2);
    CHECK(greedy <= exact * (1 + 1e-12));
    CHECK(greedy >= 0.75 * exact);
  }
}

#include <cmath>
#include <numbers>

#include "bicomm/transforms.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bicomm;

namespace {

GridSignal1D cosine(std::size_t n, bool sine = false) {
  std::vector<Complex> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
    v[i] = sine ? std::sin(x) : std::cos(x);
  }
  return GridSignal1D(std::move(v));
}

}  // namespace

TEST_CASE("spectrum matches a naive DFT and satisfies Parseval") {
  Rng rng(2);
  const auto f = testing::random_signal_2d(rng, 8);
  const auto fast = spectrum(f);
  const auto slow = testing::naive_dft_2d(f);
  for (std::size_t i = 0; i < fast.size(); ++i) CHECK(std::abs(fast[i] - slow[i]) < 1e-13);
  for (int t = 0; t < 10; ++t) {
    const auto g = testing::random_signal_2d(rng, 32);
    double e = 0.0;
    for (auto v : spectrum(g)) e += std::norm(v);
    CHECK(std::abs(e - std::pow(norm2(g), 2)) <= 1e-12 * e);
  }
  const auto back = from_spectrum(8, fast);
  CHECK(testing::max_abs_diff(back, f) < 1e-13);
}

TEST_CASE("hilbert_1d examples and properties") {
  CHECK(testing::max_abs_diff(hilbert_1d(cosine(32)), cosine(32, true)) < 1e-14);
  const auto constant = GridSignal1D(std::vector<Complex>(16, Complex(3.0, 0.0)));
  CHECK(norm2(hilbert_1d(constant)) < 1e-15);

  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto f = project_admissible(testing::random_signal_1d(rng, 64));
    const auto g = testing::random_signal_1d(rng, 64);
    CHECK(testing::max_abs_diff(hilbert_1d(hilbert_1d(f)), (-1.0) * f) < 1e-12);
    CHECK(std::abs(inner(hilbert_1d(f), g) + inner(f, hilbert_1d(g))) < 1e-12);
    // Real input stays real.
    std::vector<Complex> re(64);
    for (std::size_t i = 0; i < 64; ++i) re[i] = f[i].real();
    for (auto v : hilbert_1d(GridSignal1D(re)).samples()) CHECK(std::abs(v.imag()) < 1e-13);
  }
}

TEST_CASE("half-line projections") {
  const std::size_t n = 16;
  std::vector<Complex> e(n), em(n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(i) / n);
    em[i] = std::conj(e[i]);
  }
  const GridSignal1D ep(e), en(em);
  CHECK(testing::max_abs_diff(project_halfline(ep, Sign::plus), ep) < 1e-14);
  CHECK(norm2(project_halfline(en, Sign::plus)) < 1e-14);

  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto f = project_admissible(testing::random_signal_1d(rng, 32));
    const auto g = testing::random_signal_1d(rng, 32);
    const auto pp = project_halfline(f, Sign::plus), pm = project_halfline(f, Sign::minus);
    CHECK(testing::max_abs_diff(pp + pm, f) < 1e-12);
    CHECK(testing::max_abs_diff(pp, 0.5 * (f + sign_transform(f))) < 1e-12);
    CHECK(testing::max_abs_diff(project_halfline(pp, Sign::plus), pp) < 1e-12);
    CHECK(std::abs(inner(pp, g) - inner(f, project_halfline(g, Sign::plus))) < 1e-12);
    CHECK(std::abs(inner(pp, project_halfline(g, Sign::minus))) < 1e-12);
  }
}

TEST_CASE("quadrant projections and the Hilbert decomposition") {
  const auto w = testing::plane_wave(16, 1, -1);
  CHECK(norm2(project_quadrant(w, Sign::plus, Sign::plus)) < 1e-14);
  CHECK(testing::max_abs_diff(project_quadrant(w, Sign::plus, Sign::minus), w) < 1e-14);

  Rng rng(9);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto f = project_admissible(testing::random_signal_2d(rng, 16));
    const auto ppp = project_quadrant(f, Sign::plus, Sign::plus);
    const auto ppm = project_quadrant(f, Sign::plus, Sign::minus);
    const auto pmp = project_quadrant(f, Sign::minus, Sign::plus);
    const auto pmm = project_quadrant(f, Sign::minus, Sign::minus);
    worst = std::max(worst, testing::max_abs_diff(sign_transform(f, Axis::first), ppp + ppm - pmp - pmm));
    worst = std::max(worst, testing::max_abs_diff(sign_transform(f, Axis::second), ppp + pmp - ppm - pmm));
    // Classical H_j = -i S_j.
    worst = std::max(worst, testing::max_abs_diff(hilbert_2d_axis(f, Axis::first),
                                                  Complex(0, -1) * sign_transform(f, Axis::first)));
    const auto g = testing::random_signal_2d(rng, 16);
    CHECK(std::abs(inner(ppm, g) - inner(f, project_quadrant(g, Sign::plus, Sign::minus))) < 1e-12);
    CHECK(std::abs(inner(ppp, project_quadrant(g, Sign::minus, Sign::plus))) < 1e-12);
    CHECK(testing::max_abs_diff(project_quadrant(ppp, Sign::plus, Sign::plus), ppp) < 1e-12);
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("operators commute with cyclic translation") {
  Rng rng(10);
  const auto f = testing::random_signal_2d(rng, 16);
  const auto a = hilbert_2d_axis(translate(f, 3, 5), Axis::second);
  const auto b = translate(hilbert_2d_axis(f, Axis::second), 3, 5);
  CHECK(testing::max_abs_diff(a, b) < 1e-12);
  const auto c = project_quadrant(translate(f, -2, 7), Sign::minus, Sign::plus);
  const auto d = translate(project_quadrant(f, Sign::minus, Sign::plus), -2, 7);
  CHECK(testing::max_abs_diff(c, d) < 1e-12);
}

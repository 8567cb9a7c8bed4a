#include <cmath>

#include "bicomm/commutator.hpp"
#include "bicomm/dense_oracle.hpp"
#include "bicomm/error.hpp"
#include "bicomm/transforms.hpp"
#include "bicomm/wavelets.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace bicomm;

namespace {

GridSignal1D bandlimited_1d(Rng& rng, std::size_t n) {
  std::vector<Complex> spec(n);
  for (std::size_t m = 0; m < n; ++m) {
    const long k = (m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n));
    if (std::abs(k) >= 1 && std::abs(k) <= static_cast<long>(n / 4)) spec[m] = {rng.normal(), rng.normal()};
  }
  auto f = from_spectrum(std::move(spec));
  return (1.0 / norm2(f)) * f;
}

double relative(const GridSignal2D& a, const GridSignal2D& b) { return norm2(a - b) / std::max(norm2(b), 1e-300); }

}  // namespace

TEST_CASE("constant symbol commutes") {
  const auto b = GridSignal2D(16, std::vector<Complex>(256, Complex(2.0, -1.0)));
  Rng rng(1);
  CHECK(norm2(commutator_apply(b, testing::random_signal_2d(rng, 16))) < 1e-13);
  CHECK(operator_norm(b).norm < 1e-12);
  CHECK(operator_norm(GridSignal2D::zeros(16)).norm == 0.0);
}

TEST_CASE("fast path matches the dense matrix") {
  Rng rng(2);
  const auto b = testing::random_signal_2d(rng, 8);
  const auto f = project_admissible(testing::random_signal_2d(rng, 8));
  const auto fast = spectrum(commutator_apply(b, f));
  const auto m = dense::commutator_matrix(b);
  const auto idx = dense::admissible_indices(8);
  const auto fs = spectrum(f);
  Eigen::VectorXcd x(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) x(i) = fs[idx[i]];
  const Eigen::VectorXcd y = m * x;
  double err = 0.0;
  for (std::size_t i = 0; i < idx.size(); ++i) err = std::max(err, std::abs(y(i) - fast[idx[i]]));
  CHECK(err < 1e-12);
}

TEST_CASE("four-projection form") {
  Rng rng(3);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const auto b = testing::random_signal_2d(rng, 16);
    const auto f = project_admissible(testing::random_signal_2d(rng, 16));
    worst = std::max(worst, relative(commutator_apply(b, f), four_projection_form(b, f)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("adjoint identity and crude bound") {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto b = testing::random_signal_2d(rng, 16);
    const CommutatorOperator op(b);
    const auto f = testing::random_signal_2d(rng, 16), g = testing::random_signal_2d(rng, 16);
    CHECK(std::abs(inner(op.apply(f), g) - inner(f, op.apply_adjoint(g))) < 1e-10);
    CHECK(norm2(op.apply(f)) <= 4.0 * sup_norm(b) * norm2(f) * (1 + 1e-12));
  }
}

TEST_CASE("coarse symbol against a fine input gives zero") {
  const std::size_t n = 256;
  const DyadicRectangle coarse(1, 1, 1, 0), fine(4, 9, 4, 3);
  CHECK(norm2(commutator_apply(product_wavelet(coarse, n), product_wavelet(fine, n))) <= 1e-8);
  // Control: the reverse roles do not vanish.
  CHECK(norm2(commutator_apply(product_wavelet(fine, n), product_wavelet(coarse, n))) > 1e-3);
}

TEST_CASE("basic identities") {
  Rng rng(5);
  double one = 0.0, two = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto b1 = bandlimited_1d(rng, 64);
    const auto lhs = 0.5 * commutator_1d(b1, conj(b1));
    const auto rhs = project_halfline(abs_squared(project_halfline(b1, Sign::minus)), Sign::minus) -
                     project_halfline(abs_squared(project_halfline(b1, Sign::plus)), Sign::plus);
    one = std::max(one, norm2(lhs - rhs) / norm2(rhs));

    const auto b = testing::bandlimited_2d(rng, 32);
    auto q = [&](Sign a, Sign c) { return project_quadrant(abs_squared(project_quadrant(b, a, c)), a, c); };
    const auto rhs2 = q(Sign::plus, Sign::plus) - q(Sign::plus, Sign::minus) - q(Sign::minus, Sign::plus) +
                      q(Sign::minus, Sign::minus);
    two = std::max(two, relative(0.25 * bracket(b, b), rhs2));
  }
  CHECK(one <= 1e-10);
  CHECK(two <= 1e-9);
  CHECK(norm2(bracket(GridSignal2D::zeros(16), testing::random_signal_2d(rng, 16))) == 0.0);
}

TEST_CASE("real-valued squares keep a quarter of their norm") {
  Rng rng(6);
  for (int t = 0; t < 10; ++t) {
    const auto b = testing::bandlimited_2d(rng, 32);
    for (Sign a : {Sign::plus, Sign::minus})
      for (Sign c : {Sign::plus, Sign::minus}) {
        const auto sq = abs_squared(project_quadrant(b, a, c));
        const auto adm = project_admissible(sq);
        CHECK(norm2(project_quadrant(sq, a, c)) >= 0.25 * norm2(adm) - 1e-12);
      }
  }
}

TEST_CASE("operator norm matches the dense SVD") {
  Rng rng(7);
  for (int t = 0; t < 5; ++t) {
    const auto b = testing::random_signal_2d(rng, 16);
    const auto pi = operator_norm(b, 1e-13, 20000);
    const double svd = dense::largest_singular_value(dense::commutator_matrix(b));
    CHECK(std::abs(pi.norm - svd) <= 1e-6);
    CHECK(pi.norm <= svd + 1e-9);
    CHECK(!pi.trace.empty());
    CHECK(pi.trace.front().iter == 0);
    const auto shifted = operator_norm(translate(b, 3, 11), 1e-13, 20000);
    CHECK(std::abs(shifted.norm - pi.norm) < 1e-8);
  }
}

TEST_CASE("power iteration reports non-convergence") {
  Rng rng(8);
  const auto b = testing::random_signal_2d(rng, 16);
  try {
    operator_norm(b, 1e-15, 3);
    CHECK(false);
  } catch (const NotConverged& e) {
    CHECK(e.estimate() > 0.0);
    CHECK(e.gap() > 0.0);
  }
  CHECK_THROWS_AS(operator_norm(b, 0.0), Error);
}

TEST_CASE("little Hankel operator") {
  const std::size_t n = 16;
  const auto out = hankel_apply(testing::plane_wave(n, 3, 3), testing::plane_wave(n, 1, 1));
  CHECK(testing::max_abs_diff(out, testing::plane_wave(n, -2, -2)) < 1e-13);
  CHECK(norm2(hankel_apply(testing::plane_wave(n, 1, 1), testing::plane_wave(n, 1, 1))) < 1e-13);
  CHECK_THROWS_AS(hankel_apply(testing::plane_wave(n, -1, 2), testing::plane_wave(n, 1, 1)), Error);

  Rng rng(9);
  for (int t = 0; t < 5; ++t) {
    const auto b = testing::bandlimited_2d(rng, n, true);
    const double gamma = dense::largest_singular_value(dense::hankel_matrix(b));
    const double comm = dense::largest_singular_value(dense::commutator_matrix(conj(b)));
    CHECK(std::abs(gamma - 0.25 * comm) <= 1e-6);
    CHECK(std::abs(hankel_norm(b, 1e-13, 20000).norm - gamma) <= 1e-6);
  }
}

TEST_CASE("dual norm estimate") {
  const std::size_t n = 16;
  CHECK(dual_norm_estimate(GridSignal2D::zeros(n)).value == 0.0);
  CHECK(dual_norm_estimate(testing::plane_wave(n, 2, 2)).value >= 1 - 1e-6);
  Rng rng(10);
  const auto b = testing::bandlimited_2d(rng, n, true);
  const auto base = dual_norm_estimate(b, 4, 40, 99);
  const auto scaled = dual_norm_estimate(3.0 * b, 4, 40, 99);
  CHECK(scaled.value == doctest::Approx(3.0 * base.value).epsilon(1e-12));
  for (const auto& h : base.history)
    for (std::size_t i = 1; i < h.size(); ++i) CHECK(h[i] >= h[i - 1] - 1e-12);
  // The supremum is the Hankel norm; the estimate never exceeds it.
  const double gamma = dense::largest_singular_value(dense::hankel_matrix(b));
  CHECK(base.value <= gamma + 1e-9);
  CHECK(base.value >= 0.9 * gamma);
}

TEST_CASE("project_collection") {
  const std::size_t n = 64;
  Rng rng(11);
  const auto f = testing::random_signal_2d(rng, n);
  const auto c = analyze(f, 2);
  const RectCollection all(2, enumerate_dyadic_rectangles(2));
  CHECK(testing::max_abs_diff(project_collection(c, all, n), synthesize(c, n)) < 1e-13);
  CHECK(norm2(project_collection(c, RectCollection(2), n)) == 0.0);
  RectCollection some(2);
  double e = 0.0;
  for (const auto& r : enumerate_dyadic_rectangles(2))
    if (rng.uniform() < 0.4) {
      some.insert(r);
      e += std::norm(c.get(r));
    }
  CHECK(std::abs(std::pow(norm2(project_collection(c, some, n)), 2) - e) <= 1e-10);
}

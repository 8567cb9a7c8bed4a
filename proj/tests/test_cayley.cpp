#include <cmath>
#include <numbers>

#include "bicomm/cayley.hpp"
#include "bicomm/error.hpp"
#include "doctest.h"

using namespace bicomm;

namespace {
const Complex kI(0.0, 1.0);
Complex kernel(Complex z, Complex w) { return 1.0 / ((z + kI) * (w + kI)); }
}  // namespace

TEST_CASE("u_2 is an isometry on the reference function") {
  const auto line = sample_on_line(kernel, 512);
  const auto disk = cayley_transport(line, 2, CayleyDirection::to_disk);
  // ||f||_2^2 = (int dx / (1 + x^2))^2 = pi^2.
  CHECK(std::abs(boundary_lp_norm(line, 2) - std::numbers::pi) < 1e-6);
  CHECK(std::abs(boundary_lp_norm(disk, 2) - boundary_lp_norm(line, 2)) < 1e-6);
  // u_2 f is the constant pi on the torus.
  for (auto v : disk.values) CHECK(std::abs(std::abs(v) - std::numbers::pi) < 1e-9);
}

TEST_CASE("round trip and modulus formula") {
  auto f = [](Complex z, Complex w) { return std::exp(kI * z) / ((z + 2.0 * kI) * (w + kI) * (w + kI)); };
  for (int p : {1, 2, 4}) {
    const auto line = sample_on_line(f, 64);
    const auto disk = cayley_transport(line, p, CayleyDirection::to_disk);
    const auto back = cayley_transport(disk, p, CayleyDirection::to_halfplane);
    for (std::size_t i = 0; i < line.values.size(); ++i)
      CHECK(std::abs(back.values[i] - line.values[i]) <= 1e-10 * (1.0 + std::abs(line.values[i])));
    for (std::size_t a = 0; a < 64; a += 7)
      for (std::size_t b = 0; b < 64; b += 5) {
        const Complex z = disk.nodes1[a], w = disk.nodes2[b];
        const double expected = std::pow(std::numbers::pi, 2.0 / p) * std::pow(std::abs(2.0 * kI / (1.0 - z)), 2.0 / p) *
                                std::pow(std::abs(2.0 * kI / (1.0 - w)), 2.0 / p) * std::abs(line.values[a * 64 + b]);
        CHECK(std::abs(std::abs(disk.values[a * 64 + b]) - expected) <= 1e-10 * expected);
      }
    CHECK(std::abs(boundary_lp_norm(disk, p) - boundary_lp_norm(line, p)) <= 1e-10 * boundary_lp_norm(line, p));
  }
}

TEST_CASE("disk-side isometry of the inverse map") {
  auto g = [](Complex z, Complex w) { return 1.0 + 0.5 * z + 0.25 * w * w; };
  const auto disk = sample_on_circle(g, 256);
  const auto line = cayley_transport(disk, 2, CayleyDirection::to_halfplane);
  CHECK(std::abs(boundary_lp_norm(line, 2) - boundary_lp_norm(disk, 2)) < 1e-10);
}

TEST_CASE("truncated trapezoid rule leaves a visible tail error") {
  const auto line = sample_on_line(kernel, 512, LineRule::truncated_trapezoid, 64.0);
  const double err = std::abs(boundary_lp_norm(line, 2) - std::numbers::pi);
  CHECK(err > 1e-3);
  CHECK(err < 5e-2);
}

TEST_CASE("cayley_transport rejects bad input") {
  const auto line = sample_on_line(kernel, 8);
  CHECK_THROWS_AS(cayley_transport(line, 3, CayleyDirection::to_disk), Error);
  CHECK_THROWS_AS(cayley_transport(line, 2, CayleyDirection::to_halfplane), Error);
  BoundarySamples bad = sample_on_circle(kernel, 8);
  bad.nodes1[0] = 1.0;
  CHECK_THROWS_AS(cayley_transport(bad, 2, CayleyDirection::to_halfplane), Error);
  BoundarySamples inf = line;
  inf.nodes1[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(cayley_transport(inf, 2, CayleyDirection::to_disk), Error);
}

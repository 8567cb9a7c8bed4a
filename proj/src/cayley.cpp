#include "bicomm/cayley.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bicomm/error.hpp"

namespace bicomm {
namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI(0.0, 1.0);

BoundarySamples tabulate(const BoundaryFunction& f, BoundaryDomain domain, std::vector<Complex> nodes,
                         std::vector<double> weights) {
  BoundarySamples s;
  s.domain = domain;
  s.nodes1 = nodes;
  s.nodes2 = std::move(nodes);
  s.weights1 = weights;
  s.weights2 = std::move(weights);
  s.values.reserve(s.nodes1.size() * s.nodes2.size());
  for (const auto& a : s.nodes1)
    for (const auto& b : s.nodes2) s.values.push_back(f(a, b));
  return s;
}

}  // namespace

BoundarySamples sample_on_line(const BoundaryFunction& f, int m, LineRule rule, double truncation) {
  if (m < 2) fail(ErrorCode::invalid_argument, "line grid needs at least two nodes");
  std::vector<Complex> nodes(m);
  std::vector<double> weights(m);
  if (rule == LineRule::tangent_midpoint) {
    for (int k = 0; k < m; ++k) {
      const double t = -kPi / 2 + kPi * (k + 0.5) / m;
      const double c = std::cos(t);
      nodes[k] = std::tan(t);
      weights[k] = (kPi / m) / (c * c);
    }
  } else {
    if (!(truncation > 0.0)) fail(ErrorCode::invalid_argument, "truncation length must be positive");
    const double h = 2.0 * truncation / (m - 1);
    for (int k = 0; k < m; ++k) {
      nodes[k] = -truncation + h * k;
      weights[k] = (k == 0 || k == m - 1) ? h / 2 : h;
    }
  }
  return tabulate(f, BoundaryDomain::halfplane, std::move(nodes), std::move(weights));
}

BoundarySamples sample_on_circle(const BoundaryFunction& f, int m) {
  if (m < 2) fail(ErrorCode::invalid_argument, "circle grid needs at least two nodes");
  std::vector<Complex> nodes(m);
  std::vector<double> weights(m, 1.0 / m);
  for (int k = 0; k < m; ++k) nodes[k] = std::polar(1.0, 2.0 * kPi * (k + 0.5) / m);
  return tabulate(f, BoundaryDomain::disk, std::move(nodes), std::move(weights));
}

double boundary_lp_norm(const BoundarySamples& s, double p) {
  if (!(p >= 1.0)) fail(ErrorCode::invalid_argument, "L^p norm needs p >= 1");
  const std::size_t m2 = s.nodes2.size();
  double acc = 0.0;
  for (std::size_t a = 0; a < s.nodes1.size(); ++a)
    for (std::size_t b = 0; b < m2; ++b)
      acc += s.weights1[a] * s.weights2[b] * std::pow(std::abs(s.values[a * m2 + b]), p);
  return std::pow(acc, 1.0 / p);
}

Complex cayley_alpha(Complex lambda) { return kI * (1.0 + lambda) / (1.0 - lambda); }
Complex cayley_beta(Complex lambda) { return (lambda - kI) / (lambda + kI); }

BoundarySamples cayley_transport(const BoundarySamples& s, int p, CayleyDirection direction) {
  if (p != 1 && p != 2 && p != 4) fail(ErrorCode::invalid_argument, "Cayley transport supports p in {1, 2, 4}");
  const double e = 2.0 / p;
  const bool to_disk = direction == CayleyDirection::to_disk;
  if (to_disk != (s.domain == BoundaryDomain::halfplane))
    fail(ErrorCode::invalid_argument, "samples are on the wrong boundary for this direction");

  BoundarySamples out;
  out.domain = to_disk ? BoundaryDomain::disk : BoundaryDomain::halfplane;

  // Per-axis image node, weight and factor of the transport formula.
  auto map_axis = [&](const std::vector<Complex>& nodes, const std::vector<double>& weights,
                      std::vector<Complex>& out_nodes, std::vector<double>& out_weights) {
    std::vector<Complex> factor(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const Complex src = nodes[k];
      if (!std::isfinite(src.real()) || !std::isfinite(src.imag()))
        fail(ErrorCode::domain_violation, "non-finite boundary node");
      if (to_disk) {
        const Complex z = cayley_beta(src);
        if (std::abs(1.0 - z) < 1e-14) fail(ErrorCode::domain_violation, "node maps to the singular point z = 1");
        out_nodes.push_back(z);
        out_weights.push_back(weights[k] * std::norm(1.0 - z) / (4.0 * kPi));
        factor[k] = std::pow(2.0 * kI / (1.0 - z), e);
      } else {
        if (std::abs(1.0 - src) < 1e-12) fail(ErrorCode::domain_violation, "node at the singular point z = 1");
        const Complex x = cayley_alpha(src);
        if (std::abs(x + kI) < 1e-14) fail(ErrorCode::domain_violation, "node maps to the singular point -i");
        out_nodes.push_back(Complex(x.real(), 0.0));
        out_weights.push_back(weights[k] * 4.0 * kPi / std::norm(1.0 - src));
        factor[k] = std::pow(1.0 / (Complex(x.real(), 0.0) + kI), e);
      }
    }
    return factor;
  };

  const auto f1 = map_axis(s.nodes1, s.weights1, out.nodes1, out.weights1);
  const auto f2 = map_axis(s.nodes2, s.weights2, out.nodes2, out.weights2);
  const double constant = to_disk ? std::pow(kPi, e) : std::pow(kPi, -e);
  const std::size_t m2 = s.nodes2.size();
  out.values.resize(s.values.size());
  for (std::size_t a = 0; a < s.nodes1.size(); ++a)
    for (std::size_t b = 0; b < m2; ++b) out.values[a * m2 + b] = constant * f1[a] * f2[b] * s.values[a * m2 + b];
  return out;
}

}  // namespace bicomm

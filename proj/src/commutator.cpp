#include "bicomm/commutator.hpp"

#include <cmath>
#include <array>
#include <functional>

#include "bicomm/error.hpp"
#include "bicomm/fft.hpp"
#include "bicomm/random.hpp"
#include "bicomm/transforms.hpp"

namespace bicomm {
namespace {

using Spectrum = std::vector<Complex>;
using LinearMap = std::function<Spectrum(const Spectrum&)>;

double axis_sign(std::size_t m, std::size_t n) {
  if (m == 0 || m == n / 2) return 0.0;
  return m < n / 2 ? 1.0 : -1.0;
}

void require_same_size(const GridSignal2D& a, const GridSignal2D& b) {
  if (a.size() != b.size()) fail(ErrorCode::dimension_mismatch, "signals on different grids");
}

double spectral_norm(const Spectrum& x) {
  double s = 0.0;
  for (const auto& v : x) s += std::norm(v);
  return std::sqrt(s);
}

// Power iteration on A*A over spectra supported where `support` is set.
// `bound` is an a-priori bound on ||A||; quotients at roundoff level relative
// to it count as an exact zero.
NormResult power_iteration(const LinearMap& forward, const LinearMap& adjoint, const std::vector<char>& support,
                           double tol, int max_iter, std::uint64_t seed, double bound) {
  if (!(tol > 0.0)) fail(ErrorCode::invalid_argument, "tolerance must be positive");
  if (max_iter < 1) fail(ErrorCode::invalid_argument, "max_iter must be positive");
  Rng rng(seed);
  Spectrum v(support.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double re = rng.normal(), im = rng.normal();
    if (support[i]) v[i] = {re, im};
  }
  const double v0 = spectral_norm(v);
  if (v0 == 0.0) return {};
  for (auto& x : v) x /= v0;

  NormResult result;
  double previous = 0.0;
  double gap = INFINITY;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Spectrum w = forward(v);
    const double rayleigh = std::pow(spectral_norm(w), 2);
    if (rayleigh <= std::pow(1e-13 * bound, 2)) {
      result.trace.push_back({iter, rayleigh, 0.0});
      result.norm = std::sqrt(rayleigh);
      return result;
    }
    // The first quotient is compared against zero, giving gap 1.
    gap = iter == 0 ? 1.0 : std::abs(rayleigh - previous) / rayleigh;
    result.trace.push_back({iter, rayleigh, gap});
    result.norm = std::sqrt(rayleigh);
    if (iter > 0 && gap < tol) return result;
    previous = rayleigh;
    Spectrum u = adjoint(w);
    const double nu = spectral_norm(u);
    if (nu == 0.0) return result;
    for (auto& x : u) x /= nu;
    v = std::move(u);
  }
  throw NotConverged("power iteration did not converge", result.norm, gap);
}

}  // namespace

CommutatorOperator::CommutatorOperator(GridSignal2D symbol)
    : n_(symbol.size()), b_(std::move(symbol)), b_conj_(conj(b_)) {}

Spectrum CommutatorOperator::apply_spectral(const Spectrum& x, bool adjoint) const {
  const std::size_t n = n_, total = n * n;
  if (x.size() != total) fail(ErrorCode::dimension_mismatch, "spectrum size does not match the operator");
  const std::size_t dims[2] = {n, n};
  const auto mult = (adjoint ? b_conj_ : b_).samples();
  std::vector<double> s(n);
  for (std::size_t m = 0; m < n; ++m) s[m] = axis_sign(m, n);

  // Channels carry x, S1 x, S2 x, S1 S2 x; each is multiplied by b in space.
  std::array<Spectrum, 4> ch;
  for (auto& c : ch) c.assign(total, Complex{});
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const std::size_t i = m1 * n + m2;
      const double a = s[m1], b = s[m2];
      if (a == 0.0 || b == 0.0) continue;
      ch[0][i] = x[i];
      ch[1][i] = a * x[i];
      ch[2][i] = b * x[i];
      ch[3][i] = a * b * x[i];
    }
  for (auto& c : ch) {
    fft::inverse(c, dims);
    for (std::size_t i = 0; i < total; ++i) c[i] *= mult[i];
    fft::forward(c, dims);
  }
  // [[M,S1],S2] = M S1 S2 - S1 M S2 - S2 M S1 + S1 S2 M.
  Spectrum y(total);
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const std::size_t i = m1 * n + m2;
      const double a = s[m1], b = s[m2];
      if (a == 0.0 || b == 0.0) continue;
      y[i] = ch[3][i] - a * ch[2][i] - b * ch[1][i] + a * b * ch[0][i];
    }
  return y;
}

GridSignal2D CommutatorOperator::apply(const GridSignal2D& f) const {
  require_same_size(b_, f);
  return from_spectrum(n_, apply_spectral(spectrum(f), false));
}

GridSignal2D CommutatorOperator::apply_adjoint(const GridSignal2D& g) const {
  require_same_size(b_, g);
  return from_spectrum(n_, apply_spectral(spectrum(g), true));
}

GridSignal2D commutator_apply(const GridSignal2D& b, const GridSignal2D& f) {
  require_same_size(b, f);
  return CommutatorOperator(b).apply(f);
}

GridSignal2D four_projection_form(const GridSignal2D& b, const GridSignal2D& f) {
  require_same_size(b, f);
  auto term = [&](Sign a1, Sign a2, Sign c1, Sign c2) {
    return project_quadrant(multiply(b, project_quadrant(f, c1, c2)), a1, a2);
  };
  const auto sum = term(Sign::plus, Sign::plus, Sign::minus, Sign::minus) -
                   term(Sign::plus, Sign::minus, Sign::minus, Sign::plus) -
                   term(Sign::minus, Sign::plus, Sign::plus, Sign::minus) +
                   term(Sign::minus, Sign::minus, Sign::plus, Sign::plus);
  return 4.0 * sum;
}

GridSignal1D commutator_1d(const GridSignal1D& b, const GridSignal1D& f) {
  if (b.size() != f.size()) fail(ErrorCode::dimension_mismatch, "signals on different grids");
  const auto pf = project_admissible(f);
  return project_admissible(multiply(b, sign_transform(pf)) - sign_transform(multiply(b, pf)));
}

GridSignal2D bracket(const GridSignal2D& f, const GridSignal2D& g) { return commutator_apply(f, conj(g)); }

NormResult operator_norm(const GridSignal2D& b, double tol, int max_iter, std::uint64_t seed) {
  const std::size_t n = b.size();
  const CommutatorOperator op(b);
  std::vector<char> support(n * n, 0);
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) support[m1 * n + m2] = axis_sign(m1, n) != 0.0 && axis_sign(m2, n) != 0.0;
  return power_iteration([&](const Spectrum& x) { return op.apply_spectral(x, false); },
                         [&](const Spectrum& x) { return op.apply_spectral(x, true); }, support, tol, max_iter, seed,
                         4.0 * sup_norm(b));
}

bool has_holomorphic_spectrum(const GridSignal2D& b, double tol) {
  const std::size_t n = b.size();
  const auto spec = spectrum(b);
  double off = 0.0, total = 0.0;
  for (std::size_t m1 = 0; m1 < n; ++m1)
    for (std::size_t m2 = 0; m2 < n; ++m2) {
      const double e = std::norm(spec[m1 * n + m2]);
      total += e;
      if (m1 >= n / 2 || m2 >= n / 2) off += e;
    }
  return off <= tol * tol * total;
}

GridSignal2D hankel_apply(const GridSignal2D& b, const GridSignal2D& f) {
  require_same_size(b, f);
  if (!has_holomorphic_spectrum(b)) fail(ErrorCode::domain_violation, "Hankel symbol has spectrum off the (+,+) quadrant");
  return project_quadrant(multiply(conj(b), f), Sign::minus, Sign::minus);
}

NormResult hankel_norm(const GridSignal2D& b, double tol, int max_iter, std::uint64_t seed) {
  if (!has_holomorphic_spectrum(b)) fail(ErrorCode::domain_violation, "Hankel symbol has spectrum off the (+,+) quadrant");
  const std::size_t n = b.size(), total = n * n;
  const std::size_t dims[2] = {n, n};
  const auto bs = b.samples();
  auto quadrant = [n](std::size_t i, double sign) {
    return axis_sign(i / n, n) == sign && axis_sign(i % n, n) == sign;
  };
  auto map = [&](const Spectrum& x, bool adjoint) {
    // Gamma: ++ -> --, multiply by conj(b). Gamma*: -- -> ++, multiply by b.
    Spectrum y(total);
    for (std::size_t i = 0; i < total; ++i)
      if (quadrant(i, adjoint ? -1.0 : 1.0)) y[i] = x[i];
    fft::inverse(y, dims);
    for (std::size_t i = 0; i < total; ++i) y[i] *= adjoint ? bs[i] : std::conj(bs[i]);
    fft::forward(y, dims);
    for (std::size_t i = 0; i < total; ++i)
      if (!quadrant(i, adjoint ? 1.0 : -1.0)) y[i] = 0.0;
    return y;
  };
  std::vector<char> support(total);
  for (std::size_t i = 0; i < total; ++i) support[i] = quadrant(i, 1.0);
  return power_iteration([&](const Spectrum& x) { return map(x, false); },
                         [&](const Spectrum& x) { return map(x, true); }, support, tol, max_iter, seed, sup_norm(b));
}

DualNormResult dual_norm_estimate(const GridSignal2D& b, int restarts, int iters, std::uint64_t seed) {
  if (restarts < 1 || iters < 1) fail(ErrorCode::invalid_argument, "restarts and iters must be positive");
  const std::size_t n = b.size();
  DualNormResult out;
  auto normalized = [](const GridSignal2D& f, double& norm) {
    norm = norm2(f);
    return norm > 0.0 ? (1.0 / norm) * f : f;
  };
  for (int r = 0; r < restarts; ++r) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(r)));
    std::vector<Complex> start(n * n);
    for (auto& v : start) v = {rng.normal(), rng.normal()};
    double norm = 0.0;
    GridSignal2D g = normalized(project_quadrant(GridSignal2D(n, std::move(start)), Sign::plus, Sign::plus), norm);
    GridSignal2D f = g;
    std::vector<double> history;
    for (int it = 0; it < iters && norm > 0.0; ++it) {
      // For fixed g, <f g, b> = <f, conj(g) b> is maximized by f along P++(conj(g) b).
      f = normalized(project_quadrant(multiply(conj(g), b), Sign::plus, Sign::plus), norm);
      if (norm == 0.0) break;
      history.push_back(std::abs(inner(multiply(f, g), b)));
      g = normalized(project_quadrant(multiply(conj(f), b), Sign::plus, Sign::plus), norm);
      if (norm == 0.0) break;
      history.push_back(std::abs(inner(multiply(f, g), b)));
    }
    for (double v : history) out.value = std::max(out.value, v);
    out.history.push_back(std::move(history));
  }
  return out;
}

GridSignal2D project_collection(const WaveletCoefficients& c, const RectCollection& a, std::size_t n) {
  return synthesize(c.restricted([&](const DyadicRectangle& r) { return a.contains(r); }), n);
}

}  // namespace bicomm

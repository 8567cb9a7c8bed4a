#include "bicomm/dense_oracle.hpp"

#include <cmath>
#include <numbers>

#include "bicomm/error.hpp"

namespace bicomm::dense {
namespace {

void check_size(std::size_t n) {
  if (n > 32) fail(ErrorCode::invalid_argument, "dense oracle is limited to N <= 32");
}

long freq(std::size_t m, std::size_t n) {
  return m < n / 2 ? static_cast<long>(m) : static_cast<long>(m) - static_cast<long>(n);
}

double sgn(std::size_t m, std::size_t n) {
  const long k = freq(m, n);
  if (k == 0 || k == -static_cast<long>(n / 2)) return 0.0;
  return k > 0 ? 1.0 : -1.0;
}

std::size_t wrap(long k, std::size_t n) {
  const long nn = static_cast<long>(n);
  return static_cast<std::size_t>(((k % nn) + nn) % nn);
}

}  // namespace

std::vector<Complex> direct_spectrum(const GridSignal2D& f) {
  const std::size_t n = f.size();
  Eigen::MatrixXcd dft(n, n), samples(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t x = 0; x < n; ++x)
      dft(k, x) = std::polar(1.0 / static_cast<double>(n), -2.0 * std::numbers::pi * static_cast<double>(k * x % n) / n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) samples(a, b) = f.at(a, b);
  const Eigen::MatrixXcd spec = dft * samples * dft.transpose();
  std::vector<Complex> out(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) out[a * n + b] = spec(a, b);
  return out;
}

Eigen::MatrixXcd uncompressed_commutator_matrix(const GridSignal2D& b) {
  const std::size_t n = b.size();
  check_size(n);
  const std::size_t total = n * n;
  const auto bhat = direct_spectrum(b);
  Eigen::MatrixXcd m(total, total);
  for (std::size_t k1 = 0; k1 < n; ++k1)
    for (std::size_t k2 = 0; k2 < n; ++k2)
      for (std::size_t l1 = 0; l1 < n; ++l1)
        for (std::size_t l2 = 0; l2 < n; ++l2)
          m(k1 * n + k2, l1 * n + l2) =
              bhat[wrap(static_cast<long>(k1) - static_cast<long>(l1), n) * n +
                   wrap(static_cast<long>(k2) - static_cast<long>(l2), n)];
  Eigen::VectorXd s1(total), s2(total);
  for (std::size_t i = 0; i < total; ++i) {
    s1(i) = sgn(i / n, n);
    s2(i) = sgn(i % n, n);
  }
  const auto S1 = s1.asDiagonal();
  const auto S2 = s2.asDiagonal();
  const Eigen::MatrixXcd inner = m * S1 - S1 * m;
  return inner * S2 - S2 * inner;
}

std::vector<std::size_t> admissible_indices(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n * n; ++i)
    if (sgn(i / n, n) != 0.0 && sgn(i % n, n) != 0.0) out.push_back(i);
  return out;
}

Eigen::MatrixXcd commutator_matrix(const GridSignal2D& b) {
  const auto full = uncompressed_commutator_matrix(b);
  const auto idx = admissible_indices(b.size());
  Eigen::MatrixXcd out(idx.size(), idx.size());
  for (std::size_t r = 0; r < idx.size(); ++r)
    for (std::size_t c = 0; c < idx.size(); ++c) out(r, c) = full(idx[r], idx[c]);
  return out;
}

Eigen::MatrixXcd hankel_matrix(const GridSignal2D& b) {
  const std::size_t n = b.size();
  check_size(n);
  const auto bhat = direct_spectrum(b);
  const long h = static_cast<long>(n / 2);
  // (conj(b) f)^(k) = sum_l conj(b^(l - k)) f^(l), k in (-,-), l in (+,+).
  std::vector<std::pair<long, long>> plus, minus;
  for (long a = 1; a < h; ++a)
    for (long c = 1; c < h; ++c) {
      plus.emplace_back(a, c);
      minus.emplace_back(-a, -c);
    }
  Eigen::MatrixXcd m(minus.size(), plus.size());
  for (std::size_t r = 0; r < minus.size(); ++r)
    for (std::size_t c = 0; c < plus.size(); ++c)
      m(r, c) = std::conj(bhat[wrap(plus[c].first - minus[r].first, n) * n + wrap(plus[c].second - minus[r].second, n)]);
  return m;
}

double largest_singular_value(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

}  // namespace bicomm::dense

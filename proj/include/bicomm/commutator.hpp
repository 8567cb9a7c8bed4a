#pragma once

#include <cstdint>
#include <vector>

#include "bicomm/collection.hpp"
#include "bicomm/grid.hpp"
#include "bicomm/wavelets.hpp"

namespace bicomm {

/// T = Pi [[M_b, S_1], S_2] Pi, where S_j is the frequency-sign transform in
/// variable j and Pi removes every frequency line k_j in {0, Nyquist}. On
/// that admissible subspace S_j = P_+ - P_- exactly, which is the setting of
/// the half-line identities; the classical Hilbert transforms -i S_j give the
/// same operator up to sign.
///
/// One application costs nine N x N FFTs. The spectrum of b is computed once.
class CommutatorOperator {
 public:
  explicit CommutatorOperator(GridSignal2D symbol);

  std::size_t size() const noexcept { return n_; }
  const GridSignal2D& symbol() const noexcept { return b_; }

  GridSignal2D apply(const GridSignal2D& f) const;
  /// T* = Pi [[M_conj(b), S_1], S_2] Pi.
  GridSignal2D apply_adjoint(const GridSignal2D& g) const;

  /// Same maps on admissible spectra in FFT order (entries off the
  /// admissible set are ignored and returned as zero).
  std::vector<Complex> apply_spectral(const std::vector<Complex>& x, bool adjoint = false) const;

 private:
  std::size_t n_;
  GridSignal2D b_;
  GridSignal2D b_conj_;
};

GridSignal2D commutator_apply(const GridSignal2D& b, const GridSignal2D& f);

/// 4 (P++ M_b P-- - P+- M_b P-+ - P-+ M_b P+- + P-- M_b P++) f.
GridSignal2D four_projection_form(const GridSignal2D& b, const GridSignal2D& f);

/// One-variable analogue Pi [M_b, S] Pi f.
GridSignal1D commutator_1d(const GridSignal1D& b, const GridSignal1D& f);

/// {f, g} = T_f conj(g).
GridSignal2D bracket(const GridSignal2D& f, const GridSignal2D& g);

struct TraceRow {
  int iter;
  double rayleigh;
  double gap;
};

struct NormResult {
  double norm = 0.0;
  std::vector<TraceRow> trace;
};

inline constexpr std::uint64_t kDefaultStartSeed = 0x5EEDC0DEULL;

/// Largest singular value of T by power iteration on T*T from a seeded
/// Gaussian start. Stops when successive Rayleigh quotients ||T v||^2 differ
/// by less than tol relative to the current quotient. Throws NotConverged
/// (carrying the last estimate and gap) after max_iter iterations.
NormResult operator_norm(const GridSignal2D& b, double tol = 1e-10, int max_iter = 5000,
                         std::uint64_t seed = kDefaultStartSeed);

/// Whether the spectrum of b vanishes off the closed (+,+) quadrant
/// (k1 >= 0, k2 >= 0, Nyquist excluded), relative to ||b||.
bool has_holomorphic_spectrum(const GridSignal2D& b, double tol = 1e-12);

/// Little Hankel operator Gamma_b f = P-- (conj(b) f). Throws for
/// symbols without holomorphic spectrum.
GridSignal2D hankel_apply(const GridSignal2D& b, const GridSignal2D& f);

/// ||Gamma_b|| on inputs with spectrum in the open (+,+) quadrant, by power
/// iteration on Gamma* Gamma, where Gamma* g = P++(b g).
NormResult hankel_norm(const GridSignal2D& b, double tol = 1e-10, int max_iter = 5000,
                       std::uint64_t seed = kDefaultStartSeed);

struct DualNormResult {
  double value = 0.0;
  /// |<f g, b>| after every half-step, one row per restart.
  std::vector<std::vector<double>> history;
};

/// Lower bound for sup |<f g, b>| over unit f, g with spectrum in the open
/// (+,+) quadrant, by alternating maximization from seeded random starts.
DualNormResult dual_norm_estimate(const GridSignal2D& b, int restarts = 8, int iters = 50,
                                  std::uint64_t seed = kDefaultStartSeed);

/// b^A = sum_{R in A} c_R v_R.
GridSignal2D project_collection(const WaveletCoefficients& c, const RectCollection& a, std::size_t n);

}  // namespace bicomm

#pragma once

#include <functional>
#include <map>
#include <vector>

#include "bicomm/grid.hpp"

namespace bicomm {

/// theta(t) = 35t^4 - 84t^5 + 70t^6 - 20t^7 on [0,1], clamped outside.
double meyer_transition(double t);

/// Frequency profile W of the mother wavelet, supported on |u| in [2/3, 8/3].
///
/// `standard` returns exp(i pi u / 2) A(|u|) and `centered` returns the real
/// bump A(|u|), where A(u) = sin(pi/2 theta(3u/2 - 1)) on [2/3, 4/3] and
/// cos(pi/2 theta(3u/4 - 1)) on [4/3, 8/3]. The wavelet system below is built
/// on the centered profile: translating it by c(I) gives an orthonormal
/// system, whereas the phased profile combined with the same translation does
/// not.
class MeyerProfile {
 public:
  enum class Phase { standard, centered };

  explicit MeyerProfile(Phase phase = Phase::standard) : phase_(phase) {}

  Phase phase() const noexcept { return phase_; }
  Complex operator()(double u) const;
  static double magnitude(double u);

 private:
  Phase phase_;
};

/// Dilation constant s: the spectrum of w_I lies in |k| in s [2/3, 8/3] / |I|.
inline constexpr double kFrequencyScale = 0.5;

/// Largest admissible scale floor(log2(3N/16)); spectra of w_I with
/// j <= j_max(N) stay within |k| <= N/4.
int max_admissible_scale(std::size_t n);

/// Frequency samples of w_I in FFT order:
/// w^_I(k) = sqrt|I| A(2|I|k) exp(-2 pi i k c(I)).
std::vector<Complex> wavelet_spectrum(const DyadicInterval& interval, std::size_t n);

struct WaveletParts {
  GridSignal1D w;
  GridSignal1D plus;   // P_+ w_I
  GridSignal1D minus;  // P_- w_I
};

GridSignal1D wavelet_sample(const DyadicInterval& interval, std::size_t n);
WaveletParts wavelet_parts(const DyadicInterval& interval, std::size_t n);
GridSignal2D product_wavelet(const DyadicRectangle& r, std::size_t n);

/// chi_I(x) = (1 + dist(x, I) / |I|)^{-1} with the distance taken on the torus.
double localization_weight(const DyadicInterval& interval, double x);

/// Smallest C with |f(x_i)| <= C |I|^{-1/2} chi_I(x_i)^power at every grid
/// point, for f = w_I and f = w_I^+ (the larger of the two is returned).
double spatial_decay_constant(const DyadicInterval& interval, std::size_t n, int power = 5);

/// Sparse coefficients c_R over rectangles with both scales in [0, resolution].
class WaveletCoefficients {
 public:
  using Map = std::map<DyadicRectangle, Complex>;

  explicit WaveletCoefficients(int resolution) : n_(resolution) {}
  WaveletCoefficients(int resolution, Map values);

  int resolution() const noexcept { return n_; }
  const Map& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  Complex get(const DyadicRectangle& r) const;
  void set(const DyadicRectangle& r, Complex value);

  double energy() const;
  WaveletCoefficients restricted(const std::function<bool(const DyadicRectangle&)>& keep) const;
  WaveletCoefficients scaled(Complex t) const;

 private:
  int n_;
  Map values_;
};

/// sum over R of c_R conj(d_R).
Complex inner(const WaveletCoefficients& c, const WaveletCoefficients& d);

/// c_R = <f, v_R> for every R with both scales in [0, n]. Requires
/// n <= j_max(N).
WaveletCoefficients analyze(const GridSignal2D& f, int n);
/// sum_R c_R v_R; the exact adjoint of analyze.
GridSignal2D synthesize(const WaveletCoefficients& c, std::size_t n);

std::map<DyadicInterval, Complex> analyze_1d(const GridSignal1D& f, int n);
GridSignal1D synthesize_1d(const std::map<DyadicInterval, Complex>& c, std::size_t n);

/// S(x) = [sum_R |c_R|^2 |R|^{-1} 1_R(x)]^{1/2} at grid points (i1/N, i2/N),
/// row-major like GridSignal2D.
std::vector<double> square_function(const WaveletCoefficients& c, std::size_t n);
std::vector<double> square_function_1d(const std::map<DyadicInterval, Complex>& c, std::size_t n);

/// (N^{-d} sum |v|^p)^{1/p}; rejects p < 1.
double lp_norm(std::span<const double> values, double p);
double lp_norm(const GridSignal1D& f, double p);
double lp_norm(const GridSignal2D& f, double p);

/// Which closed form of the one-variable wavelet commutator applies.
enum class KernelCase {
  zero,      // |I| >= 4|J|
  diagonal,  // I == J
  coarse,    // |J| >= 4|I|
  other,
};
const char* to_string(KernelCase c);
KernelCase classify_kernel(const DyadicInterval& i, const DyadicInterval& j);

struct CommutatorKernel {
  GridSignal1D kernel;
  KernelCase label;
};

/// w_{I,J} = [M_{w_I}, P_+] conj(w_J), with the zero and Nyquist frequencies
/// of the result removed.
CommutatorKernel commutator_kernel(const DyadicInterval& i, const DyadicInterval& j, std::size_t n);

}  // namespace bicomm

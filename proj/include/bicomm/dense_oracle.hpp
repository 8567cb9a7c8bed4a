#pragma once

#include <Eigen/Dense>

#include "bicomm/grid.hpp"

namespace bicomm::dense {

/// Reference implementations by explicit matrices, for N <= 32. The symbol
/// spectrum comes from a direct DFT sum and multiplication by b is the
/// convolution matrix b^(k - l); nothing here goes through the FFT path.

/// Spectrum of f by the direct double sum, library normalization.
std::vector<Complex> direct_spectrum(const GridSignal2D& f);

/// Matrix of Pi [[M_b, S_1], S_2] Pi in spectral coordinates restricted to
/// the admissible frequencies (rows and columns in FFT order, admissible
/// indices only).
Eigen::MatrixXcd commutator_matrix(const GridSignal2D& b);
/// Same operator without the admissible compression (full N^2 x N^2).
Eigen::MatrixXcd uncompressed_commutator_matrix(const GridSignal2D& b);

/// Matrix of Gamma_b from the open (+,+) quadrant into the open (-,-) quadrant.
Eigen::MatrixXcd hankel_matrix(const GridSignal2D& b);

/// Admissible FFT indices in the order used by commutator_matrix.
std::vector<std::size_t> admissible_indices(std::size_t n);

double largest_singular_value(const Eigen::MatrixXcd& m);

}  // namespace bicomm::dense

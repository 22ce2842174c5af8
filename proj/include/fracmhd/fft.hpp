#pragma once

#include <vector>

#include "fracmhd/field.hpp"
#include "fracmhd/grid.hpp"

namespace fracmhd {

// Forward transform of real physical samples (row-major, grid.size() values)
// into Fourier amplitudes with the convention f(x) = sum_k c_k exp(i k.x),
// i.e. c_k = n^-d sum_x f(x) exp(-i k.x).
SpectralField transform_forward(const Grid& grid, const std::vector<double>& physical_samples);

// Physical samples of a spectral field (real part of the inverse DFT).
std::vector<double> transform_inverse(const SpectralField& f);

// Physical samples of f re-expanded on a finer grid with `factor` times the
// points per axis; band-limited interpolation, used for dealiased products.
std::vector<double> transform_inverse_padded(const SpectralField& f, int factor);

// Truncate the spectrum of real samples on a padded grid (factor * n per
// axis) back to the coarse grid's resolvable modes.
SpectralField transform_forward_truncating(const Grid& coarse, int factor,
                                           const std::vector<double>& padded_samples);

// Largest |imag| over the inverse DFT of f; zero for Hermitian coefficients.
double imaginary_residual(const SpectralField& f);

}  // namespace fracmhd

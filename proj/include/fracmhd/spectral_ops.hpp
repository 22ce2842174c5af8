#pragma once

#include <vector>

#include "fracmhd/field.hpp"
#include "fracmhd/fft.hpp"
#include "fracmhd/grid.hpp"

namespace fracmhd {

// ---- field arithmetic -------------------------------------------------

SpectralField operator+(const SpectralField& a, const SpectralField& b);
SpectralField operator-(const SpectralField& a, const SpectralField& b);
SpectralField operator*(double s, const SpectralField& a);
SpectralField& operator+=(SpectralField& a, const SpectralField& b);
SpectralField& operator-=(SpectralField& a, const SpectralField& b);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

// ---- basic operators ---------------------------------------------------

// Fourier multiplier |k|^(2*alpha); the k=0 amplitude maps to 0 for alpha>0
// and to itself for alpha=0. Negative alpha is rejected.
SpectralField fractional_laplacian(const SpectralField& f, double alpha);

// d/dx_axis, multiplier i*k_axis.
SpectralField derivative(const SpectralField& f, int axis);

// Fourier-side projection (I - k k^T / |k|^2); k=0 unchanged. Output carries
// the solenoidal certificate.
VectorField leray_project(const VectorField& v);

// max_k |k . v(k)| and max_k |v(k)| over all components, for the certificate.
double divergence_residual(const VectorField& v);
double max_coeff_magnitude(const VectorField& v);
bool solenoidal_within(const VectorField& v, double rel_tol = 1e-12);

// Projects a field with real physical samples onto Hermitian-symmetric
// coefficients. Modes with a Nyquist frequency component are dropped: their
// conjugate partners are not representable on the grid.
void hermitian_symmetrize(SpectralField& f);
void hermitian_symmetrize(VectorField& v);

// ---- products and integrals ---------------------------------------------

// f*g evaluated on a padded grid (factor >= 2 makes quadratic products of
// band-limited fields alias-free) and truncated back; Nyquist slots dropped.
SpectralField dealiased_product(const SpectralField& f, const SpectralField& g, int pad = 2);

struct AdvectStatus {
    bool nonsolenoidal_warning = false;
};

// u.grad f with dealiased products. Non-solenoidal u is flagged in status
// (when given) and the result still returned.
SpectralField advect(const VectorField& u, const SpectralField& f, AdvectStatus* status = nullptr);
VectorField advect(const VectorField& u, const VectorField& f, AdvectStatus* status = nullptr);

// int f g dx over the torus via Parseval; bilinear, symmetric.
double inner_product(const SpectralField& f, const SpectralField& g);
double inner_product(const VectorField& f, const VectorField& g);

// L2 norms, exact via Parseval.
double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& f);

// int a b c dx with quadrature on a 2x padded grid; exact for band-limited
// factors since cubic frequencies stay below the padded Nyquist.
double triple_integral(const SpectralField& a, const SpectralField& b, const SpectralField& c);

// Physical samples on a factor-padded grid (band-limited interpolation).
inline std::vector<double> padded_samples(const SpectralField& f, int factor) {
    return transform_inverse_padded(f, factor);
}

}  // namespace fracmhd

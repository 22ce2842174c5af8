#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace fracmhd::kernels {

using Complex = std::complex<double>;

// Hot inner loops, each in an OpenMP flavor (the default used by the library)
// and a serial reference flavor kept for parity tests and benchmarking.
// Reductions are chunked with a fixed chunk size so the summation order, and
// hence the result, does not depend on the thread count.

void set_threads(int n);   // n <= 0 restores machine parallelism
int threads();

// out[i] = m[i] * in[i]
void apply_multiplier(std::span<const double> m, std::span<const Complex> in,
                      std::span<Complex> out);
void apply_multiplier_serial(std::span<const double> m, std::span<const Complex> in,
                             std::span<Complex> out);

// out[i] = a[i] * b[i] (physical-space product)
void pointwise_multiply(std::span<const double> a, std::span<const double> b,
                        std::span<double> out);
void pointwise_multiply_serial(std::span<const double> a, std::span<const double> b,
                               std::span<double> out);

// out[i] += a[i] * b[i]
void pointwise_multiply_add(std::span<const double> a, std::span<const double> b,
                            std::span<double> out);
void pointwise_multiply_add_serial(std::span<const double> a, std::span<const double> b,
                                   std::span<double> out);

// y[i] = alpha * x[i] + beta * y[i]
void axpby(Complex alpha, std::span<const Complex> x, Complex beta, std::span<Complex> y);
void axpby_serial(Complex alpha, std::span<const Complex> x, Complex beta, std::span<Complex> y);

// sum_i a[i] * conj(b[i]), deterministic chunked reduction
Complex dot(std::span<const Complex> a, std::span<const Complex> b);
Complex dot_serial(std::span<const Complex> a, std::span<const Complex> b);

// sum_i |a[i]|^2, deterministic chunked reduction
double sum_abs2(std::span<const Complex> a);
double sum_abs2_serial(std::span<const Complex> a);

// sum_i a[i], deterministic chunked reduction
double sum(std::span<const double> a);
double sum_serial(std::span<const double> a);

// sum_i |a[i]|^p
double sum_abs_pow(std::span<const double> a, double p);
double sum_abs_pow_serial(std::span<const double> a, double p);

// max_i |a[i]|
double max_abs(std::span<const double> a);
double max_abs_serial(std::span<const double> a);
double max_abs(std::span<const Complex> a);
double max_abs_serial(std::span<const Complex> a);

}  // namespace fracmhd::kernels

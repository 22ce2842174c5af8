#include "fracmhd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fracmhd::kernels {

namespace {
constexpr std::size_t kChunk = 4096;       // reduction chunk, fixed for determinism
constexpr std::size_t kParCutoff = 16384;  // below this, parallel setup costs more than it saves

int g_threads = 0;

int effective_threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}
}  // namespace

void set_threads(int n) {
    g_threads = n;
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#endif
}

int threads() { return effective_threads(); }

void apply_multiplier_serial(std::span<const double> m, std::span<const Complex> in,
                             std::span<Complex> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = m[i] * in[i];
}

void apply_multiplier(std::span<const double> m, std::span<const Complex> in,
                      std::span<Complex> out) {
    const std::ptrdiff_t n = std::ptrdiff_t(in.size());
#pragma omp parallel for schedule(static) if (in.size() >= kParCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[std::size_t(i)] = m[std::size_t(i)] * in[std::size_t(i)];
}

void pointwise_multiply_serial(std::span<const double> a, std::span<const double> b,
                               std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
}

void pointwise_multiply(std::span<const double> a, std::span<const double> b,
                        std::span<double> out) {
    const std::ptrdiff_t n = std::ptrdiff_t(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[std::size_t(i)] = a[std::size_t(i)] * b[std::size_t(i)];
}

void pointwise_multiply_add_serial(std::span<const double> a, std::span<const double> b,
                                   std::span<double> out) {
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i] * b[i];
}

void pointwise_multiply_add(std::span<const double> a, std::span<const double> b,
                            std::span<double> out) {
    const std::ptrdiff_t n = std::ptrdiff_t(a.size());
#pragma omp parallel for schedule(static) if (a.size() >= kParCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[std::size_t(i)] += a[std::size_t(i)] * b[std::size_t(i)];
}

void axpby_serial(Complex alpha, std::span<const Complex> x, Complex beta, std::span<Complex> y) {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = alpha * x[i] + beta * y[i];
}

void axpby(Complex alpha, std::span<const Complex> x, Complex beta, std::span<Complex> y) {
    const std::ptrdiff_t n = std::ptrdiff_t(x.size());
#pragma omp parallel for schedule(static) if (x.size() >= kParCutoff)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        y[std::size_t(i)] = alpha * x[std::size_t(i)] + beta * y[std::size_t(i)];
}

namespace {

// Chunked reduction: per-chunk partials computed (possibly in parallel),
// combined serially in index order. Result is thread-count independent.
template <class T, class ChunkOp>
T chunked_reduce(std::size_t size, T init, ChunkOp op, bool parallel) {
    const std::size_t nchunks = (size + kChunk - 1) / kChunk;
    if (nchunks <= 1) return op(std::size_t(0), size, init);
    std::vector<T> partial(nchunks, init);
    const std::ptrdiff_t nc = std::ptrdiff_t(nchunks);
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
        const std::size_t lo = std::size_t(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, size);
        partial[std::size_t(c)] = op(lo, hi, init);
    }
    T acc = init;
    for (const T& p : partial) acc += p;
    return acc;
}

}  // namespace

Complex dot_serial(std::span<const Complex> a, std::span<const Complex> b) {
    return chunked_reduce(
        a.size(), Complex(0.0, 0.0),
        [&](std::size_t lo, std::size_t hi, Complex acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += a[i] * std::conj(b[i]);
            return acc;
        },
        false);
}

Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
    return chunked_reduce(
        a.size(), Complex(0.0, 0.0),
        [&](std::size_t lo, std::size_t hi, Complex acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += a[i] * std::conj(b[i]);
            return acc;
        },
        a.size() >= kParCutoff);
}

double sum_abs2_serial(std::span<const Complex> a) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += std::norm(a[i]);
            return acc;
        },
        false);
}

double sum_abs2(std::span<const Complex> a) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += std::norm(a[i]);
            return acc;
        },
        a.size() >= kParCutoff);
}

double sum_serial(std::span<const double> a) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += a[i];
            return acc;
        },
        false);
}

double sum(std::span<const double> a) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += a[i];
            return acc;
        },
        a.size() >= kParCutoff);
}

double sum_abs_pow_serial(std::span<const double> a, double p) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += std::pow(std::fabs(a[i]), p);
            return acc;
        },
        false);
}

double sum_abs_pow(std::span<const double> a, double p) {
    return chunked_reduce(
        a.size(), 0.0,
        [&](std::size_t lo, std::size_t hi, double acc) {
            for (std::size_t i = lo; i < hi; ++i) acc += std::pow(std::fabs(a[i]), p);
            return acc;
        },
        a.size() >= kParCutoff);
}

namespace {
template <class T>
double max_abs_impl(std::span<const T> a, bool parallel) {
    const std::size_t nchunks = (a.size() + kChunk - 1) / kChunk;
    std::vector<double> partial(std::max<std::size_t>(nchunks, 1), 0.0);
    const std::ptrdiff_t nc = std::ptrdiff_t(nchunks);
#pragma omp parallel for schedule(static) if (parallel && nchunks > 1)
    for (std::ptrdiff_t c = 0; c < nc; ++c) {
        const std::size_t lo = std::size_t(c) * kChunk;
        const std::size_t hi = std::min(lo + kChunk, a.size());
        double m = 0.0;
        for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(a[i]));
        partial[std::size_t(c)] = m;
    }
    double m = 0.0;
    for (double p : partial) m = std::max(m, p);
    return m;
}
}  // namespace

double max_abs_serial(std::span<const double> a) { return max_abs_impl(a, false); }
double max_abs(std::span<const double> a) { return max_abs_impl(a, a.size() >= kParCutoff); }
double max_abs_serial(std::span<const Complex> a) { return max_abs_impl(a, false); }
double max_abs(std::span<const Complex> a) { return max_abs_impl(a, a.size() >= kParCutoff); }

}  // namespace fracmhd::kernels

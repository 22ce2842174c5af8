// Timing harness comparing the OpenMP kernels against their serial
// references, plus the field-level operations built on them.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracmhd/analysis.hpp"
#include "fracmhd/kernels.hpp"
#include "fracmhd/random.hpp"
#include "fracmhd/spectral_ops.hpp"

using namespace fracmhd;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm caches and plans
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() /
           double(reps);
}

void report(const std::string& name, double serial, double parallel) {
    std::printf("%-28s serial %10.3f us   parallel %10.3f us   speedup %5.2fx\n", name.c_str(),
                serial * 1e6, parallel * 1e6, serial / parallel);
}

}  // namespace

int main(int argc, char** argv) {
    int n = 128;
    int reps = 50;
    if (argc > 1) n = std::atoi(argv[1]);
    if (argc > 2) reps = std::atoi(argv[2]);

#ifdef _OPENMP
    std::printf("threads: %d, grid: %d^2, reps: %d\n", omp_get_max_threads(), n, reps);
#else
    std::printf("serial build, grid: %d^2, reps: %d\n", n, reps);
#endif

    Grid grid(2, n);
    Rng rng(12);
    SpectralField f = random_real_field(grid, rng);
    SpectralField g = random_real_field(grid, rng);
    VectorField u = random_solenoidal_field(grid, rng);
    DyadicPartition part = DyadicPartition::build(grid);

    const std::size_t m = grid.size();
    std::vector<double> mult(m);
    for (std::size_t i = 0; i < m; ++i) mult[i] = mode_table(grid).radius[i];
    std::vector<Complex> out(m);
    auto fs = transform_inverse(f);
    auto gs = transform_inverse(g);
    std::vector<double> prod(m);

    report("apply_multiplier",
           time_of([&] { kernels::apply_multiplier_serial(mult, f.coeffs(), out); }, reps),
           time_of([&] { kernels::apply_multiplier(mult, f.coeffs(), out); }, reps));
    report("pointwise_multiply",
           time_of([&] { kernels::pointwise_multiply_serial(fs, gs, prod); }, reps),
           time_of([&] { kernels::pointwise_multiply(fs, gs, prod); }, reps));
    report("dot", time_of([&] { (void)kernels::dot_serial(f.coeffs(), g.coeffs()); }, reps),
           time_of([&] { (void)kernels::dot(f.coeffs(), g.coeffs()); }, reps));
    report("sum_abs2", time_of([&] { (void)kernels::sum_abs2_serial(f.coeffs()); }, reps),
           time_of([&] { (void)kernels::sum_abs2(f.coeffs()); }, reps));
    report("max_abs",
           time_of([&] { (void)kernels::max_abs_serial(std::span<const double>(fs)); }, reps),
           time_of([&] { (void)kernels::max_abs(std::span<const double>(fs)); }, reps));

    // field-level operations: parallelism inside comes from the kernels and
    // the per-mode loops; the serial column pins threads to 1
    auto with_threads = [&](int t, const std::function<void()>& fn) {
        return [t, fn] {
            const int before = kernels::threads();
            kernels::set_threads(t);
            fn();
            kernels::set_threads(before);
        };
    };
    report("dealiased_product",
           time_of(with_threads(1, [&] { (void)dealiased_product(f, g); }), reps / 5 + 1),
           time_of([&] { (void)dealiased_product(f, g); }, reps / 5 + 1));
    report("advect",
           time_of(with_threads(1, [&] { (void)advect(u, f); }), reps / 5 + 1),
           time_of([&] { (void)advect(u, f); }, reps / 5 + 1));
    report("leray_project",
           time_of(with_threads(1, [&] { (void)leray_project(u); }), reps),
           time_of([&] { (void)leray_project(u); }, reps));
    report("block_l2_profile",
           time_of(with_threads(1, [&] { (void)block_l2_profile(part, f, Flavor::Inhomogeneous); }),
                   reps),
           time_of([&] { (void)block_l2_profile(part, f, Flavor::Inhomogeneous); }, reps));
    report("cancellation_check",
           time_of(with_threads(1, [&] { (void)cancellation_check(part, u, f, g, 2); }),
                   reps / 10 + 1),
           time_of([&] { (void)cancellation_check(part, u, f, g, 2); }, reps / 10 + 1));
    return 0;
}

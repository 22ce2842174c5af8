#include <doctest.h>

#include "fracmhd/kernels.hpp"
#include "fracmhd/random.hpp"
#include "test_util.hpp"

using namespace fracmhd;
using namespace testutil;

namespace {
std::vector<Complex> random_complex(std::size_t n, Rng& rng) {
    std::vector<Complex> v(n);
    for (auto& c : v) c = Complex(rng.normal(), rng.normal());
    return v;
}
std::vector<double> random_reals(std::size_t n, Rng& rng) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.normal();
    return v;
}
}  // namespace

TEST_CASE("parallel kernels match their serial references bitwise") {
    Rng rng(99);
    const std::size_t n = 100'000;  // above the parallel cutoff
    auto a = random_complex(n, rng);
    auto b = random_complex(n, rng);
    auto m = random_reals(n, rng);
    auto x = random_reals(n, rng);
    auto y = random_reals(n, rng);

    SUBCASE("apply_multiplier") {
        std::vector<Complex> s(n), p(n);
        kernels::apply_multiplier_serial(m, a, s);
        kernels::apply_multiplier(m, a, p);
        CHECK(s == p);
    }
    SUBCASE("pointwise_multiply and multiply_add") {
        std::vector<double> s(n), p(n);
        kernels::pointwise_multiply_serial(x, y, s);
        kernels::pointwise_multiply(x, y, p);
        CHECK(s == p);
        kernels::pointwise_multiply_add_serial(x, y, s);
        kernels::pointwise_multiply_add(x, y, p);
        CHECK(s == p);
    }
    SUBCASE("axpby") {
        auto s = b, p = b;
        kernels::axpby_serial(Complex(0.3, -0.2), a, Complex(1.1, 0.0), s);
        kernels::axpby(Complex(0.3, -0.2), a, Complex(1.1, 0.0), p);
        CHECK(s == p);
    }
    SUBCASE("reductions are chunk-deterministic") {
        CHECK(kernels::dot_serial(a, b) == kernels::dot(a, b));
        CHECK(kernels::sum_abs2_serial(a) == kernels::sum_abs2(a));
        CHECK(kernels::sum_serial(x) == kernels::sum(x));
        CHECK(kernels::sum_abs_pow_serial(x, 3.0) == kernels::sum_abs_pow(x, 3.0));
        CHECK(kernels::max_abs_serial(std::span<const double>(x)) ==
              kernels::max_abs(std::span<const double>(x)));
        CHECK(kernels::max_abs_serial(std::span<const Complex>(a)) ==
              kernels::max_abs(std::span<const Complex>(a)));
    }
    SUBCASE("thread count does not change reduction results") {
        const double base = kernels::sum(x);
        const int before = kernels::threads();
        kernels::set_threads(1);
        CHECK(kernels::sum(x) == base);
        kernels::set_threads(3);
        CHECK(kernels::sum(x) == base);
        kernels::set_threads(before);
    }
}

TEST_CASE("fft forward transform matches the naive DFT on a small grid") {
    Grid grid(2, 8);
    Rng rng(17);
    std::vector<double> samples(grid.size());
    for (auto& s : samples) s = rng.normal();
    SpectralField fast = transform_forward(grid, samples);

    // reference: direct O(n^4) discrete Fourier sum
    const int n = grid.n();
    double worst = 0.0;
    for (int k0 = -n / 2 + 1; k0 <= n / 2; ++k0) {
        for (int k1 = -n / 2 + 1; k1 <= n / 2; ++k1) {
            Complex acc(0.0, 0.0);
            for (int i0 = 0; i0 < n; ++i0)
                for (int i1 = 0; i1 < n; ++i1) {
                    const double phase =
                        -kTwoPi * (double(k0 * i0) + double(k1 * i1)) / double(n);
                    acc += samples[std::size_t(i0 * n + i1)] *
                           Complex(std::cos(phase), std::sin(phase));
                }
            acc /= double(n * n);
            worst = std::max(worst, std::abs(acc - fast.at_freq({k0, k1, 0})));
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("padded inverse interpolates band-limited fields exactly") {
    Grid grid(2, 16);
    SpectralField f = field_of(grid, [](double x, double y, double) {
        return std::sin(3.0 * x) * std::cos(2.0 * y) + 0.5 * std::cos(x);
    });
    auto fine = padded_samples(f, 2);
    Grid fgrid(2, 32);
    double worst = 0.0;
    for (std::size_t i = 0; i < fgrid.size(); ++i) {
        auto idx = fgrid.unflatten(i);
        const double x = kTwoPi * double(idx[0]) / double(fgrid.n());
        const double y = kTwoPi * double(idx[1]) / double(fgrid.n());
        const double want = std::sin(3.0 * x) * std::cos(2.0 * y) + 0.5 * std::cos(x);
        worst = std::max(worst, std::fabs(fine[i] - want));
    }
    CHECK(worst < 1e-12);
}

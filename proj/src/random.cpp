#include "fracmhd/random.hpp"

#include <cmath>

#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}
std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Rng::Rng(std::uint64_t seed) : seed_(seed) {
    std::uint64_t x = seed;
    for (auto& s : s_) s = splitmix64(x);
}

std::uint64_t Rng::next_u64() {
    // xoshiro256**
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

Rng Rng::fork(std::uint64_t k) const {
    std::uint64_t x = seed_ ^ (0x5851f42d4c957f2dull * (k + 1));
    return Rng(splitmix64(x));
}

SpectralField random_real_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts) {
    const auto& table = mode_table(grid);
    const double kmax = opts.kmax > 0.0 ? opts.kmax : table.max_radius;
    SpectralField f(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double r = table.radius[i];
        if (r < opts.kmin || r > kmax) continue;
        const double amp = opts.amplitude * std::pow(r, -opts.slope);
        f[i] = Complex(amp * rng.normal(), amp * rng.normal());
    }
    hermitian_symmetrize(f);  // also drops Nyquist content
    return f;
}

VectorField random_vector_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts) {
    VectorField v(grid);
    for (int c = 0; c < grid.dim(); ++c) v[c] = random_real_field(grid, rng, opts);
    return v;
}

VectorField random_solenoidal_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts) {
    return leray_project(random_vector_field(grid, rng, opts));
}

}  // namespace fracmhd

#pragma once

#include <cstdint>

#include "fracmhd/field.hpp"

namespace fracmhd {

// Deterministic generator: splitmix64-seeded xoshiro-style stream with a
// hand-rolled Box-Muller, so draws do not depend on the standard library's
// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double normal();   // standard normal

    // child stream for ensemble member k, independent of draw order
    Rng fork(std::uint64_t k) const;

private:
    std::uint64_t s_[4];
    bool have_spare_ = false;
    double spare_ = 0.0;
    std::uint64_t seed_;
};

struct RandomFieldOpts {
    double kmin = 1.0;      // band limits on |k|; kmax = 0 means the grid maximum
    double kmax = 0.0;
    double slope = 1.0;     // amplitude ~ |k|^-slope
    double amplitude = 1.0;
};

// Real (Hermitian) scalar field with Gaussian mode amplitudes in the band.
SpectralField random_real_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts = {});

// Random real vector field; `solenoidal` version is Leray-projected.
VectorField random_vector_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts = {});
VectorField random_solenoidal_field(const Grid& grid, Rng& rng, const RandomFieldOpts& opts = {});

}  // namespace fracmhd

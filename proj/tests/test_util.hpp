#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fracmhd/fft.hpp"
#include "fracmhd/random.hpp"
#include "fracmhd/spectral_ops.hpp"

namespace testutil {

using namespace fracmhd;

// Sample a closed-form function on the grid (d <= 3; unused coords are 0).
inline std::vector<double> sample(const Grid& grid,
                                  const std::function<double(double, double, double)>& f) {
    std::vector<double> out(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        auto idx = grid.unflatten(i);
        double x[3] = {0.0, 0.0, 0.0};
        for (int a = 0; a < grid.dim(); ++a)
            x[a] = kTwoPi * double(idx[std::size_t(a)]) / double(grid.n());
        out[i] = f(x[0], x[1], x[2]);
    }
    return out;
}

inline SpectralField field_of(const Grid& grid,
                              const std::function<double(double, double, double)>& f) {
    return transform_forward(grid, sample(grid, f));
}

// Independent physical-space quadrature of int f g dx on a refined grid.
inline double quadrature_inner(const SpectralField& f, const SpectralField& g, int pad = 2) {
    auto fs = padded_samples(f, pad);
    auto gs = padded_samples(g, pad);
    double acc = 0.0;
    for (std::size_t i = 0; i < fs.size(); ++i) acc += fs[i] * gs[i];
    Grid fine(f.grid().dim(), f.grid().n() * pad);
    return fine.cell_volume() * acc;
}

inline double rel_err(double got, double want) {
    const double scale = std::max(std::fabs(want), 1e-300);
    return std::fabs(got - want) / scale;
}

inline double max_coeff_diff(const SpectralField& a, const SpectralField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_coeff_abs(const SpectralField& a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i]));
    return m;
}

}  // namespace testutil

#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "fracmhd/grid.hpp"

namespace fracmhd {

using Complex = std::complex<double>;

// One scalar field on the torus, stored as a dense set of complex Fourier
// amplitudes c_k with f(x) = sum_k c_k exp(i k.x). Real fields carry the
// Hermitian symmetry c_{-k} = conj(c_k).
class SpectralField {
public:
    explicit SpectralField(const Grid& grid)
        : grid_(grid), coeffs_(grid.size(), Complex(0.0, 0.0)) {}
    SpectralField(const Grid& grid, std::vector<Complex> coeffs)
        : grid_(grid), coeffs_(std::move(coeffs)) {
        if (coeffs_.size() != grid_.size())
            throw std::invalid_argument("SpectralField: coefficient count does not match grid");
    }

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return coeffs_.size(); }

    const std::vector<Complex>& coeffs() const { return coeffs_; }
    std::vector<Complex>& coeffs() { return coeffs_; }

    const Complex& operator[](std::size_t i) const { return coeffs_[i]; }
    Complex& operator[](std::size_t i) { return coeffs_[i]; }

    // Access by signed integer frequency vector (d components used).
    Complex at_freq(const std::array<int, 3>& k) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < grid_.dim(); ++a) idx[std::size_t(a)] = grid_.index_of_freq(k[std::size_t(a)]);
        return coeffs_[grid_.flatten(idx)];
    }
    void set_freq(const std::array<int, 3>& k, Complex v) {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = 0; a < grid_.dim(); ++a) idx[std::size_t(a)] = grid_.index_of_freq(k[std::size_t(a)]);
        coeffs_[grid_.flatten(idx)] = v;
    }

    Complex mean_mode() const { return coeffs_[0]; }

private:
    Grid grid_;
    std::vector<Complex> coeffs_;
};

// d spectral fields on one shared grid, with a solenoidal certificate.
class VectorField {
public:
    explicit VectorField(const Grid& grid) : solenoidal(false) {
        components.reserve(std::size_t(grid.dim()));
        for (int a = 0; a < grid.dim(); ++a) components.emplace_back(grid);
    }
    explicit VectorField(std::vector<SpectralField> comps, bool solenoidal_flag = false)
        : components(std::move(comps)), solenoidal(solenoidal_flag) {
        if (components.empty())
            throw std::invalid_argument("VectorField: needs at least one component");
        for (const auto& c : components)
            check_same_grid(c.grid(), components.front().grid(), "VectorField");
        if (int(components.size()) != grid().dim())
            throw std::invalid_argument("VectorField: component count must equal grid dimension");
    }

    const Grid& grid() const { return components.front().grid(); }
    int dim() const { return int(components.size()); }

    SpectralField& operator[](int a) { return components[std::size_t(a)]; }
    const SpectralField& operator[](int a) const { return components[std::size_t(a)]; }

    std::vector<SpectralField> components;
    bool solenoidal;
};

}  // namespace fracmhd

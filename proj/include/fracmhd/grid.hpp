#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracmhd {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform grid on the 2*pi-periodic d-torus. Frequencies along each axis are
// the integers -n/2+1 .. n/2, stored in DFT order (0,1,..,n/2,-n/2+1,..,-1).
class Grid {
public:
    Grid(int dim, int points_per_axis) : d_(dim), n_(points_per_axis) {
        if (dim < 1 || dim > 3)
            throw std::invalid_argument("Grid: dimension must be 1, 2 or 3");
        if (points_per_axis < 2 || points_per_axis % 2 != 0)
            throw std::invalid_argument("Grid: points per axis must be even and >= 2");
        std::size_t total = 1;
        for (int a = 0; a < dim; ++a) {
            if (total > (std::size_t(1) << 28) / std::size_t(points_per_axis))
                throw std::invalid_argument("Grid: total point count too large");
            total *= std::size_t(points_per_axis);
        }
        size_ = total;
    }

    int dim() const { return d_; }
    int n() const { return n_; }
    std::size_t size() const { return size_; }
    double length() const { return kTwoPi; }
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < d_; ++a) v *= kTwoPi / n_;
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (int a = 0; a < d_; ++a) v *= kTwoPi;
        return v;
    }

    // Signed integer frequency for a storage index along one axis.
    int freq(int index) const { return index <= n_ / 2 ? index : index - n_; }
    // Storage index of a signed frequency (must be resolvable).
    int index_of_freq(int k) const { return k >= 0 ? k : k + n_; }
    int max_axis_freq() const { return n_ / 2; }
    int min_axis_freq() const { return -n_ / 2 + 1; }

    std::array<int, 3> unflatten(std::size_t flat) const {
        std::array<int, 3> idx{0, 0, 0};
        for (int a = d_ - 1; a >= 0; --a) {
            idx[std::size_t(a)] = int(flat % std::size_t(n_));
            flat /= std::size_t(n_);
        }
        return idx;
    }
    std::size_t flatten(const std::array<int, 3>& idx) const {
        std::size_t flat = 0;
        for (int a = 0; a < d_; ++a) flat = flat * std::size_t(n_) + std::size_t(idx[std::size_t(a)]);
        return flat;
    }

    bool operator==(const Grid& o) const { return d_ == o.d_ && n_ == o.n_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    int d_;
    int n_;
    std::size_t size_;
};

// Per-mode wavevector table, shared across all fields on equal grids.
struct ModeTable {
    std::vector<std::array<double, 3>> wavevector;  // k components, zero-padded to 3
    std::vector<double> radius;                     // |k|
    double max_radius = 0.0;
};

const ModeTable& mode_table(const Grid& grid);

inline void check_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (a != b) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace fracmhd

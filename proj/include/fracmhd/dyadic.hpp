#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "fracmhd/field.hpp"
#include "fracmhd/grid.hpp"

namespace fracmhd {

enum class Flavor { Inhomogeneous, Homogeneous };

// Radial dyadic partition of unity. phi and psi are built from a smooth
// exponential step so that supp phi c B(0,4/3), supp psi c [3/4,8/3] and the
// telescoping identities
//   phi(r) + sum_{j>=0} psi(2^-j r) = 1          (r >= 0)
//   sum_{j in Z} psi(2^-j r) = 1                 (r > 0)
// hold exactly. Block indices are clamped to the range resolvable on the
// grid the partition was built for.
class DyadicPartition {
public:
    static DyadicPartition build(const Grid& grid);

    double phi(double r) const;
    double psi(double r) const;

    // block multiplier at radius r: psi(2^-j r), or phi(r) for the
    // inhomogeneous j=-1 block; identically 0 for inhomogeneous j <= -2
    double block_weight(int j, double r, Flavor flavor) const;

    // low-pass cutoff S_j at radius r: chi(2^-j r) by telescoping; the
    // homogeneous flavor removes the mean (weight 0 at r=0)
    double cutoff_weight(int j, double r, Flavor flavor) const;

    int j_min(Flavor flavor) const { return flavor == Flavor::Inhomogeneous ? -1 : -2; }
    int j_max() const { return j_max_; }
    const Grid& grid() const { return grid_; }

    // per-mode weight table for one block, cached
    const std::vector<double>& block_table(int j, Flavor flavor) const;
    const std::vector<double>& cutoff_table(int j, Flavor flavor) const;

private:
    explicit DyadicPartition(const Grid& grid);

    Grid grid_;
    int j_max_;
    struct Cache;
    std::shared_ptr<Cache> cache_;
};

SpectralField delta_j(const DyadicPartition& part, const SpectralField& f, int j, Flavor flavor);
VectorField delta_j(const DyadicPartition& part, const VectorField& f, int j, Flavor flavor);

// Delta~_j = Delta_{j-1} + Delta_j + Delta_{j+1}
SpectralField delta_j_wide(const DyadicPartition& part, const SpectralField& f, int j, Flavor flavor);

SpectralField s_j(const DyadicPartition& part, const SpectralField& f, int j, Flavor flavor);
VectorField s_j(const DyadicPartition& part, const VectorField& f, int j, Flavor flavor);

// Lazily materialized dyadic blocks of one field, cached per j.
class BlockedField {
public:
    BlockedField(const DyadicPartition& part, SpectralField f, Flavor flavor);

    const SpectralField& block(int j) const;
    SpectralField reconstruct() const;  // sum of blocks over the resolvable range

    Flavor flavor() const { return flavor_; }
    const DyadicPartition& partition() const { return part_; }
    const SpectralField& source() const { return source_; }

private:
    DyadicPartition part_;
    SpectralField source_;
    Flavor flavor_;
    mutable std::mutex mu_;
    mutable std::map<int, SpectralField> cache_;
};

struct BonyParts {
    SpectralField low_high;   // sum_k S_{k-1}F Delta_k G
    SpectralField high_low;   // sum_k Delta_k F S_{k-1}G
    SpectralField high_high;  // sum_k Delta_k F Delta~_k G
};

// Paraproduct split of the product F*G; the three parts sum to the dealiased
// product exactly (every block pair lands in exactly one part).
BonyParts bony_decompose(const DyadicPartition& part, const SpectralField& F,
                         const SpectralField& G);

// ||Delta_j f||_{L2} for every resolvable j, one pass over modes.
struct BlockProfile {
    int j_lo = 0;
    std::vector<double> values;
    double at(int j) const {
        const int i = j - j_lo;
        return (i < 0 || i >= int(values.size())) ? 0.0 : values[std::size_t(i)];
    }
    int j_hi() const { return j_lo + int(values.size()) - 1; }
};

BlockProfile block_l2_profile(const DyadicPartition& part, const SpectralField& f, Flavor flavor);
// stacked components: per-block l2 over all components
BlockProfile block_l2_profile(const DyadicPartition& part, const VectorField& f, Flavor flavor);

}  // namespace fracmhd

#include "fracmhd/dyadic.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmhd/kernels.hpp"
#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

namespace {

// chi(r) = 1 on [0,3/4], 0 on [4/3,inf), smooth exponential step between.
double smooth_bump_g(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
    const double a = smooth_bump_g(t);
    const double b = smooth_bump_g(1.0 - t);
    return a / (a + b);
}

double chi(double r) {
    constexpr double lo = 0.75;
    constexpr double hi = 4.0 / 3.0;
    if (r <= lo) return 1.0;
    if (r >= hi) return 0.0;
    return 1.0 - smooth_step((r - lo) / (hi - lo));
}

}  // namespace

struct DyadicPartition::Cache {
    std::mutex mu;
    std::map<std::pair<int, int>, std::vector<double>> block;   // (j, flavor)
    std::map<std::pair<int, int>, std::vector<double>> cutoff;  // (j, flavor)
};

DyadicPartition::DyadicPartition(const Grid& grid)
    : grid_(grid), j_max_(0), cache_(std::make_shared<Cache>()) {
    const double max_r = mode_table(grid).max_radius;
    int j = 0;
    while (3.0 * std::ldexp(1.0, j - 1) <= max_r) ++j;
    j_max_ = j;  // largest j with 3*2^(j-2) <= max resolvable |k|
}

DyadicPartition DyadicPartition::build(const Grid& grid) { return DyadicPartition(grid); }

double DyadicPartition::phi(double r) const { return chi(r); }

double DyadicPartition::psi(double r) const { return chi(0.5 * r) - chi(r); }

double DyadicPartition::block_weight(int j, double r, Flavor flavor) const {
    if (flavor == Flavor::Inhomogeneous) {
        if (j <= -2) return 0.0;
        if (j == -1) return phi(r);
    }
    return psi(std::ldexp(r, -j));
}

double DyadicPartition::cutoff_weight(int j, double r, Flavor flavor) const {
    if (flavor == Flavor::Inhomogeneous && j <= -1) return 0.0;
    if (flavor == Flavor::Homogeneous && r == 0.0) return 0.0;
    return chi(std::ldexp(r, -j));
}

const std::vector<double>& DyadicPartition::block_table(int j, Flavor flavor) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = std::make_pair(j, int(flavor));
    auto it = cache_->block.find(key);
    if (it != cache_->block.end()) return it->second;
    const auto& table = mode_table(grid_);
    std::vector<double> w(grid_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = block_weight(j, table.radius[i], flavor);
    return cache_->block.emplace(key, std::move(w)).first->second;
}

const std::vector<double>& DyadicPartition::cutoff_table(int j, Flavor flavor) const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    auto key = std::make_pair(j, int(flavor));
    auto it = cache_->cutoff.find(key);
    if (it != cache_->cutoff.end()) return it->second;
    const auto& table = mode_table(grid_);
    std::vector<double> w(grid_.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = cutoff_weight(j, table.radius[i], flavor);
    return cache_->cutoff.emplace(key, std::move(w)).first->second;
}

namespace {
SpectralField apply_table(const std::vector<double>& w, const SpectralField& f) {
    SpectralField out(f.grid());
    kernels::apply_multiplier(w, std::span<const Complex>(f.coeffs().data(), f.size()),
                              std::span<Complex>(out.coeffs().data(), out.size()));
    return out;
}
}  // namespace

SpectralField delta_j(const DyadicPartition& part, const SpectralField& f, int j, Flavor flavor) {
    check_same_grid(part.grid(), f.grid(), "delta_j");
    if (flavor == Flavor::Inhomogeneous && j <= -2) return SpectralField(f.grid());
    return apply_table(part.block_table(j, flavor), f);
}

VectorField delta_j(const DyadicPartition& part, const VectorField& f, int j, Flavor flavor) {
    std::vector<SpectralField> comps;
    comps.reserve(std::size_t(f.dim()));
    for (int c = 0; c < f.dim(); ++c) comps.push_back(delta_j(part, f[c], j, flavor));
    VectorField out(std::move(comps));
    out.solenoidal = f.solenoidal;  // radial multipliers commute with the projection
    return out;
}

SpectralField delta_j_wide(const DyadicPartition& part, const SpectralField& f, int j,
                           Flavor flavor) {
    SpectralField out = delta_j(part, f, j - 1, flavor);
    out += delta_j(part, f, j, flavor);
    out += delta_j(part, f, j + 1, flavor);
    return out;
}

SpectralField s_j(const DyadicPartition& part, const SpectralField& f, int j, Flavor flavor) {
    check_same_grid(part.grid(), f.grid(), "s_j");
    if (flavor == Flavor::Inhomogeneous && j <= -1) return SpectralField(f.grid());
    return apply_table(part.cutoff_table(j, flavor), f);
}

VectorField s_j(const DyadicPartition& part, const VectorField& f, int j, Flavor flavor) {
    std::vector<SpectralField> comps;
    comps.reserve(std::size_t(f.dim()));
    for (int c = 0; c < f.dim(); ++c) comps.push_back(s_j(part, f[c], j, flavor));
    VectorField out(std::move(comps));
    out.solenoidal = f.solenoidal;
    return out;
}

BlockedField::BlockedField(const DyadicPartition& part, SpectralField f, Flavor flavor)
    : part_(part), source_(std::move(f)), flavor_(flavor) {
    check_same_grid(part_.grid(), source_.grid(), "BlockedField");
}

const SpectralField& BlockedField::block(int j) const {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(j);
    if (it != cache_.end()) return it->second;
    return cache_.emplace(j, delta_j(part_, source_, j, flavor_)).first->second;
}

SpectralField BlockedField::reconstruct() const {
    SpectralField acc(source_.grid());
    for (int j = part_.j_min(flavor_); j <= part_.j_max(); ++j) acc += block(j);
    return acc;
}

BonyParts bony_decompose(const DyadicPartition& part, const SpectralField& F,
                         const SpectralField& G) {
    check_same_grid(F.grid(), G.grid(), "bony_decompose");
    check_same_grid(part.grid(), F.grid(), "bony_decompose");
    const int j_lo = part.j_min(Flavor::Inhomogeneous);
    const int j_hi = part.j_max();

    BonyParts parts{SpectralField(F.grid()), SpectralField(F.grid()), SpectralField(F.grid())};
    for (int k = j_lo; k <= j_hi; ++k) {
        SpectralField dkF = delta_j(part, F, k, Flavor::Inhomogeneous);
        SpectralField dkG = delta_j(part, G, k, Flavor::Inhomogeneous);
        SpectralField skF = s_j(part, F, k - 1, Flavor::Inhomogeneous);
        SpectralField skG = s_j(part, G, k - 1, Flavor::Inhomogeneous);
        SpectralField wkG = delta_j_wide(part, G, k, Flavor::Inhomogeneous);
        parts.low_high += dealiased_product(skF, dkG);
        parts.high_low += dealiased_product(dkF, skG);
        parts.high_high += dealiased_product(dkF, wkG);
    }
    return parts;
}

namespace {
BlockProfile profile_impl(const DyadicPartition& part, const std::vector<const SpectralField*>& fields,
                          Flavor flavor) {
    const Grid& grid = part.grid();
    const int j_lo = part.j_min(flavor);
    const int j_hi = part.j_max();
    const int nblocks = j_hi - j_lo + 1;

    // ||Delta_j f||_L2^2 = vol * sum_k w_j(|k|)^2 |c_k|^2
    std::vector<double> acc(std::size_t(nblocks), 0.0);
    for (int j = j_lo; j <= j_hi; ++j) {
        const auto& w = part.block_table(j, flavor);
        double s = 0.0;
        for (const SpectralField* f : fields) {
            const auto& c = f->coeffs();
            for (std::size_t i = 0; i < c.size(); ++i) {
                if (w[i] != 0.0) s += w[i] * w[i] * std::norm(c[i]);
            }
        }
        acc[std::size_t(j - j_lo)] = s;
    }
    BlockProfile prof;
    prof.j_lo = j_lo;
    prof.values.resize(std::size_t(nblocks));
    const double vol = grid.volume();
    for (int i = 0; i < nblocks; ++i) prof.values[std::size_t(i)] = std::sqrt(vol * acc[std::size_t(i)]);
    return prof;
}
}  // namespace

BlockProfile block_l2_profile(const DyadicPartition& part, const SpectralField& f, Flavor flavor) {
    check_same_grid(part.grid(), f.grid(), "block_l2_profile");
    return profile_impl(part, {&f}, flavor);
}

BlockProfile block_l2_profile(const DyadicPartition& part, const VectorField& f, Flavor flavor) {
    check_same_grid(part.grid(), f.grid(), "block_l2_profile");
    std::vector<const SpectralField*> ptrs;
    for (const auto& c : f.components) ptrs.push_back(&c);
    return profile_impl(part, ptrs, flavor);
}

}  // namespace fracmhd

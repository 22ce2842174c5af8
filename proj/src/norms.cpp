#include "fracmhd/norms.hpp"

#include <algorithm>

#include "fracmhd/fft.hpp"
#include "fracmhd/kernels.hpp"
#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

double lebesgue_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lebesgue_norm: p must lie in [1, inf]");
    if (p == 2.0) return l2_norm(f);
    if (p == kInf) {
        auto samples = transform_inverse(f);
        return kernels::max_abs(std::span<const double>(samples.data(), samples.size()));
    }
    constexpr int pad = 2;
    auto samples = transform_inverse_padded(f, pad);
    Grid fine(f.grid().dim(), f.grid().n() * pad);
    const double s = kernels::sum_abs_pow(std::span<const double>(samples.data(), samples.size()), p);
    return std::pow(fine.cell_volume() * s, 1.0 / p);
}

namespace {

double lq_aggregate(const std::vector<double>& terms, double q) {
    if (q == kInf) {
        double m = 0.0;
        for (double t : terms) m = std::max(m, t);
        return m;
    }
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, q);
    return std::pow(acc, 1.0 / q);
}

// blockwise Lp norms over a stacked component list, l2-combined across
// components for p != 2 (p = 2 stacks exactly)
std::vector<double> block_norms(const DyadicPartition& part,
                                const std::vector<const SpectralField*>& comps, double p,
                                Flavor flavor) {
    const int j_lo = part.j_min(flavor);
    const int j_hi = part.j_max();
    std::vector<double> out(std::size_t(j_hi - j_lo + 1), 0.0);
    if (p == 2.0) {
        // single sweep via the cached multiplier tables
        for (int j = j_lo; j <= j_hi; ++j) {
            const auto& w = part.block_table(j, flavor);
            double s = 0.0;
            for (const SpectralField* f : comps) {
                const auto& c = f->coeffs();
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (w[i] != 0.0) s += w[i] * w[i] * std::norm(c[i]);
            }
            out[std::size_t(j - j_lo)] = std::sqrt(part.grid().volume() * s);
        }
        return out;
    }
    for (int j = j_lo; j <= j_hi; ++j) {
        double s = 0.0;
        for (const SpectralField* f : comps) {
            const double nc = lebesgue_norm(delta_j(part, *f, j, flavor), p);
            s += nc * nc;
        }
        out[std::size_t(j - j_lo)] = std::sqrt(s);
    }
    return out;
}

double besov_from_blocks(const std::vector<double>& blocks, int j_lo, double s, double q) {
    std::vector<double> terms(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
        terms[i] = std::pow(2.0, s * double(j_lo + int(i))) * blocks[i];
    return lq_aggregate(terms, q);
}

std::vector<const SpectralField*> scalar_list(const SpectralField& f) { return {&f}; }

std::vector<const SpectralField*> vector_list(const VectorField& f) {
    std::vector<const SpectralField*> out;
    for (const auto& c : f.components) out.push_back(&c);
    return out;
}

}  // namespace

double besov_norm(const DyadicPartition& part, const SpectralField& f, const NormSpec& spec) {
    spec.validate();
    if (spec.r) throw std::invalid_argument("besov_norm: spec carries a time exponent");
    auto blocks = block_norms(part, scalar_list(f), spec.p, spec.flavor);
    return besov_from_blocks(blocks, part.j_min(spec.flavor), spec.s, spec.q);
}

double besov_norm(const DyadicPartition& part, const VectorField& f, const NormSpec& spec) {
    spec.validate();
    if (spec.r) throw std::invalid_argument("besov_norm: spec carries a time exponent");
    auto blocks = block_norms(part, vector_list(f), spec.p, spec.flavor);
    return besov_from_blocks(blocks, part.j_min(spec.flavor), spec.s, spec.q);
}

double pair_besov_norm(const DyadicPartition& part, const VectorField& u, const VectorField& b,
                       const NormSpec& spec) {
    spec.validate();
    if (spec.r) throw std::invalid_argument("pair_besov_norm: spec carries a time exponent");
    auto comps = vector_list(u);
    for (const auto& c : b.components) comps.push_back(&c);
    auto blocks = block_norms(part, comps, spec.p, spec.flavor);
    return besov_from_blocks(blocks, part.j_min(spec.flavor), spec.s, spec.q);
}

double besov_tail_weight(const DyadicPartition& part, const SpectralField& f,
                         const NormSpec& spec) {
    const int j = part.j_max();
    return std::pow(2.0, spec.s * double(j)) * lebesgue_norm(delta_j(part, f, j, spec.flavor), spec.p);
}

double time_lr_norm(const std::vector<double>& values, double dt, double r) {
    if (values.size() < 2) throw std::invalid_argument("time_lr_norm: needs at least 2 samples");
    if (r == kInf) {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) acc += std::pow(values[i], r) * dt;
    return std::pow(acc, 1.0 / r);
}

namespace {

template <class TrajT, class ListFn>
double chemin_lerner_impl(const DyadicPartition& part, const TrajT& traj, const NormSpec& spec,
                          ListFn list_of) {
    spec.validate();
    if (!spec.r) throw std::invalid_argument("chemin_lerner_norm: spec needs a time exponent r");
    traj.validate();
    const int j_lo = part.j_min(spec.flavor);
    const int j_hi = part.j_max();
    const std::size_t nt = traj.samples();

    // per-instant blockwise norms
    std::vector<std::vector<double>> w(nt);
    for (std::size_t t = 0; t < nt; ++t)
        w[t] = block_norms(part, list_of(traj.states[t]), spec.p, spec.flavor);

    std::vector<double> terms(std::size_t(j_hi - j_lo + 1));
    std::vector<double> series(nt);
    for (int j = j_lo; j <= j_hi; ++j) {
        for (std::size_t t = 0; t < nt; ++t) series[t] = w[t][std::size_t(j - j_lo)];
        terms[std::size_t(j - j_lo)] =
            std::pow(2.0, spec.s * double(j)) * time_lr_norm(series, traj.dt(), *spec.r);
    }
    return lq_aggregate(terms, spec.q);
}

template <class TrajT, class ListFn>
double time_outer_impl(const DyadicPartition& part, const TrajT& traj, const NormSpec& spec,
                       ListFn list_of) {
    spec.validate();
    if (!spec.r) throw std::invalid_argument("time_outer_besov_norm: spec needs a time exponent r");
    traj.validate();
    NormSpec inst = spec;
    inst.r.reset();
    std::vector<double> series(traj.samples());
    for (std::size_t t = 0; t < traj.samples(); ++t) {
        auto blocks = block_norms(part, list_of(traj.states[t]), spec.p, spec.flavor);
        series[t] = besov_from_blocks(blocks, part.j_min(spec.flavor), spec.s, spec.q);
    }
    return time_lr_norm(series, traj.dt(), *spec.r);
}

}  // namespace

double chemin_lerner_norm(const DyadicPartition& part, const ScalarTrajectory& traj,
                          const NormSpec& spec) {
    return chemin_lerner_impl(part, traj, spec, [](const SpectralField& f) { return scalar_list(f); });
}

double chemin_lerner_norm(const DyadicPartition& part, const FieldTrajectory& traj,
                          const NormSpec& spec) {
    return chemin_lerner_impl(part, traj, spec, [](const VectorField& f) { return vector_list(f); });
}

double pair_chemin_lerner_norm(const DyadicPartition& part, const FieldTrajectory& u,
                               const FieldTrajectory& b, const NormSpec& spec) {
    spec.validate();
    if (!spec.r) throw std::invalid_argument("pair_chemin_lerner_norm: spec needs a time exponent r");
    u.validate();
    b.validate();
    if (u.samples() != b.samples())
        throw std::invalid_argument("pair_chemin_lerner_norm: trajectories out of step");
    const int j_lo = part.j_min(spec.flavor);
    const int j_hi = part.j_max();
    const std::size_t nt = u.samples();

    std::vector<std::vector<double>> w(nt);
    for (std::size_t t = 0; t < nt; ++t) {
        auto comps = vector_list(u.states[t]);
        for (const auto& c : b.states[t].components) comps.push_back(&c);
        w[t] = block_norms(part, comps, spec.p, spec.flavor);
    }
    std::vector<double> terms(std::size_t(j_hi - j_lo + 1));
    std::vector<double> series(nt);
    for (int j = j_lo; j <= j_hi; ++j) {
        for (std::size_t t = 0; t < nt; ++t) series[t] = w[t][std::size_t(j - j_lo)];
        terms[std::size_t(j - j_lo)] =
            std::pow(2.0, spec.s * double(j)) * time_lr_norm(series, u.dt(), *spec.r);
    }
    return lq_aggregate(terms, spec.q);
}

double time_outer_besov_norm(const DyadicPartition& part, const ScalarTrajectory& traj,
                             const NormSpec& spec) {
    return time_outer_impl(part, traj, spec, [](const SpectralField& f) { return scalar_list(f); });
}

double time_outer_besov_norm(const DyadicPartition& part, const FieldTrajectory& traj,
                             const NormSpec& spec) {
    return time_outer_impl(part, traj, spec, [](const VectorField& f) { return vector_list(f); });
}

}  // namespace fracmhd

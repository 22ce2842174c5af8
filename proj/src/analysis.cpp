#include "fracmhd/analysis.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmhd/norms.hpp"
#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

namespace {

// ||Delta~_k f||_{L2} over stacked components, one value per k.
double wide_block_l2(const DyadicPartition& part, const VectorField& f, int k, Flavor flavor) {
    double acc = 0.0;
    for (int c = 0; c < f.dim(); ++c) {
        SpectralField w = delta_j_wide(part, f[c], k, flavor);
        const double n = l2_norm(w);
        acc += n * n;
    }
    return std::sqrt(acc);
}

}  // namespace

BernsteinReport bernstein_check(const DyadicPartition& part, const SpectralField& f, int j,
                                double alpha, double p, double q, Flavor flavor) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("bernstein_check: alpha must be >= 0");
    if (!(p >= 1.0) || !(q >= 1.0) || p > q)
        throw std::invalid_argument("bernstein_check: exponents must satisfy 1 <= p <= q <= inf");
    const int d = f.grid().dim();

    SpectralField band = delta_j_wide(part, f, j, flavor);
    const double norm_p = lebesgue_norm(band, p);
    if (norm_p == 0.0) throw std::invalid_argument("bernstein_check: zero field after band filter");
    const double norm_q = lebesgue_norm(band, q);
    const double frac_q = lebesgue_norm(fractional_laplacian(band, alpha), q);

    const double two_aj = std::pow(2.0, 2.0 * alpha * double(j));
    const double gain = (q == kInf) ? std::pow(2.0, double(j) * double(d) / p)
                                    : std::pow(2.0, double(j) * double(d) * (1.0 / p - 1.0 / q));

    BernsteinReport rep;
    rep.upper.j = rep.lower.j = j;
    rep.upper.lhs = frac_q;
    rep.upper.rhs_unit_constant = two_aj * gain * norm_p;
    rep.upper.ratio = rep.upper.lhs / rep.upper.rhs_unit_constant;
    rep.lower.lhs = frac_q;
    rep.lower.rhs_unit_constant = two_aj * norm_q;
    rep.lower.ratio = rep.lower.lhs / rep.lower.rhs_unit_constant;

    // modewise extremes of (|k|/2^j)^(2a) over the lattice support of the
    // wide-block filter actually applied
    const auto& table = mode_table(f.grid());
    double rmin = 0.0, rmax = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < f.grid().size(); ++i) {
        double w = part.block_weight(j - 1, table.radius[i], flavor) +
                   part.block_weight(j, table.radius[i], flavor) +
                   part.block_weight(j + 1, table.radius[i], flavor);
        if (w == 0.0) continue;
        const double m = std::pow(table.radius[i] / std::ldexp(1.0, j), 2.0 * alpha);
        if (!any) {
            rmin = rmax = m;
            any = true;
        } else {
            rmin = std::min(rmin, m);
            rmax = std::max(rmax, m);
        }
    }
    rep.forced_min = rmin;
    rep.forced_max = rmax;
    return rep;
}

RatioReport triple_product_bound_check(const DyadicPartition& part, const VectorField& F,
                                       const VectorField& G, const VectorField& H, int j,
                                       TripleVariant variant, Flavor flavor) {
    check_same_grid(F.grid(), G.grid(), "triple_product_bound_check");
    check_same_grid(F.grid(), H.grid(), "triple_product_bound_check");
    if (!F.solenoidal && !solenoidal_within(F))
        throw std::invalid_argument(
            "triple_product_bound_check: F must be divergence-free (the bound uses div F = 0)");
    const int d = F.grid().dim();
    const int j_lo = part.j_min(flavor);
    const int j_hi = part.j_max();

    const BlockProfile pf = block_l2_profile(part, F, flavor);
    const BlockProfile pg = block_l2_profile(part, G, flavor);
    const BlockProfile ph = block_l2_profile(part, H, flavor);

    auto low_sum = [&](const BlockProfile& prof, double exponent, int upto) {
        double s = 0.0;
        for (int m = j_lo; m <= upto; ++m) s += std::pow(2.0, exponent * double(m)) * prof.at(m);
        return s;
    };
    auto near_sum = [&](const BlockProfile& prof) {
        double s = 0.0;
        for (int k = j - 2; k <= j + 2; ++k)
            if (k >= j_lo && k <= j_hi) s += prof.at(k);
        return s;
    };
    auto high_sum = [&](const BlockProfile& pF, const VectorField& Gf) {
        double s = 0.0;
        for (int k = std::max(j - 1, j_lo); k <= j_hi; ++k)
            s += std::pow(2.0, 0.5 * double(d) * double(k)) * pF.at(k) *
                 wide_block_l2(part, Gf, k, flavor);
        return std::ldexp(1.0, j) * s;
    };
    // near-block low sums with the m <= k-1 range of the symmetrized bound
    auto near_low_sum = [&](const BlockProfile& pF, const BlockProfile& prof) {
        double s = 0.0;
        for (int k = j - 2; k <= j + 2; ++k) {
            if (k < j_lo || k > j_hi) continue;
            s += pF.at(k) * low_sum(prof, 1.0 + 0.5 * double(d), k - 1);
        }
        return s;
    };

    const double two_j = std::ldexp(1.0, j);
    const double dj_g = pg.at(j);
    const double dj_h = ph.at(j);

    RatioReport rep;
    rep.j = j;
    VectorField fg = advect(F, G);
    switch (variant) {
        case TripleVariant::A4: {
            double val = 0.0;
            for (int c = 0; c < d; ++c)
                val += inner_product(delta_j(part, fg[c], j, flavor), delta_j(part, H[c], j, flavor));
            rep.lhs = std::fabs(val);
            rep.rhs_unit_constant =
                dj_h * (two_j * low_sum(pf, 0.5 * double(d), j - 1) * near_sum(pg) +
                        near_sum(pf) * low_sum(pg, 1.0 + 0.5 * double(d), j - 1) + high_sum(pf, G));
            break;
        }
        case TripleVariant::A5: {
            double val = 0.0;
            for (int c = 0; c < d; ++c)
                val += inner_product(delta_j(part, fg[c], j, flavor), delta_j(part, G[c], j, flavor));
            rep.lhs = std::fabs(val);
            rep.rhs_unit_constant =
                dj_g * (low_sum(pf, 1.0 + 0.5 * double(d), j - 1) * near_sum(pg) +
                        near_sum(pf) * low_sum(pg, 1.0 + 0.5 * double(d), j - 1) + high_sum(pf, G));
            break;
        }
        case TripleVariant::A6: {
            VectorField fh = advect(F, H);
            double val = 0.0;
            for (int c = 0; c < d; ++c) {
                val += inner_product(delta_j(part, fh[c], j, flavor), delta_j(part, G[c], j, flavor));
                val += inner_product(delta_j(part, fg[c], j, flavor), delta_j(part, H[c], j, flavor));
            }
            rep.lhs = std::fabs(val);
            rep.rhs_unit_constant =
                dj_g * (low_sum(pf, 1.0 + 0.5 * double(d), j - 1) * near_sum(ph) +
                        near_low_sum(pf, ph) + high_sum(pf, H)) +
                dj_h * (low_sum(pf, 1.0 + 0.5 * double(d), j - 1) * near_sum(pg) +
                        near_low_sum(pf, pg) + high_sum(pf, G));
            break;
        }
    }
    rep.ratio = rep.rhs_unit_constant > 0.0 ? rep.lhs / rep.rhs_unit_constant : 0.0;
    return rep;
}

double cancellation_check(const DyadicPartition& part, const VectorField& b,
                          const SpectralField& f, const SpectralField& g, int j, Flavor flavor) {
    check_same_grid(b.grid(), f.grid(), "cancellation_check");
    check_same_grid(b.grid(), g.grid(), "cancellation_check");
    VectorField sb = s_j(part, b, j, flavor);
    SpectralField df = delta_j(part, f, j, flavor);
    SpectralField dg = delta_j(part, g, j, flavor);
    double val = 0.0;
    for (int i = 0; i < b.dim(); ++i) {
        val += triple_integral(sb[i], derivative(df, i), dg);
        val += triple_integral(sb[i], derivative(dg, i), df);
    }
    return std::fabs(val);
}

double cancellation_scale(const DyadicPartition& part, const VectorField& b,
                          const SpectralField& f, const SpectralField& g, int j, Flavor flavor) {
    VectorField sb = s_j(part, b, j, flavor);
    double sb_inf = 0.0;
    for (int i = 0; i < b.dim(); ++i) sb_inf = std::max(sb_inf, lebesgue_norm(sb[i], kInf));
    const double df = l2_norm(delta_j(part, f, j, flavor));
    const double dg = l2_norm(delta_j(part, g, j, flavor));
    return df * dg * sb_inf + 1e-300;
}

RatioReport product_law_check(const DyadicPartition& part, const SpectralField& f,
                              const SpectralField& g, double s1, double s2, double p) {
    const double d = double(f.grid().dim());
    if (!(p >= 1.0)) throw std::invalid_argument("product_law_check: p must lie in [1, inf]");
    const double dp = d / p;
    if (s1 > dp)
        throw std::invalid_argument("product_law_check: hypothesis s1 <= d/p fails (s1 = " +
                                    std::to_string(s1) + ", d/p = " + std::to_string(dp) + ")");
    if (s2 > dp)
        throw std::invalid_argument("product_law_check: hypothesis s2 <= d/p fails (s2 = " +
                                    std::to_string(s2) + ", d/p = " + std::to_string(dp) + ")");
    const double floor_sum = d * std::max(0.0, 2.0 / p - 1.0);
    if (!(s1 + s2 > floor_sum))
        throw std::invalid_argument(
            "product_law_check: hypothesis s1 + s2 > d*max(0, 2/p - 1) fails (s1 + s2 = " +
            std::to_string(s1 + s2) + ", bound = " + std::to_string(floor_sum) + ")");

    NormSpec spec1{s1, p, 1.0, Flavor::Homogeneous, std::nullopt};
    NormSpec spec2{s2, p, 1.0, Flavor::Homogeneous, std::nullopt};
    NormSpec spec_prod{s1 + s2 - dp, p, 1.0, Flavor::Homogeneous, std::nullopt};

    RatioReport rep;
    rep.lhs = besov_norm(part, dealiased_product(f, g), spec_prod);
    rep.rhs_unit_constant = besov_norm(part, f, spec1) * besov_norm(part, g, spec2);
    rep.ratio = rep.rhs_unit_constant > 0.0 ? rep.lhs / rep.rhs_unit_constant : 0.0;
    return rep;
}

}  // namespace fracmhd

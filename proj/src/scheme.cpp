#include "fracmhd/scheme.hpp"

#include <cmath>
#include <stdexcept>

#include "fracmhd/spectral_ops.hpp"

namespace fracmhd {

void SchemeConfig::validate() const {
    if (d < 1 || d > 3) throw std::invalid_argument("SchemeConfig: d must be 1, 2 or 3");
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("SchemeConfig: n must be even and >= 2");
    if (!(alpha >= 0.0))
        throw std::invalid_argument("SchemeConfig: alpha must satisfy alpha >= 0");
    const double cap = 1.0 + double(d) / 4.0;
    if (!(alpha < cap))
        throw std::invalid_argument("SchemeConfig: alpha = " + std::to_string(alpha) +
                                    " violates the local existence hypothesis alpha < 1 + d/4 = " +
                                    std::to_string(cap));
    if ((regime == Regime::AlphaGE1) != (alpha >= 1.0))
        throw std::invalid_argument("SchemeConfig: regime inconsistent with alpha (lagged regime "
                                    "requires alpha >= 1, coupled regime alpha < 1)");
    if (regime == Regime::AlphaLT1) {
        const double floor_sigma = 1.0 + double(d) / 2.0 - alpha;
        if (!(sigma > floor_sigma))
            throw std::invalid_argument(
                "SchemeConfig: sigma = " + std::to_string(sigma) +
                " violates the regularity condition sigma > 1 + d/2 - alpha = " +
                std::to_string(floor_sigma));
    }
    if (!(nu > 0.0)) throw std::invalid_argument("SchemeConfig: nu must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("SchemeConfig: dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("SchemeConfig: T must be positive");
    if (steps() < 1) throw std::invalid_argument("SchemeConfig: T/dt must round to at least 1 step");
    if (n_iter < 1) throw std::invalid_argument("SchemeConfig: n_iter must be >= 1");
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("SchemeConfig: delta must lie in (0, 1)");
}

DissipationReport dissipation_ratios(const DyadicPartition& part, double alpha, Flavor flavor) {
    const auto& table = mode_table(part.grid());
    DissipationReport rep;
    rep.global = kInf;
    for (int j = part.j_min(flavor); j <= part.j_max(); ++j) {
        const auto& w = part.block_table(j, flavor);
        double best = kInf;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (w[i] == 0.0 || table.radius[i] == 0.0) continue;
            best = std::min(best, std::pow(table.radius[i] / std::ldexp(1.0, j), 2.0 * alpha));
        }
        if (best < kInf) {
            rep.per_j.emplace_back(j, best);
            rep.global = std::min(rep.global, best);
        }
    }
    if (rep.per_j.empty()) rep.global = 1.0;
    return rep;
}

double dissipation_constant(const DyadicPartition& part, const SchemeConfig& cfg) {
    const double base = dissipation_ratios(part, cfg.alpha, cfg.flavor()).global;
    return (cfg.regime == Regime::AlphaGE1 ? cfg.nu : 2.0 * cfg.nu) * base;
}

std::pair<VectorField, VectorField> truncate_initial(const DyadicPartition& part,
                                                     const VectorField& u0, const VectorField& b0,
                                                     int n, Flavor flavor) {
    return {s_j(part, u0, n + 1, flavor), s_j(part, b0, n + 1, flavor)};
}

VectorField velocity_substep(const VectorField& u_prev, const VectorField& forcing,
                             const SchemeConfig& cfg, double dt) {
    check_same_grid(u_prev.grid(), forcing.grid(), "velocity_substep");
    const auto& table = mode_table(u_prev.grid());
    VectorField out(u_prev.grid());
    const int d = u_prev.dim();
    const std::ptrdiff_t nmodes = std::ptrdiff_t(u_prev.grid().size());
#pragma omp parallel for schedule(static) if (nmodes >= 8192)
    for (std::ptrdiff_t i = 0; i < nmodes; ++i) {
        const std::size_t m = std::size_t(i);
        const double r = table.radius[m];
        const double lam = cfg.nu * (r == 0.0 ? 0.0 : std::pow(r, 2.0 * cfg.alpha));
        const double z = lam * dt;
        const double decay = std::exp(-z);
        // phi1(z) = (1 - e^-z)/z, exact limit 1 at z = 0
        const double phi1 = z > 1e-12 ? -std::expm1(-z) / z : 1.0 - 0.5 * z;
        for (int c = 0; c < d; ++c)
            out[c][m] = decay * u_prev[c][m] + dt * phi1 * forcing[c][m];
    }
    out.solenoidal = u_prev.solenoidal && forcing.solenoidal;
    return out;
}

namespace {

std::vector<double> time_grid(const SchemeConfig& cfg) {
    const int N = cfg.steps();
    std::vector<double> t(std::size_t(N) + 1);
    for (int i = 0; i <= N; ++i) t[std::size_t(i)] = cfg.T * double(i) / double(N);
    return t;
}

VectorField midpoint_of(const VectorField& a, const VectorField& b) {
    VectorField out = a + b;
    out = 0.5 * out;
    out.solenoidal = a.solenoidal && b.solenoidal;
    return out;
}

void guard_blowup(const VectorField& u, const VectorField& b, double M, int iterate, double t) {
    const double cap = 1e6 * std::max(M, 1e-30);
    const double norm_u = l2_norm(u), norm_b = l2_norm(b);
    if (!(norm_u <= cap) || !(norm_b <= cap) || !std::isfinite(norm_u) || !std::isfinite(norm_b))
        throw std::runtime_error("picard_step: iterate " + std::to_string(iterate) +
                                 " diverged at t = " + std::to_string(t) + " (norm " +
                                 std::to_string(std::max(norm_u, norm_b)) + " exceeds 1e6 * M = " +
                                 std::to_string(cap) + ")");
}

double membership_M(const DyadicPartition& part, const SchemeConfig& cfg, const VectorField& u0,
                    const VectorField& b0) {
    if (cfg.regime == Regime::AlphaGE1) {
        const double su = 1.0 + 0.5 * cfg.d - 2.0 * cfg.alpha;
        const double sb = 1.0 + 0.5 * cfg.d - cfg.alpha;
        NormSpec nu_spec{su, 2.0, 1.0, Flavor::Homogeneous, std::nullopt};
        NormSpec nb_spec{sb, 2.0, 1.0, Flavor::Homogeneous, std::nullopt};
        return 2.0 * (besov_norm(part, u0, nu_spec) + besov_norm(part, b0, nb_spec));
    }
    NormSpec spec{cfg.sigma, 2.0, kInf, Flavor::Inhomogeneous, std::nullopt};
    const double base = pair_besov_norm(part, u0, b0, spec);
    const double c0 = dissipation_constant(part, cfg);
    return 2.0 * std::max(base, base / std::sqrt(c0));
}

}  // namespace

IterateState initial_iterate(const DyadicPartition& part, const VectorField& u0,
                             const VectorField& b0, const SchemeConfig& cfg) {
    cfg.validate();
    auto [u1, b1] = truncate_initial(part, u0, b0, 1, cfg.flavor());
    IterateState st;
    st.iteration_index = 1;
    st.u.times = st.b.times = time_grid(cfg);
    st.u.states.assign(st.u.times.size(), u1);
    st.b.states.assign(st.b.times.size(), b1);
    return st;
}

IterateState picard_step_ge1(const DyadicPartition& part, const IterateState& prev,
                             const VectorField& u0, const VectorField& b0,
                             const SchemeConfig& cfg) {
    cfg.validate();
    if (cfg.regime != Regime::AlphaGE1)
        throw std::invalid_argument("picard_step_ge1: config is for the coupled regime");
    prev.u.validate();
    const int N = cfg.steps();
    if (int(prev.u.samples()) != N + 1)
        throw std::invalid_argument("picard_step_ge1: previous iterate does not cover [0, T]");
    const int m_new = prev.iteration_index + 1;
    const double M = membership_M(part, cfg, u0, b0);
    const double dt = cfg.T / double(N);

    // lagged sources, fixed per instant of this sweep
    std::vector<VectorField> mag_source;    // b^(n) . grad u^(n)
    std::vector<VectorField> lorentz_raw;   // b^(n) . grad b^(n), projected later
    mag_source.reserve(std::size_t(N) + 1);
    lorentz_raw.reserve(std::size_t(N) + 1);
    for (int i = 0; i <= N; ++i) {
        const VectorField& up = prev.u.states[std::size_t(i)];
        const VectorField& bp = prev.b.states[std::size_t(i)];
        mag_source.push_back(advect(bp, up));
        lorentz_raw.push_back(advect(bp, bp));
    }

    auto [u_init, b_init] = truncate_initial(part, u0, b0, m_new - 1, cfg.flavor());
    IterateState next;
    next.iteration_index = m_new;
    next.u.times = next.b.times = prev.u.times;
    next.u.states.reserve(std::size_t(N) + 1);
    next.b.states.reserve(std::size_t(N) + 1);
    next.u.states.push_back(u_init);
    next.b.states.push_back(b_init);

    VectorField u_cur = u_init, b_cur = b_init;
    for (int i = 0; i < N; ++i) {
        const VectorField& up = prev.u.states[std::size_t(i)];
        const VectorField& up1 = prev.u.states[std::size_t(i) + 1];

        VectorField forcing = leray_project(lorentz_raw[std::size_t(i)] - advect(up, u_cur));
        VectorField u_next = velocity_substep(u_cur, forcing, cfg, dt);

        // explicit midpoint for the transport equation of b
        VectorField k1 = mag_source[std::size_t(i)] - advect(up, b_cur);
        VectorField b_half = b_cur + (0.5 * dt) * k1;
        VectorField up_mid = midpoint_of(up, up1);
        VectorField src_mid = midpoint_of(mag_source[std::size_t(i)], mag_source[std::size_t(i) + 1]);
        VectorField k2 = src_mid - advect(up_mid, b_half);
        VectorField b_next = b_cur + dt * k2;

        u_next = leray_project(u_next);
        b_next = leray_project(b_next);
        hermitian_symmetrize(u_next);
        hermitian_symmetrize(b_next);
        guard_blowup(u_next, b_next, M, m_new, next.u.times[std::size_t(i) + 1]);

        next.u.states.push_back(u_next);
        next.b.states.push_back(b_next);
        u_cur = std::move(u_next);
        b_cur = std::move(b_next);
    }
    return next;
}

IterateState picard_step_lt1(const DyadicPartition& part, const IterateState& prev,
                             const VectorField& u0, const VectorField& b0,
                             const SchemeConfig& cfg) {
    cfg.validate();
    if (cfg.regime != Regime::AlphaLT1)
        throw std::invalid_argument("picard_step_lt1: config is for the lagged regime");
    prev.u.validate();
    const int N = cfg.steps();
    if (int(prev.u.samples()) != N + 1)
        throw std::invalid_argument("picard_step_lt1: previous iterate does not cover [0, T]");
    const int m_new = prev.iteration_index + 1;
    const double M = membership_M(part, cfg, u0, b0);
    const double dt = cfg.T / double(N);

    auto [u_init, b_init] = truncate_initial(part, u0, b0, m_new - 1, cfg.flavor());
    IterateState next;
    next.iteration_index = m_new;
    next.u.times = next.b.times = prev.u.times;
    next.u.states.push_back(u_init);
    next.b.states.push_back(b_init);

    VectorField u_cur = u_init, b_cur = b_init;
    for (int i = 0; i < N; ++i) {
        const VectorField& up = prev.u.states[std::size_t(i)];
        const VectorField& bp = prev.b.states[std::size_t(i)];
        const VectorField up_mid = midpoint_of(up, prev.u.states[std::size_t(i) + 1]);
        const VectorField bp_mid = midpoint_of(bp, prev.b.states[std::size_t(i) + 1]);

        // both unknowns enter the forcings; they advance as one linear system
        VectorField forcing = leray_project(advect(bp, b_cur) - advect(up, u_cur));
        VectorField u_next = velocity_substep(u_cur, forcing, cfg, dt);
        VectorField u_half = midpoint_of(u_cur, u_next);

        VectorField k1 = advect(bp, u_cur) - advect(up, b_cur);
        VectorField b_half = b_cur + (0.5 * dt) * k1;
        VectorField k2 = advect(bp_mid, u_half) - advect(up_mid, b_half);
        VectorField b_next = b_cur + dt * k2;

        u_next = leray_project(u_next);
        b_next = leray_project(b_next);
        hermitian_symmetrize(u_next);
        hermitian_symmetrize(b_next);
        guard_blowup(u_next, b_next, M, m_new, next.u.times[std::size_t(i) + 1]);

        next.u.states.push_back(u_next);
        next.b.states.push_back(b_next);
        u_cur = std::move(u_next);
        b_cur = std::move(b_next);
    }
    return next;
}

IterateState picard_step(const DyadicPartition& part, const IterateState& prev,
                         const VectorField& u0, const VectorField& b0, const SchemeConfig& cfg) {
    return cfg.regime == Regime::AlphaGE1 ? picard_step_ge1(part, prev, u0, b0, cfg)
                                          : picard_step_lt1(part, prev, u0, b0, cfg);
}

YMembershipReport monitor_Y(const DyadicPartition& part, const IterateState& state,
                            const SchemeConfig& cfg, const VectorField& u0, const VectorField& b0) {
    cfg.validate();
    state.u.validate();
    state.b.validate();
    YMembershipReport rep;
    rep.regime = cfg.regime;
    rep.delta = cfg.delta;
    rep.M = membership_M(part, cfg, u0, b0);
    rep.C0 = dissipation_constant(part, cfg);

    auto record = [&rep](const std::string& name, double value, double bound) {
        rep.norms[name] = value;
        rep.bounds[name] = bound;
        rep.holds[name] = value <= bound;
    };

    if (cfg.regime == Regime::AlphaGE1) {
        const double su = 1.0 + 0.5 * cfg.d - 2.0 * cfg.alpha;
        const double sb = 1.0 + 0.5 * cfg.d - cfg.alpha;
        NormSpec linf_u{su, 2.0, 1.0, Flavor::Homogeneous, kInf};
        NormSpec linf_b{sb, 2.0, 1.0, Flavor::Homogeneous, kInf};
        NormSpec l1_u{1.0 + 0.5 * cfg.d, 2.0, 1.0, Flavor::Homogeneous, 1.0};
        NormSpec l2_u{sb, 2.0, 1.0, Flavor::Homogeneous, 2.0};
        record("u_Linf_Besov", chemin_lerner_norm(part, state.u, linf_u), rep.M);
        record("b_Linf_Besov", chemin_lerner_norm(part, state.b, linf_b), rep.M);
        record("u_L1_Besov", time_outer_besov_norm(part, state.u, l1_u), rep.delta);
        record("u_L2_Besov", chemin_lerner_norm(part, state.u, l2_u), rep.delta);
    } else {
        NormSpec linf_ub{cfg.sigma, 2.0, kInf, Flavor::Inhomogeneous, kInf};
        NormSpec l2_u{cfg.sigma + cfg.alpha, 2.0, kInf, Flavor::Inhomogeneous, 2.0};
        record("ub_Linf_Besov", pair_chemin_lerner_norm(part, state.u, state.b, linf_ub), rep.M);
        record("u_L2_Besov", chemin_lerner_norm(part, state.u, l2_u), rep.M);
    }
    rep.all_hold = true;
    for (const auto& [name, ok] : rep.holds) rep.all_hold = rep.all_hold && ok;
    return rep;
}

namespace {

double block_pair_integral(const DyadicPartition& part, const VectorField& advected,
                           const VectorField& paired, int j, Flavor flavor) {
    double acc = 0.0;
    for (int c = 0; c < advected.dim(); ++c)
        acc += inner_product(delta_j(part, advected[c], j, flavor),
                             delta_j(part, paired[c], j, flavor));
    return acc;
}

double wide_vector_l2(const DyadicPartition& part, const VectorField& f, int k, Flavor flavor) {
    double acc = 0.0;
    for (int c = 0; c < f.dim(); ++c) {
        const double n = l2_norm(delta_j_wide(part, f[c], k, flavor));
        acc += n * n;
    }
    return std::sqrt(acc);
}

}  // namespace

TermReport aprior_term_report(const DyadicPartition& part, const IterateState& state,
                              const IterateState& prev, const SchemeConfig& cfg, int j,
                              std::size_t t_index) {
    if (j < part.j_min(cfg.flavor()) || j > part.j_max())
        throw std::invalid_argument("aprior_term_report: block index out of the resolvable range");
    if (t_index >= state.u.samples() || t_index >= prev.u.samples())
        throw std::invalid_argument("aprior_term_report: instant not sampled by both iterates");
    const Flavor flavor = cfg.flavor();
    const int d = cfg.d;
    const int j_lo = part.j_min(flavor);
    const int j_hi = part.j_max();

    const VectorField& uc = state.u.states[t_index];
    const VectorField& bc = state.b.states[t_index];
    const VectorField& up = prev.u.states[t_index];
    const VectorField& bp = prev.b.states[t_index];

    const BlockProfile pu_c = block_l2_profile(part, uc, flavor);
    const BlockProfile pb_c = block_l2_profile(part, bc, flavor);
    const BlockProfile pu_p = block_l2_profile(part, up, flavor);
    const BlockProfile pb_p = block_l2_profile(part, bp, flavor);

    auto low = [&](const BlockProfile& p, double e) {
        double s = 0.0;
        for (int m = j_lo; m <= j - 1; ++m) s += std::pow(2.0, e * double(m)) * p.at(m);
        return s;
    };
    auto high = [&](const BlockProfile& pk, const VectorField& wide_of) {
        double s = 0.0;
        for (int k = std::max(j - 1, j_lo); k <= j_hi; ++k)
            s += std::pow(2.0, 0.5 * double(d) * double(k)) * pk.at(k) *
                 wide_vector_l2(part, wide_of, k, flavor);
        return std::ldexp(1.0, j) * s;
    };
    const double half_d = 0.5 * double(d);
    const double one_half_d = 1.0 + half_d;
    const double two_j = std::ldexp(1.0, j);

    TermReport rep;
    rep.j = j;
    rep.t = state.u.times[t_index];
    rep.block_u = pu_c.at(j);
    rep.block_b = pb_c.at(j);

    if (cfg.regime == Regime::AlphaGE1) {
        rep.terms["J1"] = pu_c.at(j) * low(pu_p, one_half_d);
        rep.terms["J2"] = pu_p.at(j) * low(pu_c, one_half_d);
        rep.terms["J3"] = high(pu_p, uc);
        rep.terms["J4"] = two_j * pb_p.at(j) * low(pb_p, half_d);
        rep.terms["J5"] = pb_p.at(j) * low(pb_p, one_half_d);
        rep.terms["J6"] = high(pb_p, bp);
        rep.terms["K1"] = pb_c.at(j) * low(pu_p, one_half_d);
        rep.terms["K2"] = pu_p.at(j) * low(pb_c, one_half_d);
        rep.terms["K3"] = high(pu_p, bc);  // wide factor on b^(n+1), block factor on u^(n)
        rep.terms["K4"] = two_j * pu_p.at(j) * low(pb_p, half_d);
        rep.terms["K5"] = pb_p.at(j) * low(pu_p, one_half_d);
        rep.terms["K6"] = high(pb_p, up);

        rep.transport_sum_u = -block_pair_integral(part, advect(up, uc), uc, j, flavor) +
                              block_pair_integral(part, advect(bp, bp), uc, j, flavor);
        rep.transport_sum_b = -block_pair_integral(part, advect(up, bc), bc, j, flavor) +
                              block_pair_integral(part, advect(bp, up), bc, j, flavor);
    } else {
        rep.terms["L1"] = pu_c.at(j) * pu_c.at(j) * low(pu_p, one_half_d);
        rep.terms["L2"] = pu_c.at(j) * pu_p.at(j) * low(pu_c, one_half_d);
        rep.terms["L3"] = pu_c.at(j) * high(pu_p, uc);
        rep.terms["L4"] = pb_c.at(j) * pb_c.at(j) * low(pu_p, one_half_d);
        rep.terms["L5"] = pb_c.at(j) * pu_p.at(j) * low(pb_c, one_half_d);
        rep.terms["L6"] = pb_c.at(j) * high(pu_p, bc);
        rep.terms["L7"] = pu_c.at(j) * pb_c.at(j) * low(pb_p, one_half_d);
        rep.terms["L8"] = pu_c.at(j) * pb_p.at(j) * low(pb_c, one_half_d);
        rep.terms["L9"] = pu_c.at(j) * high(pb_p, bc);
        rep.terms["L10"] = pb_c.at(j) * pb_p.at(j) * low(pu_c, one_half_d);
        rep.terms["L11"] = pb_c.at(j) * high(pb_p, uc);

        const double e1 = -2.0 * block_pair_integral(part, advect(up, uc), uc, j, flavor);
        const double e2 = -2.0 * block_pair_integral(part, advect(up, bc), bc, j, flavor);
        const double e3 = 2.0 * (block_pair_integral(part, advect(bp, bc), uc, j, flavor) +
                                 block_pair_integral(part, advect(bp, uc), bc, j, flavor));
        rep.transport_sum_u = e1 + e2 + e3;
        rep.transport_sum_b = 0.0;
    }

    // exact dissipation of the current block
    {
        double acc = 0.0;
        for (int c = 0; c < d; ++c) {
            const double nc = l2_norm(fractional_laplacian(delta_j(part, uc[c], j, flavor),
                                                           0.5 * cfg.alpha));
            acc += nc * nc;
        }
        rep.dissipation_u = cfg.nu * acc;
    }

    // centered finite differences of the squared block norms
    auto block_energy = [&](const FieldTrajectory& traj, std::size_t i) {
        const double v = block_l2_profile(part, traj.states[i], flavor).at(j);
        return v * v;
    };
    const double dt = state.u.dt();
    const std::size_t last = state.u.samples() - 1;
    auto fd = [&](const FieldTrajectory& traj) {
        if (t_index == 0) return (block_energy(traj, 1) - block_energy(traj, 0)) / dt;
        if (t_index == last) return (block_energy(traj, last) - block_energy(traj, last - 1)) / dt;
        return (block_energy(traj, t_index + 1) - block_energy(traj, t_index - 1)) / (2.0 * dt);
    };
    rep.denergy_u = 0.5 * fd(state.u);
    rep.denergy_b = 0.5 * fd(state.b);
    return rep;
}

PicardRun run_picard(const DyadicPartition& part, const VectorField& u0, const VectorField& b0,
                     const SchemeConfig& cfg) {
    cfg.validate();
    PicardRun run;
    IterateState prev_state = initial_iterate(part, u0, b0, cfg);
    {
        IterationRecord rec;
        rec.iterate = 1;
        rec.membership = monitor_Y(part, prev_state, cfg, u0, b0);
        run.iterations.push_back(std::move(rec));
    }

    NormSpec diff_spec_u, diff_spec_b;
    if (cfg.regime == Regime::AlphaGE1) {
        diff_spec_u = {1.0 + 0.5 * cfg.d - 2.0 * cfg.alpha, 2.0, 1.0, Flavor::Homogeneous, kInf};
        diff_spec_b = {1.0 + 0.5 * cfg.d - cfg.alpha, 2.0, 1.0, Flavor::Homogeneous, kInf};
    } else {
        diff_spec_u = {cfg.sigma, 2.0, kInf, Flavor::Inhomogeneous, kInf};
        diff_spec_b = diff_spec_u;
    }

    IterateState cur_state = prev_state;
    for (int m = 2; m <= cfg.n_iter; ++m) {
        IterateState next = picard_step(part, cur_state, u0, b0, cfg);
        FieldTrajectory du, db;
        du.times = db.times = next.u.times;
        for (std::size_t i = 0; i < next.u.samples(); ++i) {
            du.states.push_back(next.u.states[i] - cur_state.u.states[i]);
            db.states.push_back(next.b.states[i] - cur_state.b.states[i]);
        }
        IterationRecord rec;
        rec.iterate = m;
        rec.diff_u = chemin_lerner_norm(part, du, diff_spec_u);
        rec.diff_b = chemin_lerner_norm(part, db, diff_spec_b);
        rec.membership = monitor_Y(part, next, cfg, u0, b0);
        run.iterations.push_back(std::move(rec));

        prev_state = std::move(cur_state);
        cur_state = std::move(next);
    }
    run.previous_state = std::move(prev_state);
    run.final_state = std::move(cur_state);
    return run;
}

double choose_horizon(double measured_C, double M, double delta, Regime regime) {
    if (!(measured_C > 0.0) || !(M > 0.0)) return 1.0;
    if (regime == Regime::AlphaGE1)
        return std::min(1.0 / (4.0 * measured_C * M), delta / (2.0 * measured_C * M * M));
    const double root = 1.0 / (4.0 * measured_C * M);
    return root * root;
}

double choose_horizon_from_data(const DyadicPartition& part, const VectorField& u0,
                                const VectorField& b0, double measured_C,
                                const SchemeConfig& cfg) {
    const double C = std::max(measured_C, 1e-6);
    const double M = membership_M(part, cfg, u0, b0);
    const double delta = cfg.delta;
    const double d = double(cfg.d);
    const Flavor flavor = cfg.flavor();
    const double c0 = dissipation_constant(part, cfg);
    auto [u1, b1] = truncate_initial(part, u0, b0, 1, flavor);

    auto conditions_hold = [&](double T) {
        if (cfg.regime == Regime::AlphaGE1) {
            if (C * T * M > 0.25) return false;
            if (C * T * M * M > 0.5 * delta) return false;
            // first iterate: ||u1||_L1(B^{1+d/2}) = T ||S2 u0||, and the
            // L~2 norm sqrt(T) ||S2 u0||, both under delta/2
            NormSpec l1_spec{1.0 + 0.5 * d, 2.0, 1.0, Flavor::Homogeneous, std::nullopt};
            NormSpec l2_spec{1.0 + 0.5 * d - cfg.alpha, 2.0, 1.0, Flavor::Homogeneous,
                             std::nullopt};
            if (T * besov_norm(part, u1, l1_spec) > 0.5 * delta) return false;
            if (std::sqrt(T) * besov_norm(part, u1, l2_spec) > 0.5 * delta) return false;
            // dissipative decay of the data in the Duhamel terms
            const BlockProfile prof = block_l2_profile(part, u0, flavor);
            double heat_l1 = 0.0, heat_l2 = 0.0;
            for (int j = prof.j_lo; j <= prof.j_hi(); ++j) {
                const double lam = c0 * std::pow(2.0, 2.0 * cfg.alpha * double(j));
                heat_l1 += std::pow(2.0, (1.0 + 0.5 * d) * double(j)) *
                           (-std::expm1(-lam * T)) / lam * prof.at(j);
                heat_l2 += std::pow(2.0, (1.0 + 0.5 * d - cfg.alpha) * double(j)) *
                           std::sqrt(-std::expm1(-2.0 * lam * T) / (2.0 * lam)) * prof.at(j);
            }
            if (heat_l1 > 0.25 * delta || heat_l2 > 0.25 * delta) return false;
            return true;
        }
        if (C * std::sqrt(T) * M > 0.25) return false;
        NormSpec hi_spec{cfg.sigma + cfg.alpha, 2.0, kInf, Flavor::Inhomogeneous, std::nullopt};
        const double first = std::sqrt(T) * pair_besov_norm(part, u1, b1, hi_spec);
        return first <= M;
    };

    double T = 1.0;
    for (int halvings = 0; halvings < 60 && !conditions_hold(T); ++halvings) T *= 0.5;
    return T;
}

double fit_decay_ratio(const std::vector<double>& diffs) {
    double peak = 0.0;
    for (double d : diffs) peak = std::max(peak, d);
    if (peak == 0.0) return 0.0;
    std::vector<double> kept;
    for (double d : diffs)
        if (d > 1e-13 * peak) kept.push_back(d);
    if (kept.size() < 2) return 0.0;
    return std::pow(kept.back() / kept.front(), 1.0 / double(kept.size() - 1));
}

}  // namespace fracmhd

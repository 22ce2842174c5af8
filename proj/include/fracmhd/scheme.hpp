#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fracmhd/dyadic.hpp"
#include "fracmhd/field.hpp"
#include "fracmhd/norms.hpp"

namespace fracmhd {

enum class Regime { AlphaGE1, AlphaLT1 };

// Successive-approximation driver configuration. The two regimes run
// different couplings: AlphaGE1 lags the magnetic nonlinearity fully while
// AlphaLT1 advances (u,b) as one coupled linear system so the blockwise
// energy pairing cancels.
struct SchemeConfig {
    Regime regime = Regime::AlphaGE1;
    double alpha = 1.0;
    double nu = 1.0;
    int d = 2;
    int n = 64;
    double dt = 1.0 / 256.0;
    double T = 0.1;
    int n_iter = 6;
    double sigma = 0.0;  // regularity index, AlphaLT1 only
    double delta = 0.1;

    Flavor flavor() const {
        return regime == Regime::AlphaGE1 ? Flavor::Homogeneous : Flavor::Inhomogeneous;
    }
    int steps() const { return int(std::lround(T / dt)); }

    // Throws with a message naming the violated condition.
    void validate() const;
};

struct IterateState {
    FieldTrajectory u;
    FieldTrajectory b;
    int iteration_index = 1;  // iterate m starts from the S_m low-pass of the data
};

struct YMembershipReport {
    Regime regime = Regime::AlphaGE1;
    double M = 0.0;
    double delta = 0.0;
    double C0 = 0.0;
    std::map<std::string, double> norms;
    std::map<std::string, double> bounds;
    std::map<std::string, bool> holds;
    bool all_hold = false;
};

// Per-block dissipation ratios min_{k in block j} (|k| / 2^j)^(2*alpha); the
// global constant is the minimum over nonempty blocks.
struct DissipationReport {
    std::vector<std::pair<int, double>> per_j;
    double global = 0.0;
};
DissipationReport dissipation_ratios(const DyadicPartition& part, double alpha, Flavor flavor);

// C0 as used by the blockwise energy inequalities: nu * min_j ratio for the
// lagged regime, 2 * nu * min_j ratio for the coupled one (the factor two
// because the energy there is tracked unsquare-rooted).
double dissipation_constant(const DyadicPartition& part, const SchemeConfig& cfg);

// Low-pass truncation of both data fields with the S_{n+1} cutoff.
std::pair<VectorField, VectorField> truncate_initial(const DyadicPartition& part,
                                                     const VectorField& u0, const VectorField& b0,
                                                     int n, Flavor flavor);

// Exact per-mode integrating factor for the dissipative part, one
// exponential-quadrature stage for the (already projected) forcing:
//   u(k, t+dt) = e^(-nu |k|^2a dt) u(k,t) + dt phi1(nu |k|^2a dt) f(k)
VectorField velocity_substep(const VectorField& u_prev, const VectorField& forcing,
                             const SchemeConfig& cfg, double dt);

// First iterate: the time-constant S_2 cutoff of the data.
IterateState initial_iterate(const DyadicPartition& part, const VectorField& u0,
                             const VectorField& b0, const SchemeConfig& cfg);

IterateState picard_step_ge1(const DyadicPartition& part, const IterateState& prev,
                             const VectorField& u0, const VectorField& b0,
                             const SchemeConfig& cfg);
IterateState picard_step_lt1(const DyadicPartition& part, const IterateState& prev,
                             const VectorField& u0, const VectorField& b0,
                             const SchemeConfig& cfg);
IterateState picard_step(const DyadicPartition& part, const IterateState& prev,
                         const VectorField& u0, const VectorField& b0, const SchemeConfig& cfg);

YMembershipReport monitor_Y(const DyadicPartition& part, const IterateState& state,
                            const SchemeConfig& cfg, const VectorField& u0, const VectorField& b0);

// Named blockwise terms of the a priori energy inequalities at one block and
// instant, with unit constants, plus the exact transport quadratures and
// finite-difference energy derivatives they bound.
struct TermReport {
    int j = 0;
    double t = 0.0;
    std::map<std::string, double> terms;  // J1..J6 and K1..K6, or L1..L11
    double transport_sum_u = 0.0;         // A1+A2 (lagged) or E1+E2+E3 (coupled)
    double transport_sum_b = 0.0;         // B1+B2 (lagged only)
    double block_u = 0.0;                 // ||Delta_j u^{(m)}|| of the current iterate
    double block_b = 0.0;
    double dissipation_u = 0.0;           // nu ||Lambda^a Delta_j u||^2
    double denergy_u = 0.0;               // d/dt ||Delta_j u||^2 / 2, centered differences
    double denergy_b = 0.0;
};

TermReport aprior_term_report(const DyadicPartition& part, const IterateState& state,
                              const IterateState& prev, const SchemeConfig& cfg, int j,
                              std::size_t t_index);

// Full run: iterates until n_iter, recording successive-difference norms in
// the regime's monitored space and the Y membership per iteration.
struct IterationRecord {
    int iterate = 0;
    double diff_u = 0.0;  // ||u^(m) - u^(m-1)|| in the regime norm
    double diff_b = 0.0;
    YMembershipReport membership;
};

struct PicardRun {
    IterateState final_state;
    IterateState previous_state;  // next-to-last iterate, for difference diagnostics
    std::vector<IterationRecord> iterations;
};

PicardRun run_picard(const DyadicPartition& part, const VectorField& u0, const VectorField& b0,
                     const SchemeConfig& cfg);

// Smallness recipe: measured constant C from term-report ensembles turned
// into a horizon T with C*T*M <= 1/4 and C*T*M^2 <= delta/2 (lagged regime)
// or C*sqrt(T)*M <= 1/4 (coupled regime).
double choose_horizon(double measured_C, double M, double delta, Regime regime);

// Full recipe: the induction caps above plus the exactly computable
// data conditions (first-iterate norms and the dissipative decay terms of
// the Duhamel representation stay under their delta fractions). Solved by
// halving T until every condition holds.
double choose_horizon_from_data(const DyadicPartition& part, const VectorField& u0,
                                const VectorField& b0, double measured_C,
                                const SchemeConfig& cfg);

// Geometric decay fit: (D_last / D_first)^(1/(count-1)) over the recorded
// successive differences, ignoring values at the rounding floor.
double fit_decay_ratio(const std::vector<double>& diffs);

}  // namespace fracmhd

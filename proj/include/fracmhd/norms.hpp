#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fracmhd/dyadic.hpp"
#include "fracmhd/field.hpp"

namespace fracmhd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A Besov / Chemin-Lerner norm request: l^q over j of 2^(js) ||Delta_j f||_Lp,
// with an optional inner time exponent r for space-time trajectories.
struct NormSpec {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    Flavor flavor = Flavor::Inhomogeneous;
    std::optional<double> r;

    void validate() const {
        auto ok = [](double e) { return e >= 1.0; };
        if (!ok(p) || !ok(q) || (r && !ok(*r)))
            throw std::invalid_argument("NormSpec: exponents must lie in [1, inf]");
    }
};

// Uniformly sampled path t -> field on [0, T].
template <class FieldT>
struct Trajectory {
    std::vector<double> times;
    std::vector<FieldT> states;

    void validate() const {
        if (times.size() != states.size())
            throw std::invalid_argument("Trajectory: times/states out of step");
        if (times.size() < 2) throw std::invalid_argument("Trajectory: needs at least 2 samples");
        const double step = times[1] - times[0];
        if (!(step > 0.0)) throw std::invalid_argument("Trajectory: times must increase");
        for (std::size_t i = 1; i < times.size(); ++i) {
            const double h = times[i] - times[i - 1];
            if (std::fabs(h - step) > 1e-9 * std::max(1.0, std::fabs(step)))
                throw std::invalid_argument("Trajectory: spacing must be uniform");
        }
    }
    double dt() const { return times[1] - times[0]; }
    double horizon() const { return times.back() - times.front(); }
    std::size_t samples() const { return times.size(); }
};

using ScalarTrajectory = Trajectory<SpectralField>;
using FieldTrajectory = Trajectory<VectorField>;

// ---- instantaneous norms -------------------------------------------------

// Grid quadrature of |f|^p (padded for finite p != 2, max over the native
// grid for p = inf); exact via Parseval for p = 2.
double lebesgue_norm(const SpectralField& f, double p);

double besov_norm(const DyadicPartition& part, const SpectralField& f, const NormSpec& spec);
double besov_norm(const DyadicPartition& part, const VectorField& f, const NormSpec& spec);
// stacked (u,b) pair, blockwise l2 over all components
double pair_besov_norm(const DyadicPartition& part, const VectorField& u, const VectorField& b,
                       const NormSpec& spec);

// Truncation tail indicator 2^(j_max s) ||Delta_{j_max} f||_Lp.
double besov_tail_weight(const DyadicPartition& part, const SpectralField& f, const NormSpec& spec);

// ---- space-time norms ----------------------------------------------------

// Chemin-Lerner: inner time L^r per block, then 2^(js) weights, then l^q.
double chemin_lerner_norm(const DyadicPartition& part, const ScalarTrajectory& traj,
                          const NormSpec& spec);
double chemin_lerner_norm(const DyadicPartition& part, const FieldTrajectory& traj,
                          const NormSpec& spec);
double pair_chemin_lerner_norm(const DyadicPartition& part, const FieldTrajectory& u,
                               const FieldTrajectory& b, const NormSpec& spec);

// Standard ordering L^r(0,T; B^s_{p,q}): time L^r of the instantaneous norm.
double time_outer_besov_norm(const DyadicPartition& part, const ScalarTrajectory& traj,
                             const NormSpec& spec);
double time_outer_besov_norm(const DyadicPartition& part, const FieldTrajectory& traj,
                             const NormSpec& spec);

// Left-endpoint rectangle rule L^r norm of uniformly sampled values; r = inf
// is the max over samples.
double time_lr_norm(const std::vector<double>& values, double dt, double r);

}  // namespace fracmhd

#pragma once

#include <string>
#include <vector>

#include "fracmhd/dyadic.hpp"
#include "fracmhd/field.hpp"

namespace fracmhd {

// One inequality evaluation with the unspecified constant set to 1. The
// constants are treated as empirical throughout: checks assert finiteness
// and stability, never a particular value.
struct RatioReport {
    double lhs = 0.0;
    double rhs_unit_constant = 0.0;
    double ratio = 0.0;  // lhs / rhs, 0 when degenerate
    int j = 0;
    double ensemble_max_ratio = 0.0;  // filled by ensemble drivers
};

struct BernsteinReport {
    // ||(-Delta)^a f||_Lq <= C 2^(2aj + jd(1/p-1/q)) ||f||_Lp
    RatioReport upper;
    // C 2^(2aj) ||f||_Lq <= ||(-Delta)^a f||_Lq
    RatioReport lower;
    // modewise multiplier extremes (|k|/2^j)^(2a) over the filtered support;
    // for p = q = 2 both ratios are forced into [min, max]
    double forced_min = 0.0;
    double forced_max = 0.0;
};

// f is confined to the annulus of index j by pre-filtering with Delta~_j.
BernsteinReport bernstein_check(const DyadicPartition& part, const SpectralField& f, int j,
                                double alpha, double p, double q,
                                Flavor flavor = Flavor::Homogeneous);

enum class TripleVariant { A4, A5, A6 };

// Triple-product bounds for divergence-free F:
//   A4: |int Delta_j(F.grad G) . Delta_j H|
//   A5: the H = G case with its commutator-improved right side
//   A6: the symmetrized pair |int Delta_j(F.grad H).Delta_j G + int Delta_j(F.grad G).Delta_j H|
// The right side is the bracketed block-norm sum with C = 1.
RatioReport triple_product_bound_check(const DyadicPartition& part, const VectorField& F,
                                       const VectorField& G, const VectorField& H, int j,
                                       TripleVariant variant,
                                       Flavor flavor = Flavor::Inhomogeneous);

// | int S_j b . grad Delta_j f . Delta_j g + int S_j b . grad Delta_j g . Delta_j f |
// via alias-free quadrature; 0 for solenoidal b up to rounding.
double cancellation_check(const DyadicPartition& part, const VectorField& b,
                          const SpectralField& f, const SpectralField& g, int j,
                          Flavor flavor = Flavor::Inhomogeneous);

// Normalization scale ||Delta_j f|| ||Delta_j g|| ||S_j b||_inf + floor used to
// report cancellation residuals relative to the size of the integrands.
double cancellation_scale(const DyadicPartition& part, const VectorField& b,
                          const SpectralField& f, const SpectralField& g, int j,
                          Flavor flavor = Flavor::Inhomogeneous);

// ||fg||_{B'^{s1+s2-d/p}_{p,1}} <= C ||f||_{B'^{s1}_{p,1}} ||g||_{B'^{s2}_{p,1}}
// (homogeneous). Hypothesis s1,s2 <= d/p and s1+s2 > d max(0, 2/p - 1) is
// enforced; violations are rejected naming the failing condition.
RatioReport product_law_check(const DyadicPartition& part, const SpectralField& f,
                              const SpectralField& g, double s1, double s2, double p);

}  // namespace fracmhd

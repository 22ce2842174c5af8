#include <doctest.h>

#include "fracmhd/dyadic.hpp"
#include "test_util.hpp"

using namespace fracmhd;
using namespace testutil;

namespace {

// independent re-derivation of the bump at r = 1, frozen:
//   phi(1) = 1 - 1/(1 + e^(7/12)) = 0.64183404508873099
//   psi(1) =     1/(1 + e^(7/12)) = 0.35816595491126901
const double kPhi1 = 1.0 - 1.0 / (1.0 + std::exp(7.0 / 12.0));
const double kPsi1 = 1.0 / (1.0 + std::exp(7.0 / 12.0));

}  // namespace

TEST_CASE("partition of unity holds on dense radial samples") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);

    CHECK(part.phi(1.0) == doctest::Approx(0.64183404508873099).epsilon(1e-14));
    CHECK(part.psi(1.0) == doctest::Approx(0.35816595491126901).epsilon(1e-14));
    CHECK(part.phi(1.0) == doctest::Approx(kPhi1).epsilon(1e-15));
    CHECK(part.psi(1.0) == doctest::Approx(kPsi1).epsilon(1e-15));
    CHECK(part.phi(0.0) == 1.0);
    CHECK(part.psi(0.5) == 0.0);

    // supports
    CHECK(part.phi(4.0 / 3.0 + 1e-9) == 0.0);
    CHECK(part.psi(0.75 - 1e-9) == 0.0);
    CHECK(part.psi(8.0 / 3.0 + 1e-9) == 0.0);

    double worst_inhom = 0.0, worst_hom = 0.0;
    const double rmax = mode_table(grid).max_radius;
    for (int i = 0; i < 10000; ++i) {
        const double r = rmax * double(i) / 9999.0;
        double s = part.phi(r);
        for (int j = 0; j <= part.j_max() + 2; ++j) s += part.psi(std::ldexp(r, -j));
        worst_inhom = std::max(worst_inhom, std::fabs(s - 1.0));
        if (r >= 1.0) {
            double h = 0.0;
            for (int j = -60; j <= part.j_max() + 2; ++j) h += part.psi(std::ldexp(r, -j));
            worst_hom = std::max(worst_hom, std::fabs(h - 1.0));
        }
    }
    CHECK(worst_inhom < 1e-12);
    CHECK(worst_hom < 1e-12);
}

TEST_CASE("resolvable block range follows the annulus rule") {
    // largest j with 3*2^(j-2) <= (n/2) sqrt(2)
    Grid g64(2, 64);
    CHECK(DyadicPartition::build(g64).j_max() == 5);
    Grid g128(2, 128);
    CHECK(DyadicPartition::build(g128).j_max() == 6);
}

TEST_CASE("a |k| = 1 mode splits between the j = -1 and j = 0 blocks only") {
    Grid grid(2, 32);
    DyadicPartition part = DyadicPartition::build(grid);
    SpectralField f(grid);
    f.set_freq({1, 0, 0}, Complex(0.5, 0.0));
    f.set_freq({-1, 0, 0}, Complex(0.5, 0.0));

    const double wm1 = max_coeff_abs(delta_j(part, f, -1, Flavor::Inhomogeneous));
    const double w0 = max_coeff_abs(delta_j(part, f, 0, Flavor::Inhomogeneous));
    CHECK(wm1 == doctest::Approx(0.5 * kPhi1).epsilon(1e-13));
    CHECK(w0 == doctest::Approx(0.5 * kPsi1).epsilon(1e-13));
    CHECK(wm1 + w0 == doctest::Approx(0.5).epsilon(1e-13));
    for (int j = 1; j <= part.j_max(); ++j)
        CHECK(max_coeff_abs(delta_j(part, f, j, Flavor::Inhomogeneous)) == 0.0);
}

TEST_CASE("constant fields live entirely in the j = -1 block") {
    Grid grid(2, 16);
    DyadicPartition part = DyadicPartition::build(grid);
    SpectralField f(grid);
    f.set_freq({0, 0, 0}, Complex(2.0, 0.0));
    CHECK(max_coeff_diff(delta_j(part, f, -1, Flavor::Inhomogeneous), f) == 0.0);
    for (int j = 0; j <= part.j_max(); ++j)
        CHECK(max_coeff_abs(delta_j(part, f, j, Flavor::Inhomogeneous)) == 0.0);
    // below -1 the inhomogeneous block is the zero field, not an error
    CHECK(max_coeff_abs(delta_j(part, f, -2, Flavor::Inhomogeneous)) == 0.0);
    CHECK(max_coeff_abs(delta_j(part, f, -7, Flavor::Inhomogeneous)) == 0.0);
}

TEST_CASE("block sums reconstruct the field in both flavors") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(53);
    SpectralField f = random_real_field(grid, rng);
    f.set_freq({0, 0, 0}, Complex(0.7, 0.0));  // give the mean something to lose

    BlockedField inhom(part, f, Flavor::Inhomogeneous);
    CHECK(max_coeff_diff(inhom.reconstruct(), f) <= 1e-12 * max_coeff_abs(f));

    BlockedField hom(part, f, Flavor::Homogeneous);
    SpectralField zero_mean = f;
    zero_mean.set_freq({0, 0, 0}, Complex(0.0, 0.0));
    CHECK(max_coeff_diff(hom.reconstruct(), zero_mean) <= 1e-12 * max_coeff_abs(f));
}

TEST_CASE("low-pass cutoffs telescope against the blocks") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(59);
    SpectralField f = random_real_field(grid, rng);

    SUBCASE("s_0 of a constant is the constant") {
        SpectralField c(grid);
        c.set_freq({0, 0, 0}, Complex(1.5, 0.0));
        CHECK(max_coeff_diff(s_j(part, c, 0, Flavor::Inhomogeneous), c) == 0.0);
    }
    SUBCASE("s_j + high blocks = identity") {
        for (int j : {0, 2, 4}) {
            SpectralField acc = s_j(part, f, j, Flavor::Inhomogeneous);
            for (int k = j; k <= part.j_max(); ++k) acc += delta_j(part, f, k, Flavor::Inhomogeneous);
            CHECK(max_coeff_diff(acc, f) <= 1e-12 * max_coeff_abs(f));
        }
    }
    SUBCASE("s_j is the identity above the resolvable range") {
        CHECK(max_coeff_diff(s_j(part, f, part.j_max() + 1, Flavor::Inhomogeneous), f) <=
              1e-12 * max_coeff_abs(f));
    }
    SUBCASE("cutoff below a high mode annihilates it") {
        SpectralField hi(grid);
        hi.set_freq({16, 0, 0}, Complex(1.0, 0.0));
        hi.set_freq({-16, 0, 0}, Complex(1.0, 0.0));
        SpectralField low = s_j(part, hi, 3, Flavor::Inhomogeneous);
        CHECK(max_coeff_abs(low) == 0.0);
        CHECK(max_coeff_abs(delta_j(part, low, 4, Flavor::Inhomogeneous)) == 0.0);
    }
}

TEST_CASE("blocks two apart are orthogonal") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(61);
    SpectralField f = random_real_field(grid, rng);
    const double scale = l2_norm(f) * l2_norm(f);
    for (int j = -1; j <= part.j_max(); ++j)
        for (int k = j + 2; k <= part.j_max(); ++k) {
            const double ip = inner_product(delta_j(part, f, j, Flavor::Inhomogeneous),
                                            delta_j(part, f, k, Flavor::Inhomogeneous));
            CHECK(std::fabs(ip) <= 1e-13 * scale);
        }
}

TEST_CASE("wide blocks act as the identity on their center block") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(67);
    SpectralField f = random_real_field(grid, rng);
    for (int j = 0; j <= part.j_max(); ++j) {
        SpectralField narrow = delta_j(part, f, j, Flavor::Homogeneous);
        SpectralField round_trip = delta_j(part, delta_j_wide(part, f, j, Flavor::Homogeneous), j,
                                           Flavor::Homogeneous);
        CHECK(max_coeff_diff(narrow, round_trip) <= 1e-12 * (1.0 + max_coeff_abs(f)));
    }
}

TEST_CASE("Bony parts sum to the product when one factor is constant") {
    Grid grid(2, 32);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(71);
    SpectralField one(grid);
    one.set_freq({0, 0, 0}, Complex(1.0, 0.0));
    SpectralField g = random_real_field(grid, rng);

    BonyParts parts = bony_decompose(part, one, g);
    SpectralField sum = parts.low_high + parts.high_low + parts.high_high;
    CHECK(max_coeff_diff(sum, g) <= 1e-12 * max_coeff_abs(g));
}

TEST_CASE("far-separated modes interact only through the para parts") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    SpectralField f(grid), g(grid);
    f.set_freq({1, 0, 0}, Complex(0.5, 0.0));
    f.set_freq({-1, 0, 0}, Complex(0.5, 0.0));
    g.set_freq({16, 0, 0}, Complex(0.5, 0.0));
    g.set_freq({-16, 0, 0}, Complex(0.5, 0.0));

    BonyParts parts = bony_decompose(part, f, g);
    CHECK(max_coeff_abs(parts.high_high) <= 1e-14);
    SpectralField sum = parts.low_high + parts.high_low + parts.high_high;
    CHECK(max_coeff_diff(sum, dealiased_product(f, g)) <= 1e-13);
}

TEST_CASE("Bony parts sum to the dealiased product for random factors") {
    Grid grid(2, 64);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(73);
    SpectralField f = random_real_field(grid, rng);
    SpectralField g = random_real_field(grid, rng);

    BonyParts parts = bony_decompose(part, f, g);
    SpectralField sum = parts.low_high + parts.high_low + parts.high_high;
    SpectralField want = dealiased_product(f, g);
    CHECK(max_coeff_diff(sum, want) <= 1e-12 * (1.0 + max_coeff_abs(want)));
}

TEST_CASE("blocked fields cache and expose their source") {
    Grid grid(2, 32);
    DyadicPartition part = DyadicPartition::build(grid);
    Rng rng(79);
    SpectralField f = random_real_field(grid, rng);
    BlockedField blocks(part, f, Flavor::Inhomogeneous);
    const SpectralField& b0 = blocks.block(2);
    const SpectralField& b1 = blocks.block(2);
    CHECK(&b0 == &b1);  // cached, same object
    CHECK(max_coeff_diff(blocks.block(2), delta_j(part, f, 2, Flavor::Inhomogeneous)) == 0.0);
}

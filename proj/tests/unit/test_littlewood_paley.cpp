#include <cmath>
#include <numbers>

#include "doctest.h"
#include "mhd2d/errors.hpp"
#include "mhd2d/initial_conditions.hpp"
#include "mhd2d/littlewood_paley.hpp"
#include "mhd2d/spectral.hpp"
#include "oracles.hpp"

using namespace mhd2d;
using std::numbers::pi;

namespace {

// Test-side copy of the cutoff: 1 below 3/4, 0 above 1, exp(-1/t) blend.
double chi(double r) {
    if (r <= 0.75) return 1.0;
    if (r >= 1.0) return 0.0;
    const double t = (r - 0.75) / 0.25;
    const double a = std::exp(-1.0 / (1.0 - t));
    const double b = std::exp(-1.0 / t);
    return a / (a + b);
}

SpectralField single_mode(const GridSpec& g, int k1, int k2) {
    SpectralField F(g);
    F.at(k1, k2) = 0.5;
    F.at(-k1, -k2) += 0.5;
    return F;
}

double max_abs(const RealField& f) {
    double m = 0.0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

TEST_CASE("top shell index") {
    CHECK(DyadicFilterBank(GridSpec(64)).top_shell() == 5);
    CHECK(DyadicFilterBank(GridSpec(32)).top_shell() == 4);
    CHECK(DyadicFilterBank(GridSpec(256)).top_shell() == 7);
    CHECK(DyadicFilterBank(GridSpec(8)).top_shell() == 2);
    CHECK(build_filter_bank(GridSpec(64)).shell_count() == 7);
}

TEST_CASE("profiles match the cutoff construction") {
    const DyadicFilterBank bank(GridSpec(64));
    for (int k1 = -20; k1 <= 20; ++k1)
        for (int k2 = -20; k2 <= 20; ++k2) {
            const double r = std::hypot(k1, k2);
            CHECK(bank.multiplier_at(-1, k1, k2) == doctest::Approx(chi(r)).epsilon(1e-15));
            for (int j = 0; j < bank.top_shell(); ++j) {
                const double expect = chi(r / std::ldexp(2.0, j)) - chi(r / std::ldexp(1.0, j));
                const double m = bank.multiplier_at(j, k1, k2);
                CHECK(m == doctest::Approx(expect).epsilon(1e-15));
                CHECK(m >= 0.0);
                CHECK(m <= 1.0);
                // Phi_j(xi) = Phi_0(2^-j xi)
                CHECK(m == DyadicFilterBank::annulus(std::ldexp(r, -j)));
                if (m > 0.0) {
                    CHECK(r >= DyadicFilterBank::inner_radius(j));
                    CHECK(r <= DyadicFilterBank::outer_radius(j));
                }
            }
        }
}

TEST_CASE("partition of unity") {
    for (int n : {32, 64, 256}) {
        const DyadicFilterBank bank{GridSpec(n)};
        CHECK(bank.partition_defect() <= 1e-12);
    }
}

TEST_CASE("project_shell examples") {
    const GridSpec g(64);
    const DyadicFilterBank bank(g);
    const auto one = RealField::sample(g, [](double, double) { return 1.0; });
    CHECK(max_abs(project_shell(one, -1, bank) - one) < 1e-15);
    for (int j = 0; j <= bank.top_shell(); ++j) CHECK(max_abs(project_shell(one, j, bank)) == 0.0);

    // |k| = 5: shells with (3/4) 2^j <= 5 <= (8/3) 2^j are j = 1, 2
    const auto F = single_mode(g, 3, 4);
    double total = 0.0;
    for (int j = -1; j <= bank.top_shell(); ++j) {
        const double m = bank.multiplier_at(j, 3, 4);
        if (j != 1 && j != 2) CHECK(project_shell(F, j, bank).max_abs() == 0.0);
        total += m;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(bank.multiplier_at(1, 3, 4) + bank.multiplier_at(2, 3, 4) == doctest::Approx(1.0).epsilon(1e-15));

    // |k| = 2 sits where Phi_1 = 1
    CHECK(bank.multiplier_at(1, 2, 0) == 1.0);
    CHECK(bank.multiplier_at(0, 2, 0) == 0.0);

    CHECK_THROWS_AS(project_shell(F, -2, bank), ConfigError);
    CHECK_THROWS_AS(project_shell(F, bank.top_shell() + 1, bank), ConfigError);
}

TEST_CASE("partial sums and reconstruction") {
    const GridSpec g(64);
    const DyadicFilterBank bank(g);
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SpectralField F = random_annulus_field(g, 0.0, 0.75 * 32, 1.0, seed);
        F.at(0, 0) = 0.7;
        const RealField f = inverse(F);
        CHECK(max_abs(decompose(f, bank).reconstruct() - f) <= 1e-10 * max_abs(f));
        CHECK(max_abs(partial_sum(f, bank.top_shell() + 1, bank) - f) <= 1e-10 * max_abs(f));
    }
    const auto f = inverse(single_mode(g, 1, 0));
    CHECK(max_abs(partial_sum(f, 0, bank) - project_shell(f, -1, bank)) == 0.0);
    CHECK_THROWS_AS(partial_sum(f, -1, bank), ConfigError);
}

TEST_CASE("besov norm examples") {
    const GridSpec g(64);
    const DyadicFilterBank bank(g);
    CHECK(besov_norm(RealField(g), 1.0, 2.0, 1.0, bank) == 0.0);

    const auto one = RealField::sample(g, [](double, double) { return 1.0; });
    for (double p : {1.0, 2.0, 4.0})
        for (double qi : {1.0, 2.0, kInfinity})
            CHECK(besov_norm(one, 0.0, p, qi, bank) == doctest::Approx(std::pow(4 * pi * pi, 1.0 / p)).epsilon(1e-13));
    // the low block carries weight 2^{-s}
    CHECK(besov_norm(one, 1.5, 2.0, 1.0, bank) == doctest::Approx(std::exp2(-1.5) * 2 * pi).epsilon(1e-13));

    const auto F = single_mode(g, 3, 4);
    const auto f = inverse(F);
    const double expect = lq_norm(project_shell(f, 1, bank), 2.0) + lq_norm(project_shell(f, 2, bank), 2.0);
    CHECK(besov_norm(f, 0.0, 2.0, 1.0, bank) == doctest::Approx(expect).epsilon(1e-13));
    CHECK(besov_norm(f, 0.0, 2.0, 1.0, bank) == doctest::Approx(lq_norm(f, 2.0)).epsilon(1e-13));

    CHECK_THROWS_AS(besov_norm(f, 0.0, 0.5, 1.0, bank), ConfigError);
    CHECK_THROWS_AS(besov_norm(f, 0.0, 2.0, 0.0, bank), ConfigError);

    // rebuilding the bank reproduces the value
    const auto G = random_annulus_field(g, 0.0, 20.0, 1.0, 3);
    CHECK(std::abs(besov_norm(G, 1.2, 2.0, 1.0, bank) - besov_norm(G, 1.2, 2.0, 1.0, DyadicFilterBank(g))) <=
          1e-12 * besov_norm(G, 1.2, 2.0, 1.0, bank));
}

TEST_CASE("bernstein check basics") {
    const GridSpec g(64);
    const DyadicFilterBank bank(g);
    const auto f = inverse(random_annulus_field(g, 3.0, 10.0, 1.0, 5));
    const auto r0 = bernstein_check(f, 0.0, 2.0, 2.0, 2, bank);
    CHECK(r0.lower_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r0.upper_ratio == doctest::Approx(1.0).epsilon(1e-14));
    const auto r4 = bernstein_check(f, 0.0, 4.0, 4.0, 2, bank);
    CHECK(r4.lower_ratio == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(r4.l2_envelope_low.has_value());

    CHECK(is_shell_supported(forward(f), 2));
    CHECK_FALSE(is_shell_supported(forward(f), 0));
    CHECK_THROWS_AS(bernstein_check(f, 1.0, 2.0, 2.0, 0, bank), ConfigError);
    CHECK_THROWS_AS(bernstein_check(f, 1.0, 4.0, 2.0, 2, bank), ConfigError);
    CHECK_THROWS_AS(bernstein_check(f, -1.0, 2.0, 2.0, 2, bank), ConfigError);
}

TEST_CASE("bernstein L2 envelope on seeded shell fields") {
    const GridSpec g(64);
    const DyadicFilterBank bank(g);
    for (double alpha : {0.5, 1.0, 1.25})
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            const int j = static_cast<int>(seed % 6);
            const auto F = random_annulus_field(g, DyadicFilterBank::inner_radius(j), DyadicFilterBank::outer_radius(j),
                                                1.0, seed);
            const auto r = bernstein_check(inverse(F), alpha, 2.0, 2.0, j, bank);
            CHECK(r.within_l2_envelope(1e-10));
            CHECK(r.lower_ratio >= std::pow(0.75, 2 * alpha) - 1e-10);
            CHECK(r.lower_ratio <= std::pow(8.0 / 3.0, 2 * alpha) + 1e-10);
        }
}

TEST_CASE("bernstein p = 2, q = inf against a direct-sum oracle") {
    // n = 16 keeps the O(n^4) sums cheap. The envelope follows from
    // ||g||_inf <= sum |g_k| <= sqrt(N) (sum |g_k|^2)^(1/2) = sqrt(N) ||g||_2 / (2 pi)
    // and ||(-Lap)^a f||_2 <= ((8/3) 2^j)^(2a) ||f||_2, with N the lattice count of the annulus.
    const int n = 16;
    const GridSpec g(n);
    const DyadicFilterBank bank(g);
    const double h = 2 * pi / n;
    for (double alpha : {0.5, 1.0, 1.25})
        for (std::uint64_t seed = 1; seed <= 12; ++seed) {
            const int j = static_cast<int>(seed % 3);
            const double lo = DyadicFilterBank::inner_radius(j), hi = DyadicFilterBank::outer_radius(j);
            const RealField f = inverse(random_annulus_field(g, lo, hi, 1.0, 100 + seed));
            const auto report = bernstein_check(f, alpha, 2.0, kInfinity, j, bank);

            const auto c = oracle::direct_dft(n, [&](double x, double y) {
                return f(static_cast<int>(std::lround(x / h)), static_cast<int>(std::lround(y / h)));
            });
            const auto g_vals = oracle::synthesize(c, n, [&](int k1, int k2) {
                return std::pow(static_cast<double>(k1 * k1 + k2 * k2), alpha);
            });
            double sup = 0.0, sq = 0.0;
            for (double v : g_vals) sup = std::max(sup, std::abs(v));
            for (double v : f.values()) sq += v * v;
            const double l2 = std::sqrt(h * h * sq);
            const double expect = sup / (std::exp2(2 * alpha * j + j) * l2);
            CHECK(report.upper_ratio == doctest::Approx(expect).epsilon(1e-10));

            const int count = oracle::lattice_count(n, lo, hi);
            const double envelope = std::sqrt(count) * std::pow(8.0 / 3.0, 2 * alpha) / (2 * pi * std::exp2(j));
            CHECK(report.upper_ratio <= envelope);
        }
}

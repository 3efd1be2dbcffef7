#include <doctest.h>

#include "nlse/randomization.hpp"
#include "nlse/validation.hpp"

using namespace nlse;

TEST_CASE("unit partition reconstructs the identity") {
    const GridSpec g(1, 128, M_PI);
    const UnitPartition part = build_partition(g);
    const Field f = to_spectral(random_field(g, 1, 0));

    // Via the synthesis path (all coefficients one)...
    const Field rec = part.synthesize(f, [](std::size_t) { return 1.0; });
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(rec[i] - f[i]) <= 1e-10 * std::abs(f[i]) + 1e-300);

    // ...and by summing explicit block multipliers over a subrange.
    Field sum(g, Representation::spectral);
    for (int k = part.block_min(); k <= part.block_max(); ++k)
        sum = sum + part.apply_block(f, {k, 0, 0});
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(sum[i] - f[i]) <= 1e-10 * std::abs(f[i]) + 1e-300);
}

TEST_CASE("block weights and active block count") {
    const GridSpec g(1, 64, M_PI); // lattice spacing 1: one mode per unit block
    const UnitPartition part = build_partition(g);

    // A mode at the center of block k carries weight psi(0) in (0, 1].
    const std::array<int, 3> k{7, 0, 0};
    std::size_t site = 0;
    for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        if (g.wavenumber(idx[0]) == 7.0) site = flat;
    });
    const double w = part.site_weight(g.unflatten(site), k);
    CHECK(w > 0.0);
    CHECK(w <= 1.0);

    // Active blocks ~ wavenumber extent: [-N/2 - 1, N/2 - 1 + 1] ~ N + 3.
    CHECK(part.blocks_per_axis() >= g.points_per_axis());
    CHECK(part.blocks_per_axis() <= g.points_per_axis() + 4);
}

TEST_CASE("wiener samples: reconstruction, reproducibility, mean square") {
    const GridSpec g(1, 128, M_PI);
    const Field base = to_spectral(gaussian_datum(g, 1.0, 0.4));
    const RandomEnsemble ens(base, 99, 2000);

    const Field rec = wiener_reconstruct(ens);
    for (std::size_t i = 0; i < base.size(); ++i)
        CHECK(std::abs(rec[i] - base[i]) <= 1e-10 * std::abs(base[i]) + 1e-300);

    const Field s1 = wiener_sample(ens, 17);
    const Field s2 = wiener_sample(ens, 17);
    for (std::size_t i = 0; i < s1.size(); ++i) CHECK(s1[i] == s2[i]); // bit-identical
    const Field s3 = wiener_sample(ens, 18);
    CHECK(l2_norm(s1 - s3) > 0.0);

    // E ||f0^w||^2 = sum_k ||P_k f0||^2 within 3 Monte Carlo stderr.
    double target = 0.0;
    for (double m : ens.partition.block_masses(base)) target += m;
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < ens.samples; ++i) {
        const double v = l2_norm(wiener_sample(ens, i));
        mean += v * v;
        second += v * v * v * v;
    }
    mean /= double(ens.samples);
    second /= double(ens.samples);
    const double stderr_mean =
        std::sqrt(std::max(second - mean * mean, 0.0) / double(ens.samples));
    CHECK(std::abs(mean - target) <= 3.0 * stderr_mean);
}

TEST_CASE("strichartz tail: trivial survival and Rayleigh recovery") {
    const GridSpec g(1, 256, M_PI);
    Field single(g, Representation::spectral);
    std::size_t site = 0;
    for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        if (g.wavenumber(idx[0]) == 5.0) site = flat;
    });
    single[site] = 1.0;
    const RandomEnsemble ens(single, 7, 4000);

    const double s = 0.3, q = 4.0, r = 4.0, T = 1.0;
    TailReport rep = strichartz_tail(ens, s, q, r, T, {}, 17, 2);

    // lambda = 0 survives with probability one; survival is non-increasing.
    CHECK(double(std::count_if(rep.norms.begin(), rep.norms.end(),
                               [](double v) { return v > 0.0; })) == double(ens.samples));
    for (std::size_t i = 1; i < rep.survival.size(); ++i)
        CHECK(rep.survival[i] <= rep.survival[i - 1]);

    // Closed-form Rayleigh slope: -1 / (c^2 sum_k psi(xi0 - k)^2).
    double weight_sq = 0.0;
    for (double m : ens.partition.block_masses(single)) weight_sq += m;
    const Field filtered = apply_multiplier(single, symbols::bessel_power(s));
    TrajectoryRecord tr;
    for (int i = 0; i < 17; ++i)
        tr.push(T * i / 16.0, free_propagate(filtered, T * i / 16.0));
    const double c_det = spacetime_norm(tr, q, r);
    const double expected = -1.0 / (weight_sq * c_det * c_det);
    CHECK(std::abs(rep.slope - expected) < 0.05 * std::abs(expected));
    CHECK(rep.r_squared > 0.97);

    CHECK_THROWS_AS(strichartz_tail(ens, s, 1.0, r, T, {}, 17), DomainError);
    const RandomEnsemble tiny(single, 7, 10);
    CHECK_THROWS_AS(strichartz_tail(tiny, s, q, r, T, {}, 17), DomainError);
}

TEST_CASE("bilinear ratio: zero factor, homogeneity, error paths") {
    const GridSpec g(1, 128, M_PI);
    const Field u0 = to_spectral(random_field(g, 2, 0));
    Field zero(g, Representation::spectral);
    CHECK(bilinear_product_norm(u0, zero, 0.5, 9) == 0.0);
    CHECK(bilinear_ratio(u0, zero, 2.0, 8.0, 0.5, 9) == 0.0);

    const Field v0 = to_spectral(random_field(g, 3, 1));
    const double base = bilinear_ratio(u0, v0, 2.0, 8.0, 0.5, 9);
    const auto cu = std::complex<double>(0.0, 3.0) * u0;
    const auto cv = std::complex<double>(-0.5, 0.2) * v0;
    CHECK(bilinear_ratio(cu, cv, 2.0, 8.0, 0.5, 9) == doctest::Approx(base).epsilon(1e-12));

    CHECK_THROWS_AS(bilinear_check(g, 4.0, 8.0, 0.5, 2), DomainError);   // M < 4N
    CHECK_THROWS_AS(bilinear_check(g, 1.0, 40.0, 0.5, 2), DomainError);  // above Nyquist
    const GridSpec sparse(1, 16, 0.1); // mode spacing 10 pi: annulus [2, 8] is empty
    CHECK_THROWS_AS(bilinear_check(sparse, 1.0, 4.0, 0.5, 2), ResolutionError);
}

TEST_CASE("bilinear sweep statistics") {
    const GridSpec g(1, 256, M_PI);
    const BilinearReport rep = bilinear_check(g, 2.0, 16.0, 0.25, 4, 5, 65, 2);
    CHECK(rep.ratios.size() == 4);
    for (double v : rep.ratios) CHECK(v > 0.0);
    CHECK(rep.max_ratio >= rep.mean_ratio);
}

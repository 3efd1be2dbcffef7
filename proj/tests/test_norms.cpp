#include <doctest.h>

#include "nlse/norms.hpp"
#include "nlse/quadrature.hpp"
#include "nlse/validation.hpp"

using namespace nlse;

namespace {

Field plane_wave_1d(const GridSpec& g, double k0) {
    Field f(g, Representation::physical);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::exp(std::complex<double>(0.0, k0 * g.coordinate(i)));
    return f;
}

} // namespace

TEST_CASE("hs_norm examples") {
    const GridSpec g(1, 128, M_PI);
    const Field pw = plane_wave_1d(g, 3.0);
    const double s = 0.42;
    CHECK(hs_norm(pw, s) ==
          doctest::Approx(std::sqrt(2.0 * M_PI) * std::pow(1.0 + 9.0, 0.5 * s)).epsilon(1e-12));

    const Field rnd = random_field(g, 3, 0);
    CHECK(std::abs(hs_norm(rnd, 0.0) - l2_norm(rnd)) <= 1e-12 * l2_norm(rnd));

    // Two-mode field: direct two-term summation oracle.
    Field two(g, Representation::spectral);
    const std::complex<double> a{0.7, -0.2}, b{-1.1, 0.4};
    double xi1 = 0.0, xi2 = 0.0;
    for (std::size_t i = 0; i < two.size(); ++i) {
        if (g.signed_index(i) == 2) {
            two[i] = a;
            xi1 = g.wavenumber(i);
        }
        if (g.signed_index(i) == -7) {
            two[i] = b;
            xi2 = g.wavenumber(i);
        }
    }
    const double oracle = std::sqrt(std::pow(1.0 + xi1 * xi1, s) * std::norm(a) +
                                    std::pow(1.0 + xi2 * xi2, s) * std::norm(b));
    CHECK(hs_norm(two, s) == doctest::Approx(oracle).epsilon(1e-13));
}

TEST_CASE("hs_dot_norm examples") {
    const GridSpec g(1, 128, M_PI);
    Field c(g, Representation::physical);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = 2.5;
    CHECK(hs_dot_norm(c, 1.0) < 1e-12);
    CHECK(hs_dot_norm(c, 0.0) == doctest::Approx(l2_norm(c)).epsilon(1e-13));

    const Field pw = plane_wave_1d(g, 5.0);
    CHECK(hs_dot_norm(pw, 1.5) ==
          doctest::Approx(std::sqrt(2.0 * M_PI) * std::pow(5.0, 1.5)).epsilon(1e-12));

    const Field rnd = to_spectral(random_field(g, 4, 0));
    const Field lap = apply_multiplier(rnd, symbols::riesz_power(2.0));
    CHECK(hs_dot_norm(rnd, 2.0) == doctest::Approx(l2_norm(lap)).epsilon(1e-13));
}

TEST_CASE("lp_norm examples") {
    const GridSpec g(1, 256, M_PI);
    Field c(g, Representation::physical);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::complex<double>(0.0, -1.7);
    CHECK(lp_norm(c, 2.0) == doctest::Approx(1.7 * std::sqrt(2.0 * M_PI)).epsilon(1e-13));

    const Field pw = plane_wave_1d(g, 4.0);
    CHECK(lp_norm(pw, std::numeric_limits<double>::infinity()) == doctest::Approx(1.0));

    // Smoothed bump: rectangle rule against a high-resolution quadrature oracle.
    const CutoffProfile bump;
    Field f(g, Representation::physical);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = bump(std::abs(g.coordinate(i)) / 2.0);
    const double p = 3.0;
    const double oracle =
        std::pow(2.0 * gauss_legendre([&](double r) { return std::pow(bump(r / 2.0), p); },
                                      0.0, 2.0, 128),
                 1.0 / p);
    CHECK(lp_norm(f, p) == doctest::Approx(oracle).epsilon(1e-6));

    CHECK_THROWS_AS(lp_norm(f, 0.5), DomainError);
}

TEST_CASE("norm invariants: monotonicity, summation oracle, quadrature vs Parseval") {
    const GridSpec g(1, 128, 2.0);
    for (std::uint64_t i = 0; i < 20; ++i) {
        const Field f = random_field(g, 200 + i, i);
        CHECK(hs_norm(f, 0.3) <= hs_norm(f, 0.9) * (1.0 + 1e-12));
        CHECK(std::abs(lp_norm(f, 2.0) - hs_norm(f, 0.0)) <= 1e-10 * lp_norm(f, 2.0));

        const Field spec = to_spectral(f);
        double oracle = 0.0;
        for (std::size_t a = 0; a < g.points_per_axis(); ++a) {
            const double xi = g.wavenumber(a);
            oracle += std::pow(1.0 + xi * xi, 0.55) * std::norm(spec[a]);
        }
        const double norm = hs_norm(f, 0.55);
        CHECK(std::abs(norm * norm - oracle) <= 1e-12 * oracle);
    }
}

TEST_CASE("interpolation_check") {
    const GridSpec g(1, 128, M_PI);
    const Field pw = plane_wave_1d(g, 6.0);
    CHECK(interpolation_check(pw, 0.5).ratio == doctest::Approx(1.0).epsilon(1e-12));

    // s = 0: Cauchy-Schwarz ||f||_{H^1}^2 <= ||f||_{L^2} ||f||_{H^2}.
    const Field f = random_field(g, 9, 0);
    const auto rep = interpolation_check(f, 0.0);
    CHECK(rep.h1 * rep.h1 <= rep.hs * rep.h2 * (1.0 + 1e-9));

    for (std::uint64_t i = 0; i < 100; ++i)
        CHECK(interpolation_check(random_field(g, 300 + i, i), 0.35).ratio <= 1.0 + 1e-9);

    CHECK_THROWS_AS(interpolation_check(f, 1.0), DomainError);
    CHECK_THROWS_AS(interpolation_check(f, -0.1), DomainError);
}

#include <doctest.h>

#include "nlse/profiles.hpp"
#include "nlse/quadrature.hpp"

using namespace nlse;

TEST_CASE("cutoff profile shape") {
    const CutoffProfile phi;
    CHECK(phi(0.0) == 1.0);
    CHECK(phi(1.0) == 0.0);
    CHECK(phi(1.5) == 0.0);
    for (double r = 0.0; r < 1.2; r += 0.01) {
        CHECK(phi(r) >= 0.0);
        CHECK(phi(r) <= 1.0);
    }
    CHECK(phi(0.5) > phi(0.8)); // radially decreasing on these samples
}

TEST_CASE("mollifier unit integral and positivity") {
    SUBCASE("d = 1") {
        const Mollifier rho(1);
        const double total =
            2.0 * gauss_legendre([&](double r) { return rho.density(r); }, 0.0, 1.0, 128);
        CHECK(std::abs(total - 1.0) < 1e-10);
        for (double r = 0.0; r < 1.0; r += 0.05) {
            CHECK(rho.density(r) >= 0.0);
            CHECK(rho.density(r) <= 1.0);
        }
        CHECK(rho.density(1.01) == 0.0);
    }
    SUBCASE("d = 3") {
        const Mollifier rho(3);
        const double total =
            4.0 * M_PI *
            gauss_legendre([&](double r) { return rho.density(r) * r * r; }, 0.0, 1.0, 128);
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
    CHECK_THROWS_AS(Mollifier(2), DomainError);
}

TEST_CASE("mollifier transform against direct quadrature") {
    SUBCASE("d = 1: cosine transform") {
        const Mollifier rho(1);
        CHECK(std::abs(rho.hat(0.0) - 1.0) < 1e-12);
        for (double t : {0.3, 1.7, 6.0, 19.5, 80.0}) {
            const std::size_t panels = std::size_t(64 + t);
            const double direct = 2.0 * gauss_legendre(
                [&](double r) { return rho.density(r) * std::cos(t * r); }, 0.0, 1.0, panels);
            CHECK(std::abs(rho.hat(t) - direct) < 1e-10);
            CHECK(rho.hat(-t) == rho.hat(t)); // even symbol
        }
    }
    SUBCASE("d = 3: spherical transform") {
        const Mollifier rho(3);
        CHECK(std::abs(rho.hat(0.0) - 1.0) < 1e-12);
        for (double t : {0.4, 2.2, 9.0, 33.0, 150.0}) {
            const std::size_t panels = std::size_t(64 + t);
            const double direct =
                4.0 * M_PI *
                gauss_legendre(
                    [&](double r) {
                        const double tr = t * r;
                        return rho.density(r) * r * r * (tr == 0.0 ? 1.0 : std::sin(tr) / tr);
                    },
                    0.0, 1.0, panels);
            CHECK(std::abs(rho.hat(t) - direct) < 1e-10);
        }
    }
}

TEST_CASE("mollifier transform decays") {
    const Mollifier rho(3);
    CHECK(std::abs(rho.hat(200.0)) < 1e-7);
    CHECK(std::abs(rho.hat(3000.0)) < 1e-13);
    CHECK(rho.hat(50000.0) == 0.0); // beyond the table: identically zero
}

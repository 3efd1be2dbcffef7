#include <doctest.h>

#include "nlse/solver.hpp"
#include "nlse/validation.hpp"

using namespace nlse;

namespace {

ProblemParams problem_1d() {
    ProblemParams pp;
    pp.p = 3;
    pp.sigma = -1;
    pp.s = 0.3;
    pp.dimension = 1;
    return pp;
}

Field plane_wave(const GridSpec& g, double k0, std::complex<double> amplitude = 1.0) {
    Field f(g, Representation::physical);
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = amplitude * std::exp(std::complex<double>(0.0, k0 * g.coordinate(i)));
    return f;
}

} // namespace

TEST_CASE("free_propagate examples") {
    const GridSpec g(1, 128, M_PI);
    const Field f = random_field(g, 1, 0);

    const Field same = free_propagate(f, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(same[i] - f[i]) < 1e-15);

    const double t = 0.23;
    const Field pw = plane_wave(g, 5.0);
    const Field moved = free_propagate(pw, t);
    const auto phase = std::exp(std::complex<double>(0.0, -25.0 * t));
    for (std::size_t i = 0; i < pw.size(); ++i)
        CHECK(std::abs(moved[i] - phase * pw[i]) < 1e-12);

    const Field ab = free_propagate(free_propagate(f, 0.4), 0.6);
    const Field once = free_propagate(f, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(std::abs(ab[i] - once[i]) < 1e-12);

    for (double s : {0.0, 0.5, 1.7})
        CHECK(hs_norm(moved, s) == doctest::Approx(hs_norm(pw, s)).epsilon(1e-12));
}

TEST_CASE("ode_propagate examples") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 128, M_PI);

    Field c(g, Representation::physical);
    const std::complex<double> a{1.2, -0.5};
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a;
    const double t = 0.7;
    const Field ct = ode_propagate(c, t, pp);
    const auto expected =
        a * std::exp(std::complex<double>(0.0, pp.sigma * t * std::pow(std::abs(a), 2.0)));
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(ct[i] - expected) < 1e-14);

    const Field f = random_field(g, 2, 0);
    const Field ft = ode_propagate(f, 3.0, pp);
    for (double p : {1.0, 2.0, 4.0, std::numeric_limits<double>::infinity()})
        CHECK(lp_norm(ft, p) == doctest::Approx(lp_norm(f, p)).epsilon(1e-12));
}

TEST_CASE("strang_step: single-mode orbit, small-dt identity, zero fixed point") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 128, M_PI);
    SolverConfig cfg;

    // A plane wave is an exact orbit of both substeps, so the splitting
    // reproduces A e^{i(sigma |A|^{p-1} - k0^2) t} e^{i k0 x} to rounding.
    const double amp = 0.4, k0 = 3.0, dt = 0.01;
    Field u = plane_wave(g, k0, amp);
    const int steps = 50;
    for (int i = 0; i < steps; ++i) u = strang_step(u, dt, pp, cfg);
    const double t = dt * steps;
    const auto phase = std::exp(
        std::complex<double>(0.0, (pp.sigma * std::pow(amp, 2.0) - k0 * k0) * t));
    const Field exact = plane_wave(g, k0, amp * phase);
    for (std::size_t i = 0; i < u.size(); ++i) CHECK(std::abs(u[i] - exact[i]) < 1e-11);

    // dt -> 0 identity on band-limited data (the step includes the
    // dealias projection, which is idempotent on such fields).
    const Field f = to_physical(dealias_two_thirds(to_spectral(random_field(g, 3, 0))));
    const Field tiny = strang_step(f, 1e-300, pp, cfg);
    for (std::size_t i = 0; i < f.size(); ++i)
        CHECK(std::abs(tiny[i] - f[i]) <= 1e-12);

    Field zero(g, Representation::physical);
    const Field still = strang_step(zero, 0.1, pp, cfg);
    for (std::size_t i = 0; i < still.size(); ++i) CHECK(still[i] == std::complex<double>(0.0));

    // Guard: dt ||u||_inf^{p-1} > theta_max must be rejected.
    const Field big = plane_wave(g, 1.0, 10.0);
    CHECK_THROWS_AS(strang_step(big, 1.0, pp, cfg), StepSizeError);
}

TEST_CASE("evolve: conservation, free flight, dispersionless limit") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 512, M_PI);

    const ConservationCheck cons = conservation_check(g, pp);
    CHECK(cons.mass_drift < 1e-10);
    CHECK(cons.energy_drift < 1e-6);

    CHECK(free_flight_check(g) < 1e-10);
    CHECK(dispersionless_check(g, pp) < 1e-10);
}

TEST_CASE("evolve: second order and reversibility") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 512, M_PI);
    const double order = splitting_order_check(g, pp);
    CHECK(order >= 1.8);
    CHECK(order <= 2.2);
    CHECK(reversibility_check(g, pp) < 1e-8);
}

TEST_CASE("evolve: stiffness abort leaves a partial trajectory") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 64, M_PI);
    const Field f0 = plane_wave(g, 1.0, 1e8); // guard forces dt below the floor
    SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt = 0.25;
    cfg.snapshots = 5;
    const EvolveResult res = evolve(f0, cfg, pp);
    CHECK_FALSE(res.completed);
    CHECK(res.trajectory.size() >= 1); // initial snapshot is always recorded
    CHECK(res.trajectory.size() < 5);
}

TEST_CASE("mass and energy examples") {
    const ProblemParams pp = problem_1d();
    const GridSpec g(1, 128, M_PI);

    const Field pw = plane_wave(g, 4.0);
    CHECK(mass(pw) == doctest::Approx(0.5 * 2.0 * M_PI).epsilon(1e-12));

    Field zero(g, Representation::physical);
    CHECK(mass(zero) == 0.0);
    CHECK(energy(zero, pp) == 0.0);

    // Defocusing energy is a sum of nonnegative terms.
    for (std::uint64_t i = 0; i < 10; ++i)
        CHECK(energy(random_field(g, 40 + i, i), pp) >= 0.0);
}

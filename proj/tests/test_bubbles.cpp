#include <doctest.h>

#include "nlse/bubbles.hpp"
#include "nlse/fit.hpp"
#include "nlse/norms.hpp"
#include "nlse/quadrature.hpp"

using namespace nlse;

namespace {

ProblemParams problem_1d() {
    ProblemParams pp;
    pp.p = 3;
    pp.sigma = 1;
    pp.s = 0.3;
    pp.dimension = 1;
    return pp;
}

// || |grad|^0 phi ||_{L^2(R^d)} by high-resolution radial quadrature.
double phi_l2(int d) {
    const CutoffProfile phi;
    if (d == 1)
        return std::sqrt(2.0 *
                         gauss_legendre([&](double r) { return phi(r) * phi(r); }, 0, 1, 128));
    return std::sqrt(4.0 * M_PI * gauss_legendre([&](double r) { return phi(r) * phi(r) * r * r; },
                                                 0, 1, 128));
}

} // namespace

TEST_CASE("ode_phase") {
    CHECK(ode_phase(0.0, 1) == std::complex<double>(1.0, 0.0)); // V(0) = 1
    for (double t : {0.1, 2.0, -7.5, 100.0})
        CHECK(std::abs(ode_phase(t, -1)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ode_phase(M_PI / 2.0, 1).imag() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(ode_phase(M_PI / 2.0, 1).real()) < 1e-15);
}

TEST_CASE("bubble_initial: peak, L2 scaling, invariance at s = d/2") {
    const ProblemParams pp = problem_1d();
    const CutoffProfile phi;
    const GridSpec g(1, 2048, 0.25);

    const BubbleParams bp(16.0, 0.05, 0.12, pp);
    const Field v = bubble_initial(pp, bp, phi, g);
    const double amp = bp.kappa() * std::pow(16.0, 0.5 - pp.s);
    CHECK(std::abs(lp_norm(v, std::numeric_limits<double>::infinity()) - amp) < 1e-10 * amp);

    // hs_dot_norm(., 0) = kappa n^{-s} ||phi||_{L^2} after the rescaling
    // change of variables; oracle is high-resolution quadrature.
    CHECK(hs_dot_norm(v, 0.0) ==
          doctest::Approx(bp.kappa() * std::pow(16.0, -pp.s) * phi_l2(1)).epsilon(1e-8));

    // At the scaling-invariant index m = s (here s = d/2), doubling n
    // leaves the seminorm unchanged up to the kappa ratio.
    ProblemParams pp_half = pp;
    pp_half.s = 0.5 - 1e-9;
    const GridSpec wide(1, 4096, 1.0);
    const BubbleParams b1(64.0, 0.05, 0.12, pp_half), b2(128.0, 0.05, 0.12, pp_half);
    const double n1 = hs_dot_norm(bubble_initial(pp_half, b1, phi, wide), pp_half.s) / b1.kappa();
    const double n2 = hs_dot_norm(bubble_initial(pp_half, b2, phi, wide), pp_half.s) / b2.kappa();
    CHECK(n1 == doctest::Approx(n2).epsilon(1e-3));
}

TEST_CASE("bubble_initial error paths") {
    const ProblemParams pp = problem_1d();
    const CutoffProfile phi;
    // h = 1/(8n) needs n <= N/(16 L): here N = 64, L = 0.25 -> n <= 16.
    const GridSpec coarse(1, 64, 0.25);
    CHECK_THROWS_AS(bubble_initial(pp, BubbleParams(64.0, 0.05, 0.12, pp), phi, coarse),
                    ResolutionError);
    const GridSpec fine(1, 4096, 0.25);
    CHECK_THROWS_AS(
        bubble_initial(pp, BubbleParams(8.0, 0.05, 0.12, pp), phi, fine, {0.2, 0.0, 0.0}),
        GeometryError);
}

TEST_CASE("bubble parameter schedule invariants") {
    const ProblemParams pp = problem_1d();
    CHECK_THROWS_AS(BubbleParams(2.0, 0.05, 0.12, pp), DomainError);  // n < e
    CHECK_THROWS_AS(BubbleParams(8.0, 0.2, 0.12, pp), DomainError);   // gamma > beta
    CHECK_THROWS_AS(BubbleParams(8.0, 0.05, 0.3, pp), DomainError);   // (p-1) beta >= 1/2
    CHECK_THROWS_AS(BubbleParams(8.0, 0.11, 0.2, pp), DomainError);   // gamma >= beta/2
    const BubbleParams bp(20.0, 0.05, 0.12, pp);
    CHECK(bp.eps() * bp.n == doctest::Approx(0.01).epsilon(1e-15));
    CHECK(bp.t(pp) * bp.lambda(pp) * bp.lambda(pp) ==
          doctest::Approx(bp.winding(pp)).epsilon(1e-12));
    CHECK(bp.winding(pp) >= 1.0);
}

TEST_CASE("mollify examples") {
    const ProblemParams pp = problem_1d();
    const Mollifier rho(1);
    const GridSpec g(1, 512, M_PI);

    Field c(g, Representation::physical);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::complex<double>(1.3, -0.4);
    const Field cm = mollify(c, rho, 0.7);
    for (std::size_t i = 0; i < c.size(); ++i) CHECK(std::abs(cm[i] - c[i]) < 1e-12);

    Field pw(g, Representation::physical);
    for (std::size_t i = 0; i < pw.size(); ++i)
        pw[i] = std::exp(std::complex<double>(0.0, 6.0 * g.coordinate(i)));
    const double eps = 0.21;
    const Field pwm = mollify(pw, rho, eps);
    const double factor = rho.hat(eps * 6.0);
    for (std::size_t i = 0; i < pw.size(); ++i)
        CHECK(std::abs(pwm[i] - factor * pw[i]) < 1e-12);

    const Field f = bubble_initial(pp, BubbleParams(8.0, 0.05, 0.12, pp), CutoffProfile{},
                                   GridSpec(1, 512, 0.25));
    const Field same = mollify(f, rho, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(same[i] == f[i]);
    CHECK_THROWS_AS(mollify(f, rho, -1e-3), DomainError);
}

TEST_CASE("bubble_ode_evolved examples") {
    const ProblemParams pp = problem_1d();
    const CutoffProfile phi;
    const Mollifier rho(1);
    const GridSpec g(1, 2048, 0.25);
    const BubbleParams bp(16.0, 0.05, 0.12, pp);

    const Field v0 = mollify(bubble_initial(pp, bp, phi, g), rho, bp.eps());
    const Field at0 = bubble_ode_evolved(pp, bp, phi, rho, g, {0, 0, 0}, bp.eps(), 0.0);
    for (std::size_t i = 0; i < v0.size(); ++i) CHECK(std::abs(at0[i] - v0[i]) < 1e-14);

    const Field at_t = bubble_ode_evolved(pp, bp, phi, rho, g, {0, 0, 0}, bp.eps(), bp.t(pp));
    for (std::size_t i = 0; i < v0.size(); ++i)
        CHECK(std::abs(std::abs(at_t[i]) - std::abs(v0[i])) <= 1e-14 * std::abs(v0[i]) + 1e-300);
    CHECK(std::abs(l2_norm(at_t) - l2_norm(v0)) <= 1e-12 * l2_norm(v0));
    for (double p : {1.0, 3.0, 7.0})
        CHECK(lp_norm(at_t, p) == doctest::Approx(lp_norm(v0, p)).epsilon(1e-12));
}

TEST_CASE("scaling exponent of the unmollified bubble") {
    const ProblemParams pp = problem_1d();
    const CutoffProfile phi;
    const GridSpec g(1, 4096, 0.25);
    const std::vector<double> ns = {8, 16, 32};
    for (double m : {0.0, 1.0, 2.0}) {
        std::vector<double> xs, ys;
        for (double n : ns) {
            const BubbleParams bp(n, 0.05, 0.12, pp);
            xs.push_back(std::log(n));
            ys.push_back(std::log(hs_dot_norm(bubble_initial(pp, bp, phi, g), m) / bp.kappa()));
        }
        const LineFit fit = fit_line(xs, ys);
        CHECK(std::abs(fit.slope - (m - pp.s)) < 0.05);
    }
}

TEST_CASE("mollifier smoothing exponent") {
    const ProblemParams pp = problem_1d();
    const CutoffProfile phi;
    const Mollifier rho(1);
    const GridSpec g(1, 4096, 1.2);
    const double n = 64.0;
    const BubbleParams bp(n, 0.05, 0.12, pp);
    const Field v0 = bubble_initial(pp, bp, phi, g);
    for (double m : {1.0, 2.0}) {
        std::vector<double> xs, ys;
        for (double en = 4.0; en <= 64.0; en *= 2.0) {
            xs.push_back(std::log(en));
            ys.push_back(std::log(hs_dot_norm(mollify(v0, rho, en / n), m)));
        }
        const LineFit fit = fit_line(xs, ys);
        const double target = -(m + 0.5);
        CHECK(std::abs(fit.slope - target) < 0.1 * std::abs(target));
    }
}

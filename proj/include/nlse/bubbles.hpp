#pragma once

// Single-bubble constructions: the concentrated profile
//   v_n(0,x) = kappa_n n^{d/2-s} phi(n (x - center)),
// its mollification by rho_eps (spectral multiplication by rho_hat(eps xi),
// i.e. the exact continuum convolution of the periodized field), and the
// phase-winding evolution under the dispersionless ODE.

#include <complex>

#include "nlse/field.hpp"
#include "nlse/multipliers.hpp"
#include "nlse/params.hpp"
#include "nlse/profiles.hpp"

namespace nlse {

// Exact solution V(t) = e^{i sigma t} of i V' + sigma |V|^{p-1} V = 0,
// V(0) = 1; modulus exactly one.
inline std::complex<double> ode_phase(double t, int sigma) {
    return std::exp(std::complex<double>(0.0, double(sigma) * t));
}

namespace detail {

inline void check_bubble_geometry(const GridSpec& grid, double n,
                                  const std::array<double, 3>& center,
                                  double fattening) {
    if (grid.spacing() > 1.0 / (8.0 * n) + 1e-12)
        throw ResolutionError("bubble: grid spacing exceeds 1/(8n)");
    const double radius = 1.0 / n + fattening;
    for (int ax = 0; ax < grid.dimension(); ++ax) {
        const double c = center[std::size_t(ax)];
        if (c - radius < -grid.half_width() || c + radius > grid.half_width())
            throw GeometryError("bubble: support escapes the box");
    }
}

} // namespace detail

inline Field bubble_initial(const ProblemParams& pp, const BubbleParams& bp,
                            const CutoffProfile& phi, const GridSpec& grid,
                            const std::array<double, 3>& center = {0.0, 0.0, 0.0}) {
    detail::check_bubble_geometry(grid, bp.n, center, 0.0);
    const double amplitude = bp.kappa() * std::pow(bp.n, 0.5 * grid.dimension() - pp.s);
    Field out(grid, Representation::physical);
    for_each_site(grid, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        const auto x = grid.position(idx);
        double r2 = 0.0;
        for (int ax = 0; ax < grid.dimension(); ++ax) {
            const double dx = bp.n * (x[std::size_t(ax)] - center[std::size_t(ax)]);
            r2 += dx * dx;
        }
        out[flat] = amplitude * phi(std::sqrt(r2));
    });
    return out;
}

// Convolution with rho_eps as a Fourier multiplier rho_hat(eps |xi|);
// eps = 0 is the identity and the zero mode is always untouched.
inline Field mollify(const Field& f, const Mollifier& rho, double eps) {
    if (eps < 0.0) throw DomainError("mollify: eps must be >= 0");
    if (eps == 0.0) return f;
    const bool was_physical = f.is_physical();
    Field out = apply_multiplier(as_spectral(f), [&](const Wavevector& w) {
        return std::complex<double>(rho.hat(eps * w.norm()), 0.0);
    });
    return was_physical ? to_physical(out) : out;
}

// v_n^eps(t,x) = v0(x) V(t |v0(x)|^{p-1}) with v0 the mollified bubble;
// the pointwise modulus is invariant in t.
inline Field bubble_ode_evolved(const ProblemParams& pp, const BubbleParams& bp,
                                const CutoffProfile& phi, const Mollifier& rho,
                                const GridSpec& grid, const std::array<double, 3>& center,
                                double eps, double t) {
    detail::check_bubble_geometry(grid, bp.n, center, eps);
    Field v0 = mollify(bubble_initial(pp, bp, phi, grid, center), rho, eps);
    Field out = as_physical(v0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mod = std::abs(out[i]);
        out[i] *= ode_phase(t * std::pow(mod, double(pp.p - 1)), pp.sigma);
    }
    return out;
}

} // namespace nlse

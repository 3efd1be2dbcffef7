#pragma once

// Solver and substrate oracle checks: the gate that must pass before the
// physics experiments are trusted. Each check returns its measured error
// so callers can report numbers, not just booleans.

#include "nlse/bubbles.hpp"
#include "nlse/parallel.hpp"
#include "nlse/rng.hpp"
#include "nlse/solver.hpp"

namespace nlse {

// Reproducible noise field. Uniform components from a splitmix64 site
// hash are enough here; the big validation grids make per-site Gaussians
// needlessly expensive.
inline Field random_field(const GridSpec& grid, std::uint64_t seed, std::uint64_t tag) {
    Field f(grid, Representation::physical, uninitialized);
    const std::uint64_t base = seed * 0x9E3779B97F4A7C15ull + tag;
    for (std::size_t i = 0; i < f.size(); ++i) {
        std::uint64_t z = base + (i + 1) * 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        z ^= z >> 31;
        f[i] = {double(std::uint32_t(z)) * 0x1p-31 - 1.0,
                double(std::uint32_t(z >> 32)) * 0x1p-31 - 1.0};
    }
    return f;
}

// Smooth localized datum used by the solver oracles (periodically smooth
// to machine precision for width << L).
inline Field gaussian_datum(const GridSpec& grid, double amplitude, double width) {
    Field f(grid, Representation::physical);
    for_each_site(grid, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        const auto x = grid.position(idx);
        double r2 = 0.0;
        for (int ax = 0; ax < grid.dimension(); ++ax)
            r2 += x[std::size_t(ax)] * x[std::size_t(ax)];
        f[flat] = amplitude * std::exp(-r2 / (2.0 * width * width));
    });
    return f;
}

struct SpectralCheck {
    double max_roundtrip = 0.0; // relative l2 error of to_physical(to_spectral(f))
    double max_parseval = 0.0;  // relative mismatch of physical vs spectral l2
};

inline SpectralCheck spectral_substrate_check(const GridSpec& grid, std::size_t fields,
                                              std::uint64_t seed, unsigned threads = 1) {
    std::vector<SpectralCheck> per(fields);
    parallel_for(fields, threads, [&](std::size_t i) {
        const Field f = random_field(grid, seed, i);
        const Field spec = to_spectral(f);
        const Field back = to_physical(spec);
        const double ref = l2_norm(f);
        double diff2 = 0.0;
        for (std::size_t m = 0; m < f.size(); ++m) diff2 += std::norm(back[m] - f[m]);
        per[i].max_roundtrip =
            std::sqrt(diff2 * std::pow(grid.spacing(), grid.dimension())) / ref;
        per[i].max_parseval = std::abs(l2_norm(spec) - ref) / ref;
    });
    SpectralCheck worst;
    for (const auto& c : per) {
        worst.max_roundtrip = std::max(worst.max_roundtrip, c.max_roundtrip);
        worst.max_parseval = std::max(worst.max_parseval, c.max_parseval);
    }
    return worst;
}

// evolve with the Laplacian switched off must match the exact ODE flow.
inline double dispersionless_check(const GridSpec& grid, const ProblemParams& pp) {
    const Field f0 = gaussian_datum(grid, 1.0, 0.5);
    SolverConfig cfg;
    cfg.dispersion = false;
    cfg.dealias = Dealias::off;
    cfg.t_end = 0.5;
    cfg.dt = 0.5 / 64.0;
    cfg.snapshots = 9;
    const double ref = l2_norm(f0);
    double worst = 0.0;
    evolve(f0, cfg, pp, [&](double t, const Field& u) {
        const Field exact = ode_propagate(f0, t, pp);
        double diff2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) diff2 += std::norm(u[i] - exact[i]);
        worst = std::max(worst,
                         std::sqrt(diff2 * std::pow(grid.spacing(), grid.dimension())) / ref);
    });
    return worst;
}

struct ConservationCheck {
    double mass_drift = 0.0;
    double energy_drift = 0.0;
};

inline ConservationCheck conservation_check(const GridSpec& grid, const ProblemParams& pp,
                                            double t_end = 0.5, double dt = 1e-3) {
    const Field f0 = gaussian_datum(grid, 0.75, 0.5);
    SolverConfig cfg;
    cfg.t_end = t_end;
    cfg.dt = dt;
    cfg.snapshots = 17;
    cfg.store_fields = false;
    const EvolveResult r = evolve(f0, cfg, pp);
    return {r.conservation.mass_drift(), r.conservation.energy_drift()};
}

// Global-error convergence order from a dt-refinement study against a
// dt/8 reference; second-order splitting should land in [1.8, 2.2].
inline double splitting_order_check(const GridSpec& grid, const ProblemParams& pp,
                                    double t_end = 0.5) {
    const Field f0 = gaussian_datum(grid, 1.0, 0.8);
    auto terminal = [&](double dt) {
        SolverConfig cfg;
        cfg.t_end = t_end;
        cfg.dt = dt;
        cfg.snapshots = 2;
        cfg.store_fields = true;
        const EvolveResult r = evolve(f0, cfg, pp);
        return r.trajectory.snapshot(r.trajectory.size() - 1);
    };
    const Field ref = terminal(t_end / 256.0);
    auto err = [&](const Field& u) {
        double acc = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) acc += std::norm(u[i] - ref[i]);
        return std::sqrt(acc * std::pow(grid.spacing(), grid.dimension()));
    };
    const double e1 = err(terminal(t_end / 32.0));
    const double e2 = err(terminal(t_end / 64.0));
    return std::log2(e1 / e2);
}

// Forward T, conjugate, forward T, conjugate: time reversal of NLS. The
// symmetric splitting is reversible to rounding; the dealias projection is
// not part of that symmetry, so the check runs with it off.
inline double reversibility_check(const GridSpec& grid, const ProblemParams& pp,
                                  double t_end = 0.25, double dt = 1e-3) {
    const Field f0 = gaussian_datum(grid, 1.0, 0.8);
    SolverConfig cfg;
    cfg.t_end = t_end;
    cfg.dt = dt;
    cfg.snapshots = 2;
    cfg.dealias = Dealias::off;
    auto conjugate = [](Field f) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::conj(f[i]);
        return f;
    };
    const EvolveResult fwd = evolve(f0, cfg, pp);
    const Field mid = conjugate(fwd.trajectory.snapshot(fwd.trajectory.size() - 1));
    const EvolveResult bwd = evolve(mid, cfg, pp);
    const Field back = conjugate(bwd.trajectory.snapshot(bwd.trajectory.size() - 1));
    double acc = 0.0;
    for (std::size_t i = 0; i < f0.size(); ++i) acc += std::norm(back[i] - f0[i]);
    return std::sqrt(acc * std::pow(grid.spacing(), grid.dimension())) / l2_norm(f0);
}

// With the nonlinearity forced to 0, evolve must match free_propagate at
// every snapshot time.
inline double free_flight_check(const GridSpec& grid) {
    ProblemParams linear;
    linear.dimension = grid.dimension();
    const Field f0 = gaussian_datum(grid, 1.0, 0.5);
    SolverConfig cfg;
    cfg.nonlinearity = false;
    cfg.dealias = Dealias::off;
    cfg.t_end = 0.5;
    cfg.dt = 0.5 / 64.0;
    cfg.snapshots = 9;
    double worst = 0.0;
    const double ref = l2_norm(f0);
    evolve(f0, cfg, linear, [&](double t, const Field& u) {
        const Field exact = free_propagate(f0, t);
        double diff2 = 0.0;
        for (std::size_t i = 0; i < u.size(); ++i) diff2 += std::norm(u[i] - exact[i]);
        worst = std::max(worst,
                         std::sqrt(diff2 * std::pow(grid.spacing(), grid.dimension())) / ref);
    });
    return worst;
}

} // namespace nlse

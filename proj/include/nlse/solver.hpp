#pragma once

// Strang-split pseudospectral integration of
//   i u_t + Delta u + sigma |u|^{p-1} u = 0.
// Sign convention (used everywhere): the free flow multiplies uhat by
// e^{-i |xi|^2 t} and the dispersionless flow multiplies u pointwise by
// e^{i sigma t |u|^{p-1}}. Both substeps are exact flows of their own
// equations, so mass is conserved up to rounding and dealiasing.

#include <functional>
#include <vector>

#include "nlse/field.hpp"
#include "nlse/multipliers.hpp"
#include "nlse/norms.hpp"
#include "nlse/params.hpp"
#include "nlse/trajectory.hpp"

namespace nlse {

enum class Dealias { two_thirds, off };

struct SolverConfig {
    double dt = 1e-3;        // base step; shrunk automatically under the guard
    double t_end = 1.0;
    std::size_t snapshots = 64;
    Dealias dealias = Dealias::two_thirds;
    double theta_max = M_PI / 8.0; // max nonlinear phase per step
    bool dispersion = true;        // false: pure ODE flow (validation mode)
    bool nonlinearity = true;      // false: pure free flow (validation mode)
    bool store_fields = true;      // false: norms-only observers

    void validate() const {
        if (!(dt > 0.0)) throw DomainError("SolverConfig: dt must be positive");
        if (t_end < 0.0) throw DomainError("SolverConfig: t_end must be >= 0");
        if (snapshots < 2) throw DomainError("SolverConfig: need at least 2 snapshots");
        if (!(theta_max > 0.0)) throw DomainError("SolverConfig: theta_max must be positive");
    }
};

struct ConservationReport {
    std::vector<double> times;
    std::vector<double> mass;
    std::vector<double> energy;
    std::vector<double> leakage; // mass fraction outside the ball of radius L/2

    double mass_drift() const { return relative_drift(mass); }
    double energy_drift() const { return relative_drift(energy); }
    double max_leakage() const {
        double mx = 0.0;
        for (double v : leakage) mx = std::max(mx, v);
        return mx;
    }
    bool leakage_flag() const { return max_leakage() > 1e-6; }

    static double relative_drift(const std::vector<double>& series) {
        if (series.empty()) return 0.0;
        const double ref = std::abs(series.front());
        double mx = 0.0;
        for (double v : series) mx = std::max(mx, std::abs(v - series.front()));
        return ref > 0.0 ? mx / ref : mx;
    }
};

inline Field free_propagate(const Field& f, double t) {
    const bool was_physical = f.is_physical();
    Field out = apply_multiplier(as_spectral(f), symbols::free_propagator(t));
    return was_physical ? to_physical(out) : out;
}

inline Field ode_propagate(const Field& f, double t, const ProblemParams& pp) {
    f.require(Representation::physical, "ode_propagate: field must be physical");
    Field out = f;
    for (std::size_t i = 0; i < out.size(); ++i) {
        const double mod = std::abs(out[i]);
        out[i] *= std::exp(std::complex<double>(
            0.0, double(pp.sigma) * t * std::pow(mod, double(pp.p - 1))));
    }
    return out;
}

// M(u) = 1/2 int |u|^2.
inline double mass(const Field& f) {
    const double l2 = l2_norm(f);
    return 0.5 * l2 * l2;
}

// H(u) = 1/2 int |grad u|^2 - sigma/(p+1) int |u|^{p+1}.
inline double energy(const Field& f, const ProblemParams& pp) {
    const double grad = hs_dot_norm(f, 1.0);
    const double pot = std::pow(lp_norm(f, double(pp.p + 1)), double(pp.p + 1));
    return 0.5 * grad * grad - double(pp.sigma) / double(pp.p + 1) * pot;
}

namespace detail {

inline Field apply_dealias(const Field& spectral, Dealias mode) {
    return mode == Dealias::two_thirds ? dealias_two_thirds(spectral) : spectral;
}

inline double sup_modulus(const Field& f) {
    double mx = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) mx = std::max(mx, std::abs(f[i]));
    return mx;
}

// Mass fraction outside |x| <= L/2 (periodic box standing in for R^d).
inline double ball_leakage(const Field& f) {
    const Field phys = as_physical(f);
    const GridSpec& g = phys.grid();
    const double r2max = 0.25 * g.half_width() * g.half_width();
    double inside = 0.0, total = 0.0;
    for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        const auto x = g.position(idx);
        double r2 = 0.0;
        for (int ax = 0; ax < g.dimension(); ++ax)
            r2 += x[std::size_t(ax)] * x[std::size_t(ax)];
        const double m = std::norm(phys[flat]);
        total += m;
        if (r2 <= r2max) inside += m;
    });
    return total > 0.0 ? (total - inside) / total : 0.0;
}

} // namespace detail

// One Strang step: half nonlinear kick, dealias, full free flight, half
// nonlinear kick, dealias. Errors out if the nonlinear phase over dt
// exceeds the guard; the caller is expected to shrink dt.
inline Field strang_step(const Field& f, double dt, const ProblemParams& pp,
                         const SolverConfig& cfg = {}) {
    f.require(Representation::physical, "strang_step: field must be physical");
    const double amp = detail::sup_modulus(f);
    if (cfg.nonlinearity && dt * std::pow(amp, double(pp.p - 1)) > cfg.theta_max)
        throw StepSizeError("strang_step: nonlinear phase exceeds theta_max");
    Field u = cfg.nonlinearity ? ode_propagate(f, 0.5 * dt, pp) : f;
    Field spec = detail::apply_dealias(to_spectral(u), cfg.dealias);
    if (cfg.dispersion) spec = apply_multiplier(spec, symbols::free_propagator(dt));
    u = to_physical(spec);
    if (cfg.nonlinearity) u = ode_propagate(u, 0.5 * dt, pp);
    return to_physical(detail::apply_dealias(to_spectral(u), cfg.dealias));
}

struct EvolveResult {
    TrajectoryRecord trajectory; // empty when store_fields is off
    ConservationReport conservation;
    bool completed = true;
};

// March to t_end with snapshots at uniform cadence. Within each snapshot
// interval the step is halved until the nonlinear-phase guard accepts it;
// if dt falls below 1e-12 * t_end the run aborts with the partial record.
// The observer sees every snapshot regardless of store_fields.
inline EvolveResult evolve(
    const Field& f0, const SolverConfig& cfg, const ProblemParams& pp,
    const std::function<void(double, const Field&)>& observer = {}) {
    cfg.validate();
    f0.require(Representation::physical, "evolve: initial field must be physical");
    EvolveResult result;

    Field u = f0;
    auto record = [&](double t) {
        result.conservation.times.push_back(t);
        result.conservation.mass.push_back(mass(u));
        result.conservation.energy.push_back(energy(u, pp));
        result.conservation.leakage.push_back(detail::ball_leakage(u));
        if (cfg.store_fields) result.trajectory.push(t, u);
        if (observer) observer(t, u);
    };

    record(0.0);
    const std::size_t intervals = cfg.snapshots - 1;
    const double cadence = cfg.t_end / double(intervals);
    const double dt_floor = 1e-12 * cfg.t_end;
    for (std::size_t i = 0; i < intervals; ++i) {
        double remaining = cadence;
        while (remaining > 1e-15 * cfg.t_end) {
            double dt = std::min(cfg.dt, remaining);
            if (cfg.nonlinearity) {
                const double amp = detail::sup_modulus(u);
                const double phase_scale = std::pow(amp, double(pp.p - 1));
                while (dt * phase_scale > cfg.theta_max) dt *= 0.5;
            }
            if (dt < dt_floor) {
                result.completed = false;
                return result;
            }
            u = strang_step(u, dt, pp, cfg);
            remaining -= dt;
        }
        record(cfg.t_end * double(i + 1) / double(intervals));
    }
    return result;
}

} // namespace nlse

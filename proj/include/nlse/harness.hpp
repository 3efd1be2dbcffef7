#pragma once

// Shared experiment-harness state: config decoding into the problem,
// grid, schedule and solver settings, and small report helpers.

#include <filesystem>

#include "nlse/config.hpp"
#include "nlse/params.hpp"
#include "nlse/report.hpp"
#include "nlse/solver.hpp"
#include "nlse/tanghuru.hpp"

namespace nlse {

struct Harness {
    ProblemParams problem;
    double gamma = 0.05;
    double beta = 0.12;
    GridSpec grid{3, 128, 0.5};
    SolverConfig solver;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::filesystem::path out_dir = "out";
    Config config;

    BubbleParams bubble(double n) const { return BubbleParams(n, gamma, beta, problem); }
};

inline Harness make_harness(const Config& cfg) {
    cfg.require_known(config_schema());
    Harness h;
    h.config = cfg;
    h.problem.p = int(cfg.get_int("problem", "p", 3));
    h.problem.sigma = int(cfg.get_int("problem", "sigma", -1));
    h.problem.s = cfg.get_double("problem", "s", 0.3);
    h.problem.dimension = int(cfg.get_int("grid", "dim", 3));
    h.gamma = cfg.get_double("bubble", "gamma", 0.05);
    h.beta = cfg.get_double("bubble", "beta", 0.12);
    h.grid = GridSpec(h.problem.dimension,
                      std::size_t(cfg.get_int("grid", "n", h.problem.dimension == 1 ? 4096 : 128)),
                      cfg.get_double("grid", "half_width", h.problem.dimension == 1 ? 0.25 : 0.5));
    h.solver.dt = cfg.get_double("solver", "dt", 1e-3);
    h.solver.t_end = cfg.get_double("solver", "t_end", 1.0);
    h.solver.snapshots = std::size_t(cfg.get_int("solver", "snapshots", 64));
    const std::string dealias = cfg.get_string("solver", "dealias", "two_thirds");
    if (dealias == "two_thirds")
        h.solver.dealias = Dealias::two_thirds;
    else if (dealias == "off")
        h.solver.dealias = Dealias::off;
    else
        throw ConfigError("config: solver.dealias must be two_thirds or off");
    h.solver.theta_max = cfg.get_double("solver", "theta_max", M_PI / 8.0);
    h.solver.dispersion = cfg.get_bool("solver", "dispersion", true);
    h.solver.store_fields = cfg.get_bool("solver", "store_fields", true);
    return h;
}

inline TanghuruSpec make_tanghuru_spec(const Harness& h) {
    const Config& cfg = h.config;
    TanghuruSpec spec;
    spec.k0 = int(cfg.get_int("tanghuru", "k0", 0));
    spec.K = int(cfg.get_int("tanghuru", "K", 3));
    const std::string ladder = cfg.get_string("tanghuru", "ladder", "geometric");
    if (ladder == "geometric")
        spec.ladder = TanghuruSpec::Ladder::geometric;
    else if (ladder == "paper")
        spec.ladder = TanghuruSpec::Ladder::paper;
    else
        throw ConfigError("config: tanghuru.ladder must be geometric or paper");
    spec.a = cfg.get_double("tanghuru", "a", 5.0);
    spec.n0 = cfg.get_double("tanghuru", "n0", 4.0);
    spec.ratio = cfg.get_double("tanghuru", "ratio", std::pow(4.0, 1.0 / 3.0));
    spec.gamma = h.gamma;
    spec.beta = h.beta;
    const double u0_amplitude = cfg.get_double("tanghuru", "u0_amplitude", 0.0);
    if (u0_amplitude != 0.0) {
        const double radius = cfg.get_double("tanghuru", "u0_radius", 0.5 * h.grid.half_width());
        CutoffProfile phi;
        Field u0(h.grid, Representation::physical);
        for_each_site(h.grid, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
            const auto x = h.grid.position(idx);
            double r2 = 0.0;
            for (int ax = 0; ax < h.grid.dimension(); ++ax)
                r2 += x[std::size_t(ax)] * x[std::size_t(ax)];
            u0[flat] = u0_amplitude * phi(std::sqrt(r2) / radius);
        });
        spec.background = std::move(u0);
    }
    return spec;
}

namespace detail {

inline CriterionResult criterion(std::string id, std::string description, double measured,
                                 double bound, bool pass) {
    return CriterionResult{std::move(id), std::move(description), measured, bound, pass};
}

inline std::vector<double> log_spaced(double lo, double hi, std::size_t count) {
    std::vector<double> out(count);
    for (std::size_t i = 0; i < count; ++i)
        out[i] = lo * std::pow(hi / lo, double(i) / double(count - 1));
    return out;
}

} // namespace detail

} // namespace nlse

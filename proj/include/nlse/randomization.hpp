#pragma once

// Wiener randomization: a unit-scale partition of unity on the wavenumber
// lattice, P_{1,k} block multipliers, Gaussian decoupling of the blocks,
// and the two Monte Carlo estimates built on top of it (probabilistic
// Strichartz tail, bilinear high/low smoothing).
//
// The window is psi(xi) = b(xi) / sum_j b(xi - j) with b a tensor bump
// supported in [-1.5, 1.5]^d; the denominator is 1-periodic per axis, so
// sum_k psi(xi - k) = 1 holds identically on the lattice.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nlse/fft.hpp"
#include "nlse/field.hpp"
#include "nlse/fit.hpp"
#include "nlse/norms.hpp"
#include "nlse/parallel.hpp"
#include "nlse/profiles.hpp"
#include "nlse/rng.hpp"
#include "nlse/solver.hpp"
#include "nlse/trajectory.hpp"

namespace nlse {

class UnitPartition {
  public:
    explicit UnitPartition(const GridSpec& grid) : grid_(grid) {
        const auto n = grid.points_per_axis();
        // Integer block centers within reach of the lattice.
        double xi_min = 0.0, xi_max = 0.0;
        for (std::size_t a = 0; a < n; ++a) {
            xi_min = std::min(xi_min, grid.wavenumber(a));
            xi_max = std::max(xi_max, grid.wavenumber(a));
        }
        k_min_ = int(std::ceil(xi_min - kHalfSupport));
        k_max_ = int(std::floor(xi_max + kHalfSupport));
        blocks_per_axis_ = std::size_t(k_max_ - k_min_ + 1);

        axis_.resize(n);
        for (std::size_t a = 0; a < n; ++a) {
            const double xi = grid.wavenumber(a);
            const double denom = axis_denominator(xi);
            AxisEntry& entry = axis_[a];
            for (int k = int(std::ceil(xi - kHalfSupport));
                 k <= int(std::floor(xi + kHalfSupport)); ++k) {
                const double w = window(xi - double(k)) / denom;
                if (w <= 0.0) continue;
                entry.offset[entry.count] = k;
                entry.weight[entry.count] = w;
                ++entry.count;
            }
        }
    }

    const GridSpec& grid() const { return grid_; }
    int block_min() const { return k_min_; }
    int block_max() const { return k_max_; }
    std::size_t blocks_per_axis() const { return blocks_per_axis_; }

    std::size_t block_count() const {
        std::size_t total = 1;
        for (int ax = 0; ax < grid_.dimension(); ++ax) total *= blocks_per_axis_;
        return total;
    }

    std::size_t block_flat(const std::array<int, 3>& k) const {
        std::size_t flat = 0;
        for (int ax = 0; ax < grid_.dimension(); ++ax)
            flat = flat * blocks_per_axis_ + std::size_t(k[std::size_t(ax)] - k_min_);
        return flat;
    }

    std::array<int, 3> block_unflatten(std::size_t flat) const {
        std::array<int, 3> k{0, 0, 0};
        for (int ax = grid_.dimension() - 1; ax >= 0; --ax) {
            k[std::size_t(ax)] = k_min_ + int(flat % blocks_per_axis_);
            flat /= blocks_per_axis_;
        }
        return k;
    }

    // psi(xi - k) at a lattice site, as the product of per-axis weights.
    double site_weight(const std::array<std::size_t, 3>& idx,
                       const std::array<int, 3>& k) const {
        double w = 1.0;
        for (int ax = 0; ax < grid_.dimension(); ++ax) {
            const AxisEntry& entry = axis_[idx[std::size_t(ax)]];
            double wa = 0.0;
            for (int i = 0; i < entry.count; ++i)
                if (entry.offset[i] == k[std::size_t(ax)]) wa = entry.weight[i];
            w *= wa;
            if (w == 0.0) return 0.0;
        }
        return w;
    }

    // P_{1,k} f: the block multiplier applied to a spectral field.
    Field apply_block(const Field& f, const std::array<int, 3>& k) const {
        f.require(Representation::spectral, "apply_block: field must be spectral");
        Field out(grid_, Representation::spectral);
        for_each_site(grid_, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
            const double w = site_weight(idx, k);
            if (w != 0.0) out[flat] = w * f[flat];
        });
        return out;
    }

    // ||P_{1,k} f||_{l2}^2 for every block (flat-indexed).
    std::vector<double> block_masses(const Field& f) const {
        f.require(Representation::spectral, "block_masses: field must be spectral");
        std::vector<double> masses(block_count(), 0.0);
        visit_site_blocks([&](std::size_t block, std::size_t site, double w) {
            masses[block] += w * w * std::norm(f[site]);
        });
        return masses;
    }

    // sum of coeff(block) * psi(xi - k) * f(xi) over blocks, per site.
    template <class Coeff>
    Field synthesize(const Field& f, Coeff&& coeff) const {
        f.require(Representation::spectral, "synthesize: field must be spectral");
        Field out(grid_, Representation::spectral);
        visit_site_blocks([&](std::size_t block, std::size_t site, double w) {
            out[site] += coeff(block) * (w * f[site]);
        });
        return out;
    }

  private:
    static constexpr double kHalfSupport = 1.5;

    struct AxisEntry {
        int count = 0;
        std::array<int, 4> offset{};
        std::array<double, 4> weight{};
    };

    static double window(double t) { return CutoffProfile{}(t / kHalfSupport); }

    static double axis_denominator(double xi) {
        double acc = 0.0;
        for (int j = int(std::ceil(xi - kHalfSupport));
             j <= int(std::floor(xi + kHalfSupport)); ++j)
            acc += window(xi - double(j));
        return acc;
    }

    // Enumerate (block, site, psi-weight) triples over the whole lattice.
    template <class Visit>
    void visit_site_blocks(Visit&& visit) const {
        const int d = grid_.dimension();
        for_each_site(grid_, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
            std::array<int, 3> k{0, 0, 0};
            enumerate(idx, 0, d, 1.0, k, flat, visit);
        });
    }

    template <class Visit>
    void enumerate(const std::array<std::size_t, 3>& idx, int ax, int d, double w,
                   std::array<int, 3>& k, std::size_t site, Visit&& visit) const {
        if (ax == d) {
            visit(block_flat(k), site, w);
            return;
        }
        const AxisEntry& entry = axis_[idx[std::size_t(ax)]];
        for (int i = 0; i < entry.count; ++i) {
            k[std::size_t(ax)] = entry.offset[i];
            enumerate(idx, ax + 1, d, w * entry.weight[i], k, site, visit);
        }
    }

    GridSpec grid_;
    int k_min_ = 0;
    int k_max_ = 0;
    std::size_t blocks_per_axis_ = 0;
    std::vector<AxisEntry> axis_;
};

inline UnitPartition build_partition(const GridSpec& grid) { return UnitPartition(grid); }

struct RandomEnsemble {
    Field base;              // spectral
    UnitPartition partition;
    std::uint64_t rng_seed = 0;
    std::size_t samples = 0;
    std::size_t degenerate_blocks = 0; // blocks with ||P_{1,k} f0|| ~ 0 (skipped)

    RandomEnsemble(Field base_field, std::uint64_t seed, std::size_t sample_count)
        : base(as_spectral(base_field)),
          partition(base_field.grid()),
          rng_seed(seed),
          samples(sample_count) {
        const auto masses = partition.block_masses(base);
        double total = 0.0;
        for (double m : masses) total += m;
        const double floor_mass = 1e-28 * total;
        for (double m : masses)
            if (m <= floor_mass) ++degenerate_blocks;
    }
};

// f0^omega(i) = sum_k g_k(i) P_{1,k} f0, with g_k the unit complex
// Gaussian drawn at counter (sample i, block k): bit-reproducible given
// (seed, i) no matter the execution order.
inline Field wiener_sample(const RandomEnsemble& ens, std::size_t i) {
    const CounterRng rng(ens.rng_seed);
    std::vector<std::complex<double>> g(ens.partition.block_count());
    for (std::size_t b = 0; b < g.size(); ++b) g[b] = rng.gaussian(i, b);
    return ens.partition.synthesize(ens.base, [&](std::size_t b) { return g[b]; });
}

// Partition-of-unity reconstruction (all g_k forced to 1).
inline Field wiener_reconstruct(const RandomEnsemble& ens) {
    return ens.partition.synthesize(ens.base,
                                    [](std::size_t) { return std::complex<double>(1.0); });
}

struct TailReport {
    std::vector<double> lambdas;
    std::vector<double> survival;
    std::vector<double> survival_stderr;
    std::vector<bool> used_in_fit; // inside the [1e-3, 0.5] band with enough events
    double slope = 0.0;            // chat < 0: log(survival) ~ intercept + slope * lambda^2
    double intercept = 0.0;
    double r_squared = 0.0;
    std::size_t samples = 0;
    std::vector<double> norms; // the per-sample statistics behind the histogram
};

// Empirical tail of || <grad>^s e^{it Delta} f0^omega ||_{L^q_t L^r_x([0,T])}
// over the ensemble, with a weighted fit of log(survival) against
// lambda^2 restricted to survival in [1e-3, 0.5].
inline TailReport strichartz_tail(const RandomEnsemble& ens, double s, double q, double r,
                                  double T, std::vector<double> lambda_grid,
                                  std::size_t time_stamps = 33, unsigned threads = 1) {
    if (!(q >= 2.0) || !(r >= 2.0)) throw DomainError("strichartz_tail: need q, r >= 2");
    if (!(T > 0.0)) throw DomainError("strichartz_tail: need T > 0");
    if (ens.samples < 1000) throw DomainError("strichartz_tail: need >= 1e3 samples");

    TailReport report;
    report.samples = ens.samples;
    report.norms.resize(ens.samples);
    parallel_for(ens.samples, threads, [&](std::size_t i) {
        const Field sample = apply_multiplier(wiener_sample(ens, i), symbols::bessel_power(s));
        TrajectoryRecord tr;
        for (std::size_t j = 0; j < time_stamps; ++j) {
            const double t = T * double(j) / double(time_stamps - 1);
            tr.push(t, free_propagate(sample, t));
        }
        report.norms[i] = spacetime_norm(tr, q, r);
    });

    if (lambda_grid.empty()) {
        // Default grid: span the observed mid-to-deep tail.
        std::vector<double> sorted = report.norms;
        std::sort(sorted.begin(), sorted.end());
        const double lo = sorted[std::size_t(0.40 * double(ens.samples))];
        const double hi = sorted[std::size_t(std::min<double>(
            double(ens.samples) - 1.0, 0.9995 * double(ens.samples)))];
        for (int j = 0; j < 24; ++j)
            lambda_grid.push_back(lo + (hi - lo) * double(j) / 23.0);
    }

    std::vector<double> xs, ys, ws;
    for (double lambda : lambda_grid) {
        std::size_t exceed = 0;
        for (double v : report.norms)
            if (v > lambda) ++exceed;
        const double surv = double(exceed) / double(ens.samples);
        report.lambdas.push_back(lambda);
        report.survival.push_back(surv);
        report.survival_stderr.push_back(
            std::sqrt(std::max(surv * (1.0 - surv), 0.0) / double(ens.samples)));
        const bool usable = surv >= 1e-3 && surv <= 0.5 && exceed >= 5;
        report.used_in_fit.push_back(usable);
        if (usable) {
            xs.push_back(lambda * lambda);
            ys.push_back(std::log(surv));
            // Var(log s) ~ (1-s)/(N s); weight by its inverse.
            ws.push_back(double(ens.samples) * surv / (1.0 - surv + 1e-12));
        }
    }
    if (xs.size() >= 2) {
        const LineFit fit = fit_line(xs, ys, ws);
        report.slope = fit.slope;
        report.intercept = fit.intercept;
        report.r_squared = fit.r_squared;
    }
    return report;
}

struct BilinearReport {
    double n_low = 0.0;
    double m_high = 0.0;
    std::vector<double> ratios; // per sample: ||uv|| / (N M^{-1/2} ||u0|| ||v0||)
    double mean_ratio = 0.0;
    double max_ratio = 0.0;
};

// || (e^{it Delta} u0)(e^{it Delta} v0) ||_{L^2_{t,x}([0,T])} by trapezoid
// over the free evolutions of both factors.
inline double bilinear_product_norm(const Field& u0, const Field& v0, double T,
                                    std::size_t time_stamps) {
    check_same_grid(u0, v0, "bilinear_product_norm");
    const GridSpec& grid = u0.grid();
    const Field u_spec = as_spectral(u0);
    const Field v_spec = as_spectral(v0);
    std::vector<double> sq(time_stamps);
    const double dt = T / double(time_stamps - 1);
    for (std::size_t j = 0; j < time_stamps; ++j) {
        const double t = dt * double(j);
        const Field ut = to_physical(apply_multiplier(u_spec, symbols::free_propagator(t)));
        const Field vt = to_physical(apply_multiplier(v_spec, symbols::free_propagator(t)));
        double acc = 0.0;
        for (std::size_t m = 0; m < ut.size(); ++m)
            acc += std::norm(ut[m]) * std::norm(vt[m]);
        sq[j] = acc * std::pow(grid.spacing(), grid.dimension());
    }
    double integral = 0.0;
    for (std::size_t j = 0; j + 1 < time_stamps; ++j)
        integral += 0.5 * dt * (sq[j] + sq[j + 1]);
    return std::sqrt(integral);
}

// Ratio of the product norm to the smoothing bound N M^{-1/2} ||u0|| ||v0||.
inline double bilinear_ratio(const Field& u0, const Field& v0, double n_low, double m_high,
                             double T, std::size_t time_stamps) {
    const double denom = n_low / std::sqrt(m_high) * l2_norm(u0) * l2_norm(v0);
    if (denom == 0.0) return 0.0;
    return bilinear_product_norm(u0, v0, T, time_stamps) / denom;
}

// Monte Carlo check of || (e^{it Delta} u0)(e^{it Delta} v0) ||_{L^2_{t,x}}
// against N M^{-1/2} ||u0||_{L^2} ||v0||_{L^2}, with u0 carried by random
// modes in {|xi| <= N} and v0 by random modes in the annulus
// {M/2 <= |xi| <= 2M}.
//
// Both factors are localized wave packets (a smooth envelope modulated by
// the random carrier): a spatially stationary random field never decays in
// a periodic box, so its windowed product norm scales like sqrt(T M)/N and
// says nothing about dispersive smoothing. For packets the high packet
// exits the low one at group speed ~2|xi_2| and the product dies before
// the fastest modes wrap, provided the window stays below ~L/(2 * 2M);
// the measured norm is then window-insensitive, as over the whole line.
inline BilinearReport bilinear_check(const GridSpec& grid, double n_low, double m_high,
                                     double T, std::size_t samples,
                                     std::uint64_t seed = 0, std::size_t time_stamps = 65,
                                     unsigned threads = 1) {
    if (!(m_high >= 4.0 * n_low)) throw DomainError("bilinear_check: need M >= 4N");
    if (2.0 * m_high > grid.nyquist())
        throw DomainError("bilinear_check: annulus exceeds the resolved lattice");

    // Carrier pools for the two supports.
    std::vector<Wavevector> low_modes, ann_modes;
    for_each_site(grid, [&](std::size_t, const std::array<std::size_t, 3>& idx) {
        const Wavevector w = grid.mode(idx);
        const double len = w.norm();
        if (len <= n_low) low_modes.push_back(w);
        if (len >= 0.5 * m_high && len <= 2.0 * m_high) ann_modes.push_back(w);
    });
    if (ann_modes.empty())
        throw ResolutionError("bilinear_check: annulus holds no lattice modes");

    const double radius = 0.065 * grid.half_width();
    const double t_wrap = 0.4 * grid.half_width() / m_high; // before 4M-waves wrap
    const double window = std::min(T, t_wrap);
    const CutoffProfile envelope;
    const CounterRng rng(seed);

    auto packet = [&](const Wavevector& carrier, std::complex<double> amplitude) {
        Field f(grid, Representation::physical, uninitialized);
        for_each_site(grid, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
            const auto x = grid.position(idx);
            double r2 = 0.0, phase = 0.0;
            for (int ax = 0; ax < grid.dimension(); ++ax) {
                r2 += x[std::size_t(ax)] * x[std::size_t(ax)];
                phase += carrier.xi[std::size_t(ax)] * x[std::size_t(ax)];
            }
            f[flat] = amplitude * envelope(std::sqrt(r2) / radius) *
                      std::exp(std::complex<double>(0.0, phase));
        });
        return f;
    };

    BilinearReport report;
    report.n_low = n_low;
    report.m_high = m_high;
    report.ratios.resize(samples);

    parallel_for(samples, threads, [&](std::size_t i) {
        const auto pick = [&](const std::vector<Wavevector>& pool, std::uint32_t stream) {
            const auto w = rng.raw(i, 0, stream);
            return pool[std::size_t(w[0]) % pool.size()];
        };
        const Field u0 = packet(pick(low_modes, 1), rng.gaussian(i, 1, 1));
        const Field v0 = packet(pick(ann_modes, 2), rng.gaussian(i, 1, 2));
        report.ratios[i] = bilinear_ratio(u0, v0, n_low, m_high, window, time_stamps);
    });

    for (double v : report.ratios) {
        report.mean_ratio += v;
        report.max_ratio = std::max(report.max_ratio, v);
    }
    report.mean_ratio /= double(samples);
    return report;
}

} // namespace nlse

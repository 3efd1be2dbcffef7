#pragma once

// Norm calculus: fractional Sobolev norms from the spectral side,
// Lebesgue norms by rectangle-rule quadrature (spectrally accurate for
// smooth periodic integrands).

#include <algorithm>
#include <cmath>

#include "nlse/fft.hpp"
#include "nlse/field.hpp"

namespace nlse {

namespace detail {

// Spectral-side weighted sum without copying an already-spectral field.
template <class Weight>
double spectral_weighted_norm(const Field& f, Weight&& weight) {
    auto accumulate = [&](const Field& spec) {
        const GridSpec& g = spec.grid();
        double acc = 0.0;
        for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
            acc += weight(g.mode(idx)) * std::norm(spec[flat]);
        });
        return std::sqrt(acc);
    };
    if (f.is_spectral()) return accumulate(f);
    return accumulate(to_spectral(f));
}

} // namespace detail

// H^s norm: ( sum_xi <xi>^{2s} |fhat(xi)|^2 )^{1/2}.
inline double hs_norm(const Field& f, double s) {
    return detail::spectral_weighted_norm(
        f, [s](const Wavevector& w) { return std::pow(w.bracket(), 2.0 * s); });
}

// Homogeneous H^m seminorm with weight |xi|^m; the zero mode contributes
// nothing for m > 0 and its plain modulus for m = 0.
inline double hs_dot_norm(const Field& f, double m) {
    return detail::spectral_weighted_norm(f, [m](const Wavevector& w) {
        const double q = w.squared();
        if (q == 0.0) return m == 0.0 ? 1.0 : 0.0;
        return std::pow(q, m);
    });
}

inline double l2_norm(const Field& f) {
    if (f.is_spectral()) {
        double acc = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i]);
        return std::sqrt(acc);
    }
    const GridSpec& g = f.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) acc += std::norm(f[i]);
    return std::sqrt(acc * std::pow(g.spacing(), g.dimension()));
}

// L^p norm over the box; p = infinity gives max |f|.
inline double lp_norm(const Field& f, double p) {
    if (p < 1.0) throw DomainError("lp_norm: p must be >= 1");
    auto accumulate = [&](const Field& phys) {
        if (std::isinf(p)) {
            double mx = 0.0;
            for (std::size_t i = 0; i < phys.size(); ++i)
                mx = std::max(mx, std::abs(phys[i]));
            return mx;
        }
        const GridSpec& g = phys.grid();
        double acc = 0.0;
        for (std::size_t i = 0; i < phys.size(); ++i)
            acc += std::pow(std::abs(phys[i]), p);
        return std::pow(acc * std::pow(g.spacing(), g.dimension()), 1.0 / p);
    };
    if (f.is_physical()) return accumulate(f);
    return accumulate(to_physical(f));
}

// Frequency-side Hoelder check for 0 <= s < 1:
//   ||f||_{H^1}^{2-s} <= ||f||_{H^s} ||f||_{H^2}^{1-s}.
// Returns the ratio LHS/RHS, which must not exceed 1 up to rounding.
struct InterpolationReport {
    double h1, hs, h2;
    double ratio;
};

inline InterpolationReport interpolation_check(const Field& f, double s) {
    if (s < 0.0 || s >= 1.0)
        throw DomainError("interpolation_check: s must lie in [0,1)");
    const Field spec = as_spectral(f);
    InterpolationReport r{};
    r.h1 = hs_norm(spec, 1.0);
    r.hs = hs_norm(spec, s);
    r.h2 = hs_norm(spec, 2.0);
    const double denom = r.hs * std::pow(r.h2, 1.0 - s);
    r.ratio = denom == 0.0 ? 0.0 : std::pow(r.h1, 2.0 - s) / denom;
    return r;
}

} // namespace nlse

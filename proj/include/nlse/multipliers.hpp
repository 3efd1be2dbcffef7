#pragma once

// Fourier multipliers: pointwise multiplication of spectral coefficients
// by a symbol m(xi). Every operator used by the construction (free
// propagator, <grad>^s, mollifier hat, frequency blocks, dealiasing mask)
// goes through apply_multiplier.

#include <complex>

#include "nlse/fft.hpp"
#include "nlse/field.hpp"

namespace nlse {

// Symbol: callable Wavevector -> complex (or double).
template <class Symbol>
Field apply_multiplier(const Field& f, Symbol&& m) {
    f.require(Representation::spectral, "apply_multiplier: field must be spectral");
    const GridSpec& g = f.grid();
    Field out(g, Representation::spectral, uninitialized);
    for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        out[flat] = f[flat] * std::complex<double>(m(g.mode(idx)));
    });
    return out;
}

namespace symbols {

// Free Schroedinger propagator over time t: e^{-i |xi|^2 t}.
inline auto free_propagator(double t) {
    return [t](const Wavevector& w) {
        return std::exp(std::complex<double>(0.0, -w.squared() * t));
    };
}

// Inhomogeneous derivative weight <xi>^s.
inline auto bessel_power(double s) {
    return [s](const Wavevector& w) {
        return std::complex<double>(std::pow(w.bracket(), s), 0.0);
    };
}

// Homogeneous weight |xi|^m (zero at the zero mode).
inline auto riesz_power(double m) {
    return [m](const Wavevector& w) {
        const double q = w.squared();
        return std::complex<double>(q == 0.0 ? 0.0 : std::pow(q, 0.5 * m), 0.0);
    };
}

// Translation by delta: e^{-i xi . delta}.
inline auto shift(const std::array<double, 3>& delta) {
    return [delta](const Wavevector& w) {
        const double phase = w.xi[0] * delta[0] + w.xi[1] * delta[1] + w.xi[2] * delta[2];
        return std::exp(std::complex<double>(0.0, -phase));
    };
}

} // namespace symbols

// 2/3-rule mask: keep |j| < N/3 per axis, zero the rest (Nyquist included).
inline Field dealias_two_thirds(const Field& f) {
    f.require(Representation::spectral, "dealias: field must be spectral");
    const GridSpec& g = f.grid();
    const std::int64_t cutoff = std::int64_t(g.points_per_axis()) / 3;
    Field out(g, Representation::spectral, uninitialized);
    for_each_site(g, [&](std::size_t flat, const std::array<std::size_t, 3>& idx) {
        bool keep = true;
        for (int ax = 0; ax < g.dimension(); ++ax) {
            const std::int64_t j = g.signed_index(idx[std::size_t(ax)]);
            if (j > cutoff || j < -cutoff) keep = false;
        }
        out[flat] = keep ? f[flat] : std::complex<double>(0.0);
    });
    return out;
}

} // namespace nlse

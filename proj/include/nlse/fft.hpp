#pragma once

// Unitary discrete Fourier transform between the physical box [-L, L)^d
// and the lattice xi_j = (pi/L) j. Coefficients follow the continuum
// convention centered at x = 0:
//
//   fhat_j = (2L)^{d/2} N^{-d} (-1)^{sum j} DFT_j[f],
//
// which makes Parseval an identity: sum_j |fhat_j|^2 = sum_x |f(x)|^2 h^d,
// and gives a plane wave e^{i k0 x} the single positive coefficient
// (2L)^{d/2} at xi = k0.
//
// FFTW plans are cached per (dimension, N) and created under a mutex
// (planning is not thread-safe); execution uses the new-array interface
// and FFTW_UNALIGNED so any buffer is acceptable.

#include <fftw3.h>

#include <map>
#include <mutex>

#include "nlse/field.hpp"

namespace nlse {

namespace detail {

class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan forward(int d, std::size_t n) { return get(d, n).fwd; }
    fftw_plan backward(int d, std::size_t n) { return get(d, n).bwd; }

  private:
    struct Pair {
        fftw_plan fwd = nullptr;
        fftw_plan bwd = nullptr;
    };

    Pair& get(int d, std::size_t n) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_pair(d, n);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        // Plan in-place on a scratch buffer with the same 64-byte alignment
        // as every field buffer, so new-array execution stays valid and the
        // SIMD code paths remain enabled.
        std::size_t total = 1;
        for (int i = 0; i < d; ++i) total *= n;
        AlignedBuffer scratch(total);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        int dims[3] = {int(n), int(n), int(n)};
        Pair pair;
        pair.fwd = fftw_plan_dft(d, dims, ptr, ptr, FFTW_FORWARD, FFTW_ESTIMATE);
        pair.bwd = fftw_plan_dft(d, dims, ptr, ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
        return plans_.emplace(key, pair).first->second;
    }

    std::mutex mutex_;
    std::map<std::pair<int, std::size_t>, Pair> plans_;
};

// Parity of the summed axis indices: the (-1)^{sum j} factor relocating
// the origin to the box center.
inline double site_parity(const GridSpec& grid, const std::array<std::size_t, 3>& idx) {
    std::size_t s = 0;
    for (int ax = 0; ax < grid.dimension(); ++ax) s += idx[std::size_t(ax)];
    return (s & 1u) ? -1.0 : 1.0;
}

// The (-1)^{sum j} factor equals a circular shift by N/2 along every axis
// (DFT shift theorem), which fuses with the copy/scale pass instead of
// costing a pass of its own.

// dst = scale * (src rotated by N/2 along every axis).
inline void rotate_half_scaled(const GridSpec& g, const Field::storage_type& src,
                               Field::storage_type& dst, double scale) {
    const std::size_t n = g.points_per_axis();
    const std::size_t h = n / 2;
    const std::size_t rows = src.size() / n;
    for (std::size_t row = 0; row < rows; ++row) {
        // Rotate the leading axes of the row index by h each.
        std::size_t lead = row, rot = 0, base = 1;
        for (int ax = 1; ax < g.dimension(); ++ax) {
            rot += ((lead % n + h) % n) * base;
            lead /= n;
            base *= n;
        }
        const std::complex<double>* s = src.data() + rot * n;
        std::complex<double>* d = dst.data() + row * n;
        for (std::size_t i = 0; i < h; ++i) d[i] = scale * s[i + h];
        for (std::size_t i = 0; i < h; ++i) d[i + h] = scale * s[i];
    }
}

// In-place variant: the half rotation is an involution, so swap pairs.
inline void rotate_half_inplace(const GridSpec& g, Field::storage_type& data) {
    const std::size_t n = g.points_per_axis();
    const std::size_t h = n / 2;
    const std::size_t rows = data.size() / n;
    for (std::size_t row = 0; row < rows; ++row) {
        std::size_t lead = row, rot = 0, base = 1;
        for (int ax = 1; ax < g.dimension(); ++ax) {
            rot += ((lead % n + h) % n) * base;
            lead /= n;
            base *= n;
        }
        if (rot < row) continue; // partner row already handled
        std::complex<double>* a = data.data() + row * n;
        std::complex<double>* b = data.data() + rot * n;
        if (rot == row) {
            for (std::size_t i = 0; i < h; ++i) std::swap(a[i], a[i + h]);
        } else {
            for (std::size_t i = 0; i < h; ++i) {
                std::swap(a[i], b[i + h]);
                std::swap(a[i + h], b[i]);
            }
        }
    }
}

} // namespace detail

inline Field to_spectral(const Field& f) {
    f.require(Representation::physical, "to_spectral: field must be physical");
    const GridSpec& g = f.grid();
    const double scale =
        std::pow(2.0 * g.half_width(), 0.5 * g.dimension()) / double(g.point_count());
    Field out(g, Representation::spectral, uninitialized);
    detail::rotate_half_scaled(g, f.values(), out.values(), scale);
    auto* ptr = reinterpret_cast<fftw_complex*>(out.values().data());
    fftw_execute_dft(detail::PlanCache::instance().forward(g.dimension(), g.points_per_axis()),
                     ptr, ptr);
    return out;
}

inline Field to_physical(const Field& f) {
    f.require(Representation::spectral, "to_physical: field must be spectral");
    const GridSpec& g = f.grid();
    const double scale =
        std::pow(2.0 * g.half_width(), 0.5 * g.dimension()) / double(g.point_count());
    Field out(g, Representation::physical, uninitialized);
    // fhat * (-1)^{sum j} rotated forward equals rotating the output back.
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = f[i] / (scale * double(g.point_count()));
    auto* ptr = reinterpret_cast<fftw_complex*>(out.values().data());
    fftw_execute_dft(detail::PlanCache::instance().backward(g.dimension(), g.points_per_axis()),
                     ptr, ptr);
    detail::rotate_half_inplace(g, out.values());
    return out;
}

inline Field as_spectral(const Field& f) {
    return f.is_spectral() ? f : to_spectral(f);
}

inline Field as_physical(const Field& f) {
    return f.is_physical() ? f : to_physical(f);
}

} // namespace nlse

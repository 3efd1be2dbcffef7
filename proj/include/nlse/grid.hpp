#pragma once

// Periodic spectral grid on the box [-L, L)^d. The wavenumber lattice is
// xi_j = (pi/L) j with integer j in [-N/2, N/2); the single Nyquist mode
// j = -N/2 is kept.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "nlse/errors.hpp"

namespace nlse {

// Wavevector with unused trailing components fixed at zero, so symbols can
// be written dimension-agnostically.
struct Wavevector {
    std::array<double, 3> xi{0.0, 0.0, 0.0};

    double operator[](std::size_t i) const { return xi[i]; }
    double squared() const {
        return xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    }
    double norm() const { return std::sqrt(squared()); }
    // Japanese bracket <xi> = (1 + |xi|^2)^{1/2}.
    double bracket() const { return std::sqrt(1.0 + squared()); }
};

class GridSpec {
  public:
    GridSpec(int dimension, std::size_t points_per_axis, double half_width)
        : d_(dimension), n_(points_per_axis), half_width_(half_width) {
        if (d_ < 1 || d_ > 3)
            throw DomainError("GridSpec: dimension must be 1, 2 or 3");
        if (n_ < 8 || (n_ & (n_ - 1)) != 0)
            throw DomainError("GridSpec: N must be a power of two, N >= 8");
        if (!(half_width_ > 0.0))
            throw DomainError("GridSpec: half_width must be positive");
    }

    int dimension() const { return d_; }
    std::size_t points_per_axis() const { return n_; }
    double half_width() const { return half_width_; }
    double spacing() const { return 2.0 * half_width_ / double(n_); }
    // Wavenumber lattice spacing pi/L.
    double mode_spacing() const { return M_PI / half_width_; }
    double nyquist() const { return mode_spacing() * double(n_ / 2); }

    std::size_t point_count() const {
        std::size_t total = 1;
        for (int i = 0; i < d_; ++i) total *= n_;
        return total;
    }

    // Signed frequency index of an unsigned axis index, in [-N/2, N/2).
    std::int64_t signed_index(std::size_t a) const {
        return a < n_ / 2 ? std::int64_t(a) : std::int64_t(a) - std::int64_t(n_);
    }

    double coordinate(std::size_t a) const {
        return -half_width_ + double(a) * spacing();
    }

    double wavenumber(std::size_t a) const {
        return mode_spacing() * double(signed_index(a));
    }

    // Decompose a flat row-major index into per-axis indices.
    std::array<std::size_t, 3> unflatten(std::size_t flat) const {
        std::array<std::size_t, 3> idx{0, 0, 0};
        for (int ax = d_ - 1; ax >= 0; --ax) {
            idx[std::size_t(ax)] = flat % n_;
            flat /= n_;
        }
        return idx;
    }

    std::size_t flatten(const std::array<std::size_t, 3>& idx) const {
        std::size_t flat = 0;
        for (int ax = 0; ax < d_; ++ax) flat = flat * n_ + idx[std::size_t(ax)];
        return flat;
    }

    Wavevector mode(const std::array<std::size_t, 3>& idx) const {
        Wavevector w;
        for (int ax = 0; ax < d_; ++ax) w.xi[std::size_t(ax)] = wavenumber(idx[std::size_t(ax)]);
        return w;
    }

    std::array<double, 3> position(const std::array<std::size_t, 3>& idx) const {
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int ax = 0; ax < d_; ++ax) x[std::size_t(ax)] = coordinate(idx[std::size_t(ax)]);
        return x;
    }

    bool operator==(const GridSpec& other) const {
        return d_ == other.d_ && n_ == other.n_ && half_width_ == other.half_width_;
    }
    bool operator!=(const GridSpec& other) const { return !(*this == other); }

  private:
    int d_;
    std::size_t n_;
    double half_width_;
};

// Visit every lattice site: fn(flat_index, axis_indices).
template <class F>
void for_each_site(const GridSpec& grid, F&& fn) {
    const std::size_t n = grid.points_per_axis();
    std::array<std::size_t, 3> idx{0, 0, 0};
    const int d = grid.dimension();
    std::size_t flat = 0;
    if (d == 1) {
        for (idx[0] = 0; idx[0] < n; ++idx[0]) fn(flat++, idx);
    } else if (d == 2) {
        for (idx[0] = 0; idx[0] < n; ++idx[0])
            for (idx[1] = 0; idx[1] < n; ++idx[1]) fn(flat++, idx);
    } else {
        for (idx[0] = 0; idx[0] < n; ++idx[0])
            for (idx[1] = 0; idx[1] < n; ++idx[1])
                for (idx[2] = 0; idx[2] < n; ++idx[2]) fn(flat++, idx);
    }
}

} // namespace nlse

#pragma once

// The two radial profiles of the construction:
//   - CutoffProfile: the standard bump phi(x) = exp(1 - 1/(1-|x|^2)) on
//     |x| < 1, smooth, radial, valued in [0,1], supported in the unit ball.
//   - Mollifier: the same bump normalized to unit integral, with its
//     continuum Fourier transform rho_hat tabulated once per dimension.
//
// rho_hat is needed on arguments eps*|xi| up to a few thousand, so the
// radial transform is evaluated on a dense uniform grid in one FFT of the
// even (d=1) / odd-weighted (d=3) extension and read back through cubic
// interpolation; the table is validated against direct Gauss-Legendre
// quadrature in the test suite at the 1e-10 level.

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "nlse/errors.hpp"
#include "nlse/quadrature.hpp"

namespace nlse {

struct CutoffProfile {
    // Radial evaluation; r is |x|.
    double operator()(double r) const {
        const double r2 = r * r;
        if (r2 >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - r2));
    }
    static constexpr double support_radius() { return 1.0; }
};

namespace detail {

// Dense table of the radial transform rho_hat_d(t) for t >= 0.
class MollifierTable {
  public:
    MollifierTable(int dimension, double unit_integral) {
        build(dimension, unit_integral);
    }

    double operator()(double t) const {
        t = std::abs(t);
        const double u = t / step_;
        const auto j = std::size_t(u);
        if (j + 2 >= values_.size()) return 0.0;
        // 4-point Lagrange on the uniform grid; rho_hat is even, so the
        // j = 0 stencil reflects across the origin.
        const double x = u - double(j);
        const double ym1 = j == 0 ? values_[1] : values_[j - 1];
        const double y0 = values_[j];
        const double y1 = values_[j + 1];
        const double y2 = values_[j + 2];
        return ym1 * (-x * (x - 1.0) * (x - 2.0) / 6.0) +
               y0 * ((x + 1.0) * (x - 1.0) * (x - 2.0) / 2.0) +
               y1 * (-(x + 1.0) * x * (x - 2.0) / 2.0) +
               y2 * ((x + 1.0) * x * (x - 1.0) / 6.0);
    }

  private:
    void build(int dimension, double unit_integral) {
        // delta resolves the bump; the implied table spacing
        // 2*pi/(M*delta) is fine enough for 1e-12 interpolation error.
        const std::size_t m = std::size_t(1) << 22;
        const double delta = 1.0 / 2048.0;
        step_ = 2.0 * M_PI / (double(m) * delta);
        CutoffProfile bump;

        std::vector<std::complex<double>> buf(m, 0.0);
        const auto fill = std::size_t(std::ceil(1.0 / delta)) + 1;
        for (std::size_t i = 0; i <= fill; ++i) {
            const double r = double(i) * delta;
            const double b = bump(r) / unit_integral;
            if (dimension == 1) {
                buf[i] = b;
                if (i > 0) buf[m - i] = b; // even extension
            } else {
                buf[i] = b * r;
                if (i > 0) buf[m - i] = -b * r; // odd extension of r*rho(r)
            }
        }
        auto* ptr = reinterpret_cast<fftw_complex*>(buf.data());
        fftw_plan plan = fftw_plan_dft_1d(int(m), ptr, ptr, FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_execute(plan);
        fftw_destroy_plan(plan);

        values_.resize(m / 2);
        if (dimension == 1) {
            // rho_hat(t_j) = delta * Re DFT_j
            for (std::size_t j = 0; j < values_.size(); ++j)
                values_[j] = delta * buf[j].real();
        } else {
            // int_0^inf r rho(r) sin(t r) dr = -delta/2 * Im DFT_j,
            // rho_hat(t) = (4 pi / t) * that integral.
            values_[0] = 1.0;
            for (std::size_t j = 1; j < values_.size(); ++j) {
                const double integral = -0.5 * delta * buf[j].imag();
                values_[j] = 4.0 * M_PI * integral / (double(j) * step_);
            }
        }
        // Truncate once the transform is persistently below 1e-15.
        std::size_t last = values_.size();
        while (last > 1024 && std::abs(values_[last - 1]) < 1e-15 &&
               std::abs(values_[last - 1024]) < 1e-15)
            --last;
        values_.resize(last);
        values_.shrink_to_fit();
    }

    double step_ = 0.0;
    std::vector<double> values_;
};

} // namespace detail

class Mollifier {
  public:
    explicit Mollifier(int dimension) : dimension_(dimension) {
        if (dimension != 1 && dimension != 3)
            throw DomainError("Mollifier: radial transform implemented for d = 1 and d = 3");
        CutoffProfile bump;
        if (dimension == 1)
            unit_integral_ = 2.0 * gauss_legendre([&](double r) { return bump(r); }, 0.0, 1.0, 64);
        else
            unit_integral_ = 4.0 * M_PI *
                             gauss_legendre([&](double r) { return bump(r) * r * r; }, 0.0, 1.0, 64);
        table_ = std::make_shared<detail::MollifierTable>(dimension_, unit_integral_);
    }

    int dimension() const { return dimension_; }

    // rho(x) = bump(|x|) / integral; valued in [0,1] since integral > 1.
    double density(double r) const { return CutoffProfile{}(r) / unit_integral_; }

    // Continuum Fourier transform at radial argument t = |xi|; rho_hat(0) = 1.
    double hat(double t) const { return (*table_)(t); }

  private:
    int dimension_;
    double unit_integral_ = 1.0;
    std::shared_ptr<const detail::MollifierTable> table_;
};

} // namespace nlse

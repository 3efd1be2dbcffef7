#pragma once

// Composite Gauss-Legendre quadrature on [a,b]. Used for the radial
// integrals behind the cutoff/mollifier profiles; panel counts are chosen
// by the callers to hit their stated accuracy targets.

#include <array>
#include <cstddef>
#include <functional>

namespace nlse {

// 16-point Gauss-Legendre nodes/weights on [-1,1] (positive half; the
// rule is symmetric).
namespace detail {
inline constexpr std::array<double, 8> kGL16Nodes = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> kGL16Weights = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};
} // namespace detail

template <class F>
double gauss_legendre(F&& f, double a, double b, std::size_t panels = 16) {
    double total = 0.0;
    const double dx = (b - a) / double(panels);
    for (std::size_t p = 0; p < panels; ++p) {
        const double mid = a + (double(p) + 0.5) * dx;
        const double half = 0.5 * dx;
        double acc = 0.0;
        for (std::size_t i = 0; i < detail::kGL16Nodes.size(); ++i) {
            const double t = detail::kGL16Nodes[i] * half;
            acc += detail::kGL16Weights[i] * (f(mid + t) + f(mid - t));
        }
        total += acc * half;
    }
    return total;
}

} // namespace nlse

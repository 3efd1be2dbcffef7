#pragma once

// Weighted least-squares line fits for the exponent regressions and the
// tail-slope estimates.

#include <cmath>
#include <vector>

#include "nlse/errors.hpp"

namespace nlse {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
    double r_squared = 1.0;
};

inline LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y,
                        const std::vector<double>& w = {}) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("fit_line: need matching x/y with at least 2 points");
    std::vector<double> weights = w;
    if (weights.empty()) weights.assign(x.size(), 1.0);
    if (weights.size() != x.size())
        throw DomainError("fit_line: weight count mismatch");

    double sw = 0.0, sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sw += weights[i];
        sx += weights[i] * x[i];
        sy += weights[i] * y[i];
    }
    const double mx = sx / sw, my = sy / sw;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += weights[i] * dx * dx;
        sxy += weights[i] * dx * dy;
        syy += weights[i] * dy * dy;
    }
    if (sxx == 0.0) throw DomainError("fit_line: x values are degenerate");

    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);

    if (x.size() > 2) {
        double ss_res = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double r = y[i] - (fit.intercept + fit.slope * x[i]);
            ss_res += weights[i] * r * r;
        }
        // Effective dof under normalized weights.
        const double dof = double(x.size()) - 2.0;
        fit.slope_stderr = std::sqrt((ss_res / dof) / sxx);
    }
    return fit;
}

} // namespace nlse

#pragma once

// Equation constants and the per-n bubble schedule. Exponents are written
// with d/2 in place of the three-dimensional 3/2 so the d = 1 fast mode
// uses the correctly re-derived scalings.

#include <cmath>

#include "nlse/errors.hpp"

namespace nlse {

struct ProblemParams {
    int p = 3;           // odd nonlinearity power >= 3
    int sigma = -1;      // +1 focusing, -1 defocusing
    double s = 0.3;      // target regularity
    int dimension = 3;

    double critical_exponent() const {
        return 0.5 * dimension - 2.0 / double(p - 1);
    }

    // Supercriticality 0 < s < s_c is the regime of the inflation runs;
    // the profile experiments only need the bubble to be well-formed
    // (0 < s < d/2), e.g. in d = 1 where s_c < 0 for p = 3.
    void validate(bool require_supercritical = true) const {
        if (p < 3 || p % 2 == 0) throw DomainError("ProblemParams: p must be odd, p >= 3");
        if (sigma != 1 && sigma != -1) throw DomainError("ProblemParams: sigma must be +-1");
        if (dimension < 1 || dimension > 3) throw DomainError("ProblemParams: dimension");
        if (!(s > 0.0 && s < 0.5 * dimension))
            throw DomainError("ProblemParams: need 0 < s < d/2");
        if (require_supercritical && !(s < critical_exponent()))
            throw DomainError("ProblemParams: need s < s_c = d/2 - 2/(p-1)");
    }
};

// Schedule for one concentration scale n:
//   kappa_n = log(n)^{-gamma}
//   lambda_n = kappa_n^{(p-1)/2} n^{(d/2-s)(p-1)/2}
//   eps_n = 1/(100 n)
//   t_n = lambda_n^{-2} log(n)^{(beta-gamma)(p-1)}
struct BubbleParams {
    double n;
    double gamma = 0.05;
    double beta = 0.12;

    BubbleParams(double n_, double gamma_, double beta_, const ProblemParams& pp)
        : n(n_), gamma(gamma_), beta(beta_) {
        if (!(n >= std::exp(1.0)))
            throw DomainError("BubbleParams: need n >= e so log(n) >= 1");
        if (!(gamma > 0.0 && gamma < beta && beta < 1.0))
            throw DomainError("BubbleParams: need 0 < gamma < beta < 1");
        if (!((pp.p - 1) * beta < 0.5))
            throw DomainError("BubbleParams: need (p-1) beta < 1/2");
        if (!(gamma < 0.5 * beta))
            throw DomainError("BubbleParams: need gamma < beta/2");
    }

    double kappa() const { return std::pow(std::log(n), -gamma); }

    double lambda(const ProblemParams& pp) const {
        const double half_pm1 = 0.5 * double(pp.p - 1);
        return std::pow(kappa(), half_pm1) *
               std::pow(n, (0.5 * pp.dimension - pp.s) * half_pm1);
    }

    double eps() const { return 1.0 / (100.0 * n); }

    double t(const ProblemParams& pp) const {
        const double lam = lambda(pp);
        return std::pow(std::log(n), (beta - gamma) * double(pp.p - 1)) / (lam * lam);
    }

    // Phase accumulated by time t_n: t_n lambda_n^2 = log(n)^{(beta-gamma)(p-1)}.
    double winding(const ProblemParams& pp) const {
        return std::pow(std::log(n), (beta - gamma) * double(pp.p - 1));
    }
};

} // namespace nlse

#pragma once

// The tanghuru: a truncated superposition of bubbles across a ladder of
// concentration scales n_k, plus a smooth compactly supported background.
// Ladders come in two modes: the double-exponential n_k = e^{a^k} (only
// the first rungs of which are ever resolvable) and the resolvable
// geometric substitute n_k = n0 r^k.

#include <optional>
#include <vector>

#include "nlse/bubbles.hpp"
#include "nlse/norms.hpp"

namespace nlse {

struct TanghuruSpec {
    enum class Ladder { paper, geometric };

    int k0 = 0;
    int K = 3;
    Ladder ladder = Ladder::geometric;
    double a = 5.0;       // paper mode: n_k = e^{a^k}, a > 4
    double n0 = 4.0;      // geometric mode: n_k = n0 r^k
    double ratio = 2.0;
    double gamma = 0.05;
    double beta = 0.12;
    std::vector<std::array<double, 3>> centers; // empty = all at the origin
    std::optional<Field> background;            // empty = zero

    double scale(int k) const {
        if (ladder == Ladder::paper) return std::exp(std::pow(a, double(k)));
        return n0 * std::pow(ratio, double(k));
    }

    std::array<double, 3> center(int k) const {
        if (centers.empty()) return {0.0, 0.0, 0.0};
        return centers[std::size_t(k - k0)];
    }

    BubbleParams bubble(int k, const ProblemParams& pp) const {
        return BubbleParams(scale(k), gamma, beta, pp);
    }

    void validate(const ProblemParams& pp) const {
        if (K < k0) throw DomainError("TanghuruSpec: need K >= k0");
        if (ladder == Ladder::paper && !(a > 4.0))
            throw DomainError("TanghuruSpec: paper ladder needs a > 4");
        if (ladder == Ladder::geometric && !(ratio > 1.0 && n0 > 0.0))
            throw DomainError("TanghuruSpec: geometric ladder needs n0 > 0, r > 1");
        if (!centers.empty() && centers.size() != std::size_t(K - k0 + 1))
            throw DomainError("TanghuruSpec: need one center per rung");
        for (int k = k0; k <= K; ++k) (void)bubble(k, pp); // schedule constraints
    }
};

// f0 = u0 + sum_{k=k0}^K v_{0,k}. The finest rung must be resolved and
// every support (fattened by the coarsest mollification scale eps_{k0})
// must fit inside the box.
inline Field tanghuru(const ProblemParams& pp, const TanghuruSpec& spec,
                      const CutoffProfile& phi, const GridSpec& grid) {
    spec.validate(pp);
    const double fattening = spec.bubble(spec.k0, pp).eps();
    Field out = spec.background ? as_physical(*spec.background)
                                : Field(grid, Representation::physical);
    if (spec.background && spec.background->grid() != grid)
        throw DomainError("tanghuru: background grid mismatch");
    for (int k = spec.k0; k <= spec.K; ++k) {
        const BubbleParams bp = spec.bubble(k, pp);
        detail::check_bubble_geometry(grid, bp.n, spec.center(k), fattening);
        out = out + bubble_initial(pp, bp, phi, grid, spec.center(k));
    }
    return out;
}

// u_L^{eps}(t) = e^{it Delta} [ rho_eps * u0 + sum_{l=k0}^{k-1} rho_eps * v_{0,l} ]:
// the exact free evolution of the mollified background and all bubbles
// coarser than rung k.
inline Field linear_correction(const ProblemParams& pp, const TanghuruSpec& spec,
                               const CutoffProfile& phi, const Mollifier& rho,
                               const GridSpec& grid, int k, double eps, double t) {
    if (k < spec.k0 || k > spec.K)
        throw DomainError("linear_correction: rung index out of range");
    Field acc = spec.background ? as_physical(*spec.background)
                                : Field(grid, Representation::physical);
    for (int l = spec.k0; l < k; ++l)
        acc = acc + bubble_initial(pp, spec.bubble(l, pp), phi, grid, spec.center(l));
    Field spectral = mollify(to_spectral(acc), rho, eps);
    return to_physical(apply_multiplier(spectral, symbols::free_propagator(t)));
}

// sum_{l=k+1}^K rho_eps * v_{0,l}: the closed form of w(0) for rung k.
inline Field fine_remainder(const ProblemParams& pp, const TanghuruSpec& spec,
                            const CutoffProfile& phi, const Mollifier& rho,
                            const GridSpec& grid, int k, double eps) {
    Field acc(grid, Representation::physical);
    for (int l = k + 1; l <= spec.K; ++l)
        acc = acc + bubble_initial(pp, spec.bubble(l, pp), phi, grid, spec.center(l));
    return mollify(acc, rho, eps);
}

// Estimate of the discarded tail sum_{k>K} ||v_{0,k}||_{H^s}, using the
// measured per-bubble norm constant of the last retained rung. Only the
// paper ladder has a summable tail (kappa_{n_k} = a^{-k gamma} is
// geometric); for a geometric ladder the next-rung norm is reported as a
// diagnostic and `summable` is false.
struct TailEstimate {
    double value = 0.0;
    bool summable = false;
};

inline TailEstimate truncation_tail(const ProblemParams& pp, const TanghuruSpec& spec,
                                    const CutoffProfile& phi, const GridSpec& grid,
                                    double s) {
    const BubbleParams last = spec.bubble(spec.K, pp);
    // hs_norm(v_{0,K}) = kappa * X with X stable across scales.
    const double x = hs_norm(bubble_initial(pp, last, phi, grid, spec.center(spec.K)), s) /
                     last.kappa();
    TailEstimate tail;
    if (spec.ladder == TanghuruSpec::Ladder::paper) {
        // kappa_{n_k} = a^{-k gamma}: tail = X a^{-(K+1) gamma} / (1 - a^{-gamma}).
        const double q = std::pow(spec.a, -spec.gamma);
        tail.value = x * std::pow(q, double(spec.K + 1)) / (1.0 - q);
        tail.summable = true;
    } else {
        const double n_next = spec.scale(spec.K + 1);
        tail.value = x * std::pow(std::log(n_next), -spec.gamma);
        tail.summable = false;
    }
    return tail;
}

} // namespace nlse

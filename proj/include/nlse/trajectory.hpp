#pragma once

// Trajectory records and space-time Lebesgue norms L^q_t L^r_x, discretized
// by composite trapezoid over the stored snapshot times.

#include <cmath>
#include <vector>

#include "nlse/field.hpp"
#include "nlse/multipliers.hpp"
#include "nlse/norms.hpp"

namespace nlse {

class TrajectoryRecord {
  public:
    TrajectoryRecord() = default;

    void push(double t, Field snapshot) {
        if (!times_.empty()) {
            if (t <= times_.back())
                throw DomainError("TrajectoryRecord: times must be strictly increasing");
            if (snapshot.grid() != snapshots_.front().grid())
                throw DomainError("TrajectoryRecord: snapshots must share one grid");
        }
        times_.push_back(t);
        snapshots_.push_back(std::move(snapshot));
    }

    std::size_t size() const { return times_.size(); }
    const std::vector<double>& times() const { return times_; }
    const Field& snapshot(std::size_t i) const { return snapshots_[i]; }

  private:
    std::vector<double> times_;
    std::vector<Field> snapshots_;
};

namespace detail {

// Trapezoid rule over the trajectory of per-snapshot values g(i).
template <class G>
double trapezoid_in_time(const std::vector<double>& times, G&& g) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < times.size(); ++i)
        acc += 0.5 * (times[i + 1] - times[i]) * (g(i) + g(i + 1));
    return acc;
}

} // namespace detail

// || f ||_{L^q_t L^r_x}: q-th root of the trapezoid integral of
// lp_norm(.,r)^q; q = infinity takes the max over stamps.
inline double spacetime_norm(const TrajectoryRecord& tr, double q, double r) {
    if (tr.size() < 2)
        throw InsufficientDataError("spacetime_norm: need at least 2 time stamps");
    if (std::isinf(q)) {
        double mx = 0.0;
        for (std::size_t i = 0; i < tr.size(); ++i)
            mx = std::max(mx, lp_norm(tr.snapshot(i), r));
        return mx;
    }
    const double integral = detail::trapezoid_in_time(
        tr.times(), [&](std::size_t i) { return std::pow(lp_norm(tr.snapshot(i), r), q); });
    return std::pow(integral, 1.0 / q);
}

// Refined Strichartz norm: sum of the L^{q}_{t,x} norms, q in {4, 5, 30/7},
// of <grad>^s applied to every snapshot.
inline double stilde_norm(const TrajectoryRecord& tr, double s) {
    if (tr.size() < 2)
        throw InsufficientDataError("stilde_norm: need at least 2 time stamps");
    TrajectoryRecord filtered;
    for (std::size_t i = 0; i < tr.size(); ++i)
        filtered.push(tr.times()[i],
                      apply_multiplier(as_spectral(tr.snapshot(i)), symbols::bessel_power(s)));
    const double exponents[3] = {4.0, 5.0, 30.0 / 7.0};
    double acc = 0.0;
    for (double q : exponents) acc += spacetime_norm(filtered, q, q);
    return acc;
}

} // namespace nlse

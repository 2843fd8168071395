#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "hyperscat/errors.hpp"
#include "hyperscat/linalg.hpp"

namespace hyperscat {

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double initial_step = 0.0;  // 0 = choose automatically
    // Step underflow threshold, scaled by (1 + |t|); crossing it raises
    // StiffnessError.
    double min_step_floor = 1e-13;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double dp_e[7] = {35.0 / 384 - 5179.0 / 57600,
                                   0.0,
                                   500.0 / 1113 - 7571.0 / 16695,
                                   125.0 / 192 - 393.0 / 640,
                                   -2187.0 / 6784 + 92097.0 / 339200,
                                   11.0 / 84 - 187.0 / 2100,
                                   -1.0 / 40};

} // namespace detail

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) for the small dense
// complex systems used throughout. State is any Eigen matrix/vector type.
//
// rhs:  rhs(t, y, dydt)
// sink: called at every time listed in out_times (sorted in the direction of
//       integration); pass an empty list to only obtain the final state.
template <typename State, typename RHS, typename Sink>
void rk45_integrate(RHS&& rhs, double t0, double t1, State& y, const OdeOptions& opt,
                    const std::vector<double>& out_times, Sink&& sink) {
    if (t0 == t1) {
        for (double tq : out_times) {
            (void)tq;
            sink(t0, y);
        }
        return;
    }
    const double dir = (t1 > t0) ? 1.0 : -1.0;

    State k[7];
    for (auto& s : k) s = y;
    State y_new = y, y_err = y, y_stage = y;

    rhs(t0, y, k[0]);

    double h = opt.initial_step;
    if (h == 0.0) {
        const double fn = k[0].norm();
        const double yn = std::max(y.norm(), 1e-8);
        h = (fn > 0) ? 0.01 * yn / fn : 1e-3;
    }
    h = std::min(h, opt.max_step);
    h = std::min(h, std::abs(t1 - t0));
    h *= dir;

    std::size_t next_out = 0;
    double t = t0;
    bool fsal_valid = true;

    while (dir * (t1 - t) > 0) {
        double t_target = t1;
        if (next_out < out_times.size() && dir * (out_times[next_out] - t_target) < 0)
            t_target = out_times[next_out];
        if (dir * (t + h - t_target) > 0) h = t_target - t;

        if (std::abs(h) < opt.min_step_floor * (1.0 + std::abs(t)))
            throw StiffnessError("rk45: step underflow at t = " + std::to_string(t));

        if (!fsal_valid) {
            rhs(t, y, k[0]);
            fsal_valid = true;
        }
        for (int s = 1; s < 7; ++s) {
            y_stage = y;
            for (int j = 0; j < s; ++j)
                if (detail::dp_a[s][j] != 0.0) y_stage += (h * detail::dp_a[s][j]) * k[j];
            rhs(t + detail::dp_c[s] * h, y_stage, k[s]);
        }
        y_new = k[6];  // stage 7 state equals the 5th-order solution
        y_new = y;
        for (int s = 0; s < 7; ++s)
            if (detail::dp_a[6][s >= 6 ? 5 : s] != 0.0 && s < 6)
                y_new += (h * detail::dp_a[6][s]) * k[s];
        y_err = h * detail::dp_e[0] * k[0];
        for (int s = 1; s < 7; ++s)
            if (detail::dp_e[s] != 0.0) y_err += (h * detail::dp_e[s]) * k[s];

        // Componentwise mixed tolerance.
        double err = 0.0;
        const auto* ye = y_err.data();
        const auto* ya = y.data();
        const auto* yb = y_new.data();
        const Eigen::Index n = y.size();
        for (Eigen::Index i = 0; i < n; ++i) {
            const double sc =
                opt.abs_tol + opt.rel_tol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            const double q = std::abs(ye[i]) / sc;
            err += q * q;
        }
        err = std::sqrt(err / static_cast<double>(n));

        if (err <= 1.0) {
            t += h;
            y.swap(y_new);
            k[0].swap(k[6]);  // FSAL
            while (next_out < out_times.size() &&
                   dir * (out_times[next_out] - t) <= 1e-14 * (1.0 + std::abs(t))) {
                sink(t, y);
                ++next_out;
            }
        } else {
            fsal_valid = true;  // k[0] still matches y
        }
        const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
        h *= fac;
        if (std::abs(h) > opt.max_step) h = dir * opt.max_step;
    }
}

template <typename State, typename RHS>
void rk45_integrate(RHS&& rhs, double t0, double t1, State& y, const OdeOptions& opt) {
    rk45_integrate(std::forward<RHS>(rhs), t0, t1, y, opt, {}, [](double, const State&) {});
}

} // namespace hyperscat

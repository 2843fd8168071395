#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "hyperscat/errors.hpp"

namespace hyperscat {

// 15-point Gauss-Kronrod rule with embedded Gauss-7 error estimate.
namespace gk {

inline constexpr std::array<double, 8> kron_x = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kron_w = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

// Gauss-7 weights for kron_x indices {1, 3, 5, 7}.
inline constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

} // namespace gk

template <typename T>
struct QuadResult {
    T value{};
    double error = 0.0;
};

template <typename F>
auto gk15(F&& f, double a, double b) {
    using T = decltype(f(0.0));
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    T kron{};
    T gauss{};
    for (int i = 0; i < 8; ++i) {
        const double dx = h * gk::kron_x[static_cast<std::size_t>(i)];
        T v;
        if (i == 7) {
            v = f(c);
            kron += gk::kron_w[7] * v;
            gauss += gk::gauss_w[3] * v;
        } else {
            v = f(c - dx) + f(c + dx);
            kron += gk::kron_w[static_cast<std::size_t>(i)] * v;
            if (i % 2 == 1) gauss += gk::gauss_w[static_cast<std::size_t>(i / 2)] * v;
        }
    }
    QuadResult<T> r;
    r.value = h * kron;
    r.error = std::abs(h) * std::abs(kron - gauss);
    return r;
}

// Adaptive bisection on top of GK15. Panels are halved until the summed
// Kronrod-Gauss discrepancy meets abs_tol.
template <typename F>
auto adaptive_gk(F&& f, double a, double b, double abs_tol, int max_depth = 40) {
    using T = decltype(f(0.0));
    struct Panel {
        double a, b;
        int depth;
    };
    std::vector<Panel> stack{{a, b, 0}};
    T total{};
    double err_total = 0.0;
    while (!stack.empty()) {
        const Panel p = stack.back();
        stack.pop_back();
        auto r = gk15(f, p.a, p.b);
        const double local_tol = abs_tol * std::abs(p.b - p.a) / std::abs(b - a);
        if (r.error <= local_tol || p.depth >= max_depth) {
            if (p.depth >= max_depth && r.error > 16 * local_tol)
                throw QuadratureError("adaptive_gk: panel refinement did not converge");
            total += r.value;
            err_total += r.error;
        } else {
            const double m = 0.5 * (p.a + p.b);
            stack.push_back({p.a, m, p.depth + 1});
            stack.push_back({m, p.b, p.depth + 1});
        }
    }
    return QuadResult<T>{total, err_total};
}

struct TailEstimate {
    double value = 0.0;      // integral over [T, +inf) (signed t handled by caller)
    double remainder = 0.0;  // certified estimate for the part beyond the last panel
    bool converged = false;
};

// Improper-integral tail by dyadic extension: integrate [T,2T], [2T,4T], ...
// and close with a geometric-ratio extrapolation once consecutive panel
// integrals settle into a contraction. Integrands are assumed eventually
// monotone in magnitude (the |d/dt| envelopes used here all are).
template <typename F>
TailEstimate dyadic_tail(F&& f, double t_start, double abs_tol, int max_doublings = 48) {
    TailEstimate out;
    double lo = t_start;
    double prev = 0.0;
    bool have_prev = false;
    for (int k = 0; k < max_doublings; ++k) {
        const double hi = 2.0 * lo;
        const double panel = adaptive_gk(f, lo, hi, abs_tol * 0.25).value;
        out.value += panel;
        if (have_prev && std::abs(prev) > 0.0) {
            const double rho = std::abs(panel) / std::abs(prev);
            if (rho < 0.97) {
                const double rem = std::abs(panel) * rho / (1.0 - rho);
                if (rem <= abs_tol || std::abs(panel) <= abs_tol * 1e-3) {
                    out.remainder = rem;
                    out.value += (panel >= 0 ? rem : -rem);
                    out.converged = true;
                    return out;
                }
            }
        }
        if (std::abs(panel) < abs_tol * 1e-6) {
            out.remainder = std::abs(panel);
            out.converged = true;
            return out;
        }
        have_prev = true;
        prev = panel;
        lo = hi;
    }
    out.remainder = std::abs(prev);
    return out;
}

} // namespace hyperscat

#pragma once

#include <cmath>
#include <limits>

#include "dos/util.hpp"

namespace dos {

// Composite-midpoint integration plan. `panels` is the starting panel count,
// `tail_cutoff` the half-width K used for improper integrals, and
// `refine_factor` the panel multiplier applied per refinement step.
struct QuadratureSpec {
    long panels = 4096;
    double tail_cutoff = 50.0;
    int refine_factor = 2;

    void validate() const;  // panels >= 16, tail_cutoff >= 10, refine_factor >= 2
};

inline constexpr long kPanelCap = 1L << 24;

struct RefineInfo {
    double value = 0.0;
    long panels_used = 0;
    bool converged = false;
    double last_delta = std::numeric_limits<double>::infinity();
};

// Midpoint rule with fixed-order compensated summation.
template <class F>
double midpoint(F&& f, double a, double b, long panels) {
    const double h = (b - a) / static_cast<double>(panels);
    KahanSum acc;
    for (long i = 0; i < panels; ++i) acc.add(f(a + (static_cast<double>(i) + 0.5) * h));
    return acc.value() * h;
}

// Midpoint rule on [-half, half] for even integrands. For even panel counts
// the nodes pair up as +/-x, so each pair is evaluated once.
template <class F>
double midpoint_even(F&& f, double half, long panels) {
    if (panels % 2 != 0) return midpoint(f, -half, half, panels);
    const double h = 2.0 * half / static_cast<double>(panels);
    KahanSum acc;
    for (long j = 0; j < panels / 2; ++j) acc.add(f((static_cast<double>(j) + 0.5) * h));
    return 2.0 * acc.value() * h;
}

namespace detail {

template <class Eval>
RefineInfo refine_loop(Eval&& eval, const QuadratureSpec& quad, double stab_tol, long cap) {
    long p = quad.panels;
    RefineInfo out;
    out.value = eval(p);
    out.panels_used = p;
    while (true) {
        if (p > cap / quad.refine_factor) break;  // next step would exceed the cap
        const long pn = p * quad.refine_factor;
        const double vn = eval(pn);
        out.last_delta = std::abs(vn - out.value);
        out.value = vn;
        out.panels_used = pn;
        p = pn;
        if (out.last_delta < stab_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

}  // namespace detail

// Panel refinement until two successive values differ by less than stab_tol;
// stops unconverged (with the achieved delta) at the panel cap.
template <class F>
RefineInfo refine_midpoint(F&& f, double a, double b, const QuadratureSpec& quad, double stab_tol,
                           long cap = kPanelCap) {
    return detail::refine_loop([&](long p) { return midpoint(f, a, b, p); }, quad, stab_tol, cap);
}

// Same refinement for even integrands on [-half, half].
template <class F>
RefineInfo refine_midpoint_even(F&& f, double half, const QuadratureSpec& quad, double stab_tol,
                                long cap = kPanelCap) {
    return detail::refine_loop([&](long p) { return midpoint_even(f, half, p); }, quad, stab_tol,
                               cap);
}

}  // namespace dos

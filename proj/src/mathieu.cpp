#include "dos/mathieu.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dos/errors.hpp"

namespace dos {

namespace {

constexpr double kDosStabTol = 1e-8;

void check_k(double k) {
    if (!(k >= -std::numbers::pi && k <= std::numbers::pi))
        throw InvalidInput("Bloch builder: k must lie in [-pi, pi]");
}

void check_lambda(double lambda) {
    if (!std::isfinite(lambda)) throw InvalidInput("Bloch builder: lambda must be finite");
}

}  // namespace

long MathieuParams::circle_size() const { return std::llround(1.0 / eps); }

void MathieuParams::validate_discrete() const {
    check_lambda(lambda);
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput("MathieuParams: eps must lie in (0, 1)");
    const long n = circle_size();
    if (n <= 0 || std::abs(eps * static_cast<double>(n) - 1.0) > 1e-9)
        throw InvalidInput("MathieuParams: 1/eps must be an integer");
    if (n % 2 != 0) throw InvalidInput("MathieuParams: 1/eps must be even");
}

void MathieuParams::validate_q() const {
    if (!(q > 10.0 / 7.0 && q < 1.5))
        throw InvalidParameter("MathieuParams: q must lie in (10/7, 3/2)");
}

void BlochIndexWindow::validate() const {
    if (L < 1) throw InvalidInput("BlochIndexWindow: L must be >= 1");
}

SymTriMatrix build_dc(double k, double lambda, BlochIndexWindow window) {
    window.validate();
    check_k(k);
    check_lambda(lambda);
    const long L = window.L;
    SymTriMatrix m;
    m.diag.resize(window.dim());
    m.offdiag.assign(window.dim() - 1, lambda);
    for (long j = 0; j <= 2 * L; ++j) {
        const double x = k + 2.0 * std::numbers::pi * static_cast<double>(j - L);
        m.diag[static_cast<std::size_t>(j)] = x * x;
    }
    return m;
}

SymTriMatrix build_dd_scaled(double k, const MathieuParams& params, BlochIndexWindow window) {
    window.validate();
    check_k(k);
    params.validate_discrete();
    const long L = window.L;
    if (2 * L > params.circle_size())
        throw WindowTooLarge("build_dd_scaled: window exceeds half the Fourier circle");
    const double inv_eps = 1.0 / params.eps;
    SymTriMatrix m;
    m.diag.resize(window.dim());
    m.offdiag.assign(window.dim() - 1, params.lambda);
    for (long j = 0; j <= 2 * L; ++j) {
        const double x = k + 2.0 * std::numbers::pi * static_cast<double>(j - L);
        // 2(1 - cos(eps x))/eps^2 in its exact nonnegative form.
        const double s = 2.0 * inv_eps * std::sin(0.5 * params.eps * x);
        m.diag[static_cast<std::size_t>(j)] = s * s;
    }
    return m;
}

BlochIndexWindow default_window(const MathieuParams& params) {
    if (params.L_override < 0) throw InvalidInput("MathieuParams: L_override must be positive");
    if (params.L_override > 0) return BlochIndexWindow{params.L_override};
    params.validate_q();
    if (!(params.eps > 0.0 && params.eps < 1.0))
        throw InvalidInput("MathieuParams: eps must lie in (0, 1)");
    const double half_width = std::pow(params.eps, 0.5 * params.q - 1.0);
    const long L = std::max<long>(8, static_cast<long>(std::ceil(2.0 * half_width)));
    return BlochIndexWindow{L};
}

namespace {

// k-quadrature of the Lorentzian trace at one fixed window; the trace is even
// in k (index reversal conjugates the two Bloch matrices), so fold.
template <class Build>
RefineInfo dos_fixed_window(double mu, Build&& build, const QuadratureSpec& kquad) {
    if (!std::isfinite(mu)) throw InvalidInput("dos_mathieu: mu must be finite");
    kquad.validate();
    const double pref = 1.0 / (2.0 * std::numbers::pi);
    auto f = [&](double k) { return pref * lorentzian_trace(build(k), mu); };
    return refine_midpoint_even(f, std::numbers::pi, kquad, kDosStabTol);
}

// Window doubling until the value moves by < 1e-8. Reports the finest window
// actually evaluated. Hitting the discrete cap means the window covers the
// whole Fourier circle, so that truncation is exact and counts as converged.
template <class Eval>
MathieuDosInfo adapt_window(long l_start, long cap, bool cap_is_exact, Eval&& eval) {
    long L = std::min(l_start, cap);
    MathieuDosInfo out;
    RefineInfo cur = eval(L);
    while (true) {
        if (L >= cap) {
            out.window_converged = cap_is_exact;
            break;
        }
        const long ln = std::min(2 * L, cap);
        const RefineInfo nxt = eval(ln);
        out.window_delta = std::abs(nxt.value - cur.value);
        cur = nxt;
        L = ln;
        if (out.window_delta < kDosStabTol) {
            out.window_converged = true;
            break;
        }
    }
    out.value = cur.value;
    out.L_used = L;
    out.k_panels_used = cur.panels_used;
    out.panels_converged = cur.converged;
    out.panel_delta = cur.last_delta;
    return out;
}

}  // namespace

RefineInfo dos_mathieu_continuum_fixed_window(double mu, double lambda, long L,
                                              const QuadratureSpec& kquad) {
    const BlochIndexWindow w{L};
    return dos_fixed_window(mu, [&](double k) { return build_dc(k, lambda, w); }, kquad);
}

RefineInfo dos_mathieu_discrete_fixed_window(double mu, const MathieuParams& params, long L,
                                             const QuadratureSpec& kquad) {
    const BlochIndexWindow w{L};
    return dos_fixed_window(mu, [&](double k) { return build_dd_scaled(k, params, w); }, kquad);
}

MathieuDosInfo dos_mathieu_continuum_info(double mu, double lambda, BlochIndexWindow window,
                                          const QuadratureSpec& kquad) {
    window.validate();
    return adapt_window(window.L, kContinuumWindowCap, false, [&](long L) {
        return dos_mathieu_continuum_fixed_window(mu, lambda, L, kquad);
    });
}

double dos_mathieu_continuum(double mu, double lambda, BlochIndexWindow window,
                             const QuadratureSpec& kquad) {
    return dos_mathieu_continuum_info(mu, lambda, window, kquad).value;
}

MathieuDosInfo dos_mathieu_discrete_scaled_info(double mu, const MathieuParams& params,
                                                BlochIndexWindow window,
                                                const QuadratureSpec& kquad) {
    window.validate();
    params.validate_discrete();
    const long cap = params.circle_size() / 2;
    return adapt_window(window.L, cap, true, [&](long L) {
        return dos_mathieu_discrete_fixed_window(mu, params, L, kquad);
    });
}

double dos_mathieu_discrete_scaled(double mu, const MathieuParams& params, BlochIndexWindow window,
                                   const QuadratureSpec& kquad) {
    return dos_mathieu_discrete_scaled_info(mu, params, window, kquad).value;
}

}  // namespace dos

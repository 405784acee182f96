#pragma once

#include <limits>

#include "dos/quadrature.hpp"
#include "dos/tridiag.hpp"

namespace dos {

// Which of the two Bloch families an operation refers to.
enum class ModelKind { continuum, discrete };

// Physical/numerical parameters for the Mathieu models. `eps` only matters
// for the discrete model and must be the reciprocal of an even integer so the
// index window can reach exactly half the Fourier circle. `q` controls the
// default truncation window. `L_override` (0 = unset) pins the starting
// window instead.
struct MathieuParams {
    double lambda = 0.0;
    double eps = 1.0 / 100.0;
    double q = 16.0 / 11.0;
    long L_override = 0;

    long circle_size() const;        // N = 1/eps, the discrete Fourier circle
    void validate_discrete() const;  // eps in (0,1), 1/eps a positive even integer
    void validate_q() const;         // q in (10/7, 3/2)
};

// Symmetric index window |n| <= L around the center Fourier mode.
struct BlochIndexWindow {
    long L = 1;

    std::size_t dim() const { return static_cast<std::size_t>(2 * L + 1); }
    void validate() const;  // L >= 1
};

// Continuum Bloch Hamiltonian at quasimomentum k: diagonal (k + 2 pi n)^2 for
// n = -L..L, constant off-diagonal lambda. k is accepted on [-pi, pi].
SymTriMatrix build_dc(double k, double lambda, BlochIndexWindow window);

// Scaled discrete Bloch Hamiltonian: diagonal 4 sin^2(eps (k + 2 pi n)/2)/eps^2,
// constant off-diagonal lambda. Requires 2L <= 1/eps (window-too-large error
// otherwise): beyond half the circle the Fourier indices wrap.
SymTriMatrix build_dd_scaled(double k, const MathieuParams& params, BlochIndexWindow window);

// Starting window: L_override when set, else max(8, ceil(2 eps^{q/2-1})).
BlochIndexWindow default_window(const MathieuParams& params);

// Window-growth ceiling for the continuum model (the discrete model is capped
// by its circle at L = 1/(2 eps), where the truncation is exact).
inline constexpr long kContinuumWindowCap = 4096;

// Outcome of the doubly adaptive DoS evaluation: value at the finest window
// computed, with the stability evidence for both refinement directions.
struct MathieuDosInfo {
    double value = 0.0;
    long L_used = 0;
    long k_panels_used = 0;
    bool panels_converged = false;
    bool window_converged = false;
    double panel_delta = std::numeric_limits<double>::infinity();
    double window_delta = std::numeric_limits<double>::infinity();
};

// Single-window evaluation: (1/2 pi) Integral_{-pi..pi} of the Lorentzian
// trace of the Bloch matrix at fixed L, k-panels doubled to 1e-8 stability.
RefineInfo dos_mathieu_continuum_fixed_window(double mu, double lambda, long L,
                                              const QuadratureSpec& kquad);
RefineInfo dos_mathieu_discrete_fixed_window(double mu, const MathieuParams& params, long L,
                                             const QuadratureSpec& kquad);

// Doubly adaptive DoS: starting from `window`, L doubles until that changes
// the value by < 1e-8 (or the cap is reached; the discrete cap is exact, the
// continuum cap leaves window_converged false).
MathieuDosInfo dos_mathieu_continuum_info(double mu, double lambda, BlochIndexWindow window,
                                          const QuadratureSpec& kquad);
double dos_mathieu_continuum(double mu, double lambda, BlochIndexWindow window,
                             const QuadratureSpec& kquad);
MathieuDosInfo dos_mathieu_discrete_scaled_info(double mu, const MathieuParams& params,
                                                BlochIndexWindow window,
                                                const QuadratureSpec& kquad);
double dos_mathieu_discrete_scaled(double mu, const MathieuParams& params, BlochIndexWindow window,
                                   const QuadratureSpec& kquad);

}  // namespace dos

#include "dos/truncation.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "dos/errors.hpp"
#include "dos/util.hpp"

namespace dos {

namespace {

constexpr double kFitMagnitudeFloor = 1e-13;
constexpr double kDeltaLogFloor = 1e-300;

SymTriMatrix build_window(ModelKind kind, double k, const MathieuParams& params, long half_width) {
    const BlochIndexWindow w{half_width};
    return kind == ModelKind::continuum ? build_dc(k, params.lambda, w)
                                        : build_dd_scaled(k, params, w);
}

// Largest admissible half-width for the kind (the continuum one is
// unconstrained at probe scale).
long kind_cap(ModelKind kind, const MathieuParams& params) {
    return kind == ModelKind::discrete ? params.circle_size() / 2
                                       : std::numeric_limits<long>::max();
}

}  // namespace

void WindowTraceReport::validate() const {
    if (window_sums.size() != L_values.size())
        throw InvalidInput("WindowTraceReport: one sum per window required");
    if (!deltas.empty() && deltas.size() + 1 != window_sums.size())
        throw InvalidInput("WindowTraceReport: one delta per adjacent window pair");
    for (double d : deltas)
        if (!(d >= 0.0)) throw InvalidInput("WindowTraceReport: deltas must be nonnegative");
}

WindowTraceReport window_trace_sequence(ModelKind kind, double k, double mu,
                                        const MathieuParams& params,
                                        const std::vector<long>& L_values) {
    if (L_values.size() < 2) throw InvalidInput("window_trace_sequence: need >= 2 window sizes");
    for (std::size_t i = 0; i < L_values.size(); ++i) {
        if (L_values[i] < 1) throw InvalidInput("window_trace_sequence: windows must be >= 1");
        if (i > 0 && L_values[i] <= L_values[i - 1])
            throw InvalidInput("window_trace_sequence: windows must be strictly increasing");
    }
    if (!std::isfinite(mu)) throw InvalidInput("window_trace_sequence: mu must be finite");

    const long cap = kind_cap(kind, params);
    WindowTraceReport rep;
    rep.L_values = L_values;
    rep.window_sums.reserve(L_values.size());
    for (long L : L_values) {
        if (L > cap) throw WindowTooLarge("window_trace_sequence: window exceeds the circle cap");
        const long w = std::min(2 * L, cap);
        const SymTriMatrix m = build_window(kind, k, params, w);
        const std::vector<double> diag = lorentzian_diagonal_resolvent(m, mu);
        KahanSum s;
        for (long n = -L; n <= L; ++n) s.add(diag[static_cast<std::size_t>(w + n)]);
        rep.window_sums.push_back(s.value());
    }

    rep.deltas.reserve(L_values.size() - 1);
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i + 1 < rep.window_sums.size(); ++i) {
        const double d = std::abs(rep.window_sums[i + 1] - rep.window_sums[i]);
        rep.deltas.push_back(d);
        if (d > kDeltaLogFloor) {
            xs.push_back(static_cast<double>(L_values[i + 1]));
            ys.push_back(std::log(d));
        }
    }
    rep.fitted_decay = xs.size() >= 2 ? fit_line(xs, ys).slope
                                      : std::numeric_limits<double>::quiet_NaN();
    return rep;
}

double corner_truncation_gap(ModelKind kind, double k, double mu, const MathieuParams& params,
                             long L) {
    if (L < 2) throw InvalidInput("corner_truncation_gap: L must be >= 2");
    if (!std::isfinite(mu)) throw InvalidInput("corner_truncation_gap: mu must be finite");
    long w = (3 * L + 1) / 2;  // ceil(1.5 L)
    const long cap = kind_cap(kind, params);
    w = std::min(w, cap);
    if (w <= L) throw WindowTooLarge("corner_truncation_gap: embedding does not extend past L");

    const SymTriMatrix m = build_window(kind, k, params, w);
    const std::vector<double> diag = lorentzian_diagonal_resolvent(m, mu);
    KahanSum s;
    for (long n = L + 1; n <= w; ++n) s.add(diag[static_cast<std::size_t>(w + n)]);
    return s.value();
}

DecayFit combes_thomas_fit(const SymTriMatrix& m, double mu) {
    m.validate();
    if (m.dim() < 11) throw InvalidInput("combes_thomas_fit: dim must be >= 11");
    if (!std::isfinite(mu)) throw InvalidInput("combes_thomas_fit: mu must be finite");

    const std::size_t center = m.dim() / 2;
    const ResolventProfile prof = resolvent_row(m, ComplexShift{mu, -1.0}, center);
    std::vector<double> xs, ys;
    for (std::size_t n = 0; n < m.dim(); ++n) {
        const double mag = prof.magnitude[n];
        if (mag < kFitMagnitudeFloor) continue;
        xs.push_back(std::abs(static_cast<double>(n) - static_cast<double>(center)));
        ys.push_back(std::log(mag));
    }
    if (xs.size() < 5) throw InsufficientData("combes_thomas_fit: fewer than 5 usable entries");

    const LinearFit f = fit_line(xs, ys);
    DecayFit out;
    out.slope = f.slope;
    out.intercept = f.intercept;
    out.r_squared = f.r_squared;
    out.points_used = static_cast<long>(xs.size());
    return out;
}

double gershgorin_min_eig_bound(const SymTriMatrix& m) {
    m.validate();
    double lo, hi;
    m.gershgorin_bounds(lo, hi);
    return lo;
}

SymTriMatrix build_corner_block(ModelKind kind, double k, const MathieuParams& params,
                                long n_begin, long n_end) {
    if (n_begin > n_end) throw InvalidInput("build_corner_block: empty index block");
    if (!(k >= -std::numbers::pi && k <= std::numbers::pi))
        throw InvalidInput("build_corner_block: k must lie in [-pi, pi]");
    if (kind == ModelKind::discrete) {
        params.validate_discrete();
        if (n_end > params.circle_size() / 2 || n_begin < -params.circle_size() / 2)
            throw WindowTooLarge("build_corner_block: block leaves the Fourier circle");
    }
    const std::size_t dim = static_cast<std::size_t>(n_end - n_begin + 1);
    SymTriMatrix m;
    m.diag.resize(dim);
    m.offdiag.assign(dim > 1 ? dim - 1 : 0, params.lambda);
    const double inv_eps = 1.0 / params.eps;
    for (long n = n_begin; n <= n_end; ++n) {
        const double x = k + 2.0 * std::numbers::pi * static_cast<double>(n);
        const std::size_t j = static_cast<std::size_t>(n - n_begin);
        if (kind == ModelKind::continuum) {
            m.diag[j] = x * x;
        } else {
            const double s = 2.0 * inv_eps * std::sin(0.5 * params.eps * x);
            m.diag[j] = s * s;
        }
    }
    return m;
}

double shifted_square_min_eig_bound(const SymTriMatrix& m, double mu) {
    if (!std::isfinite(mu)) throw InvalidInput("shifted_square_min_eig_bound: mu must be finite");
    const double floor = gershgorin_min_eig_bound(m);
    const double gap = std::max(0.0, floor - mu);
    return 1.0 + gap * gap;
}

}  // namespace dos

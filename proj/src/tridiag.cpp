#include "dos/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dos/errors.hpp"
#include "dos/util.hpp"

namespace dos {

namespace {

using cd = std::complex<double>;

constexpr double kPivotFloor = 1e-300;
constexpr int kMaxBisectIter = 128;
constexpr int kMaxQlIter = 60;

}  // namespace

double SymTriMatrix::max_abs_entry() const {
    double m = 0.0;
    for (double v : diag) m = std::max(m, std::abs(v));
    for (double v : offdiag) m = std::max(m, std::abs(v));
    return m;
}

void SymTriMatrix::gershgorin_bounds(double& lo, double& hi) const {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(offdiag[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
}

double SymTriMatrix::gershgorin_radius() const {
    double lo, hi;
    gershgorin_bounds(lo, hi);
    return std::max(std::abs(lo), std::abs(hi));
}

void SymTriMatrix::validate() const {
    if (diag.empty()) throw InvalidInput("SymTriMatrix: dim must be >= 1");
    if (offdiag.size() + 1 != diag.size())
        throw InvalidInput("SymTriMatrix: offdiag length must be dim-1");
    for (double v : diag)
        if (!std::isfinite(v)) throw InvalidInput("SymTriMatrix: non-finite diagonal entry");
    for (double v : offdiag)
        if (!std::isfinite(v)) throw InvalidInput("SymTriMatrix: non-finite off-diagonal entry");
}

void ComplexShift::validate() const {
    if (im == 0.0 || !std::isfinite(im) || !std::isfinite(re))
        throw InvalidInput("ComplexShift: im must be finite and nonzero");
}

double default_eig_tol(const SymTriMatrix& m) {
    const double r = m.gershgorin_radius();
    return 1e-12 * (r > 0.0 ? r : 1.0);
}

double spectrum_slack(const SymTriMatrix& m) {
    return 32.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, m.max_abs_entry());
}

EigenSpectrum eig_bisection(const SymTriMatrix& m, double tol) {
    m.validate();
    if (!(tol > 0.0)) throw InvalidInput("eig_bisection: tol must be positive");

    const std::size_t n = m.dim();
    std::vector<double> e2(n > 1 ? n - 1 : 0);
    double max_e2 = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e2[i] = m.offdiag[i] * m.offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, max_e2);

    // Number of eigenvalues strictly below x, by counting negative Sturm pivots.
    auto count_below = [&](double x) {
        int cnt = 0;
        double d = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            d = m.diag[i] - x - (i > 0 ? e2[i - 1] / d : 0.0);
            if (std::abs(d) < pivmin) d = -pivmin;
            if (d < 0.0) ++cnt;
        }
        return cnt;
    };

    double lo, hi;
    m.gershgorin_bounds(lo, hi);
    // Nudge the outer bounds so every eigenvalue is strictly bracketed.
    const double pad = 2.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(lo) + std::abs(hi)) +
                       2.0 * pivmin;
    lo -= pad;
    hi += pad;

    const double eps = std::numeric_limits<double>::epsilon();
    EigenSpectrum out;
    out.method_tag = "bisection";
    out.values.resize(n);

    double carry_lo = lo;  // eigenvalues are ascending, so lower brackets can be carried
    for (std::size_t j = 0; j < n; ++j) {
        double a = carry_lo;
        double b = hi;
        for (int it = 0; it < kMaxBisectIter; ++it) {
            const double width = b - a;
            if (width <= 2.0 * eps * (std::abs(a) + std::abs(b)) +
                             std::numeric_limits<double>::min())
                break;
            const double mid = a + 0.5 * width;
            if (!(mid > a && mid < b)) break;  // interval exhausted at double resolution
            if (count_below(mid) <= static_cast<int>(j))
                a = mid;
            else
                b = mid;
        }
        out.values[j] = a + 0.5 * (b - a);
        carry_lo = a;
    }
    return out;
}

EigenSpectrum eig_ql(const SymTriMatrix& m, double tol) {
    m.validate();
    if (!(tol > 0.0)) throw InvalidInput("eig_ql: tol must be positive");

    const std::size_t n = m.dim();
    std::vector<double> d = m.diag;
    std::vector<double> e = m.offdiag;
    e.push_back(0.0);

    const double eps = std::numeric_limits<double>::epsilon();
    double f = 0.0;
    double tst1 = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
        tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
        std::size_t mm = l;
        while (mm < n - 1 && std::abs(e[mm]) > eps * tst1) ++mm;

        if (mm > l) {
            int iter = 0;
            do {
                if (++iter > kMaxQlIter) throw SolverBreakdown("eig_ql: iteration limit");
                // Implicit shift from the leading 2x2.
                double g = d[l];
                double p = (d[l + 1] - g) / (2.0 * e[l]);
                double r = std::hypot(p, 1.0);
                if (p < 0.0) r = -r;
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                const double h = g - d[l];
                for (std::size_t i = l + 2; i < n; ++i) d[i] -= h;
                f += h;

                // QL sweep with plane rotations.
                p = d[mm];
                double c = 1.0;
                double s = 0.0;
                for (std::size_t ii = mm; ii-- > l;) {
                    g = c * e[ii];
                    const double hh = c * p;
                    r = std::hypot(p, e[ii]);
                    e[ii + 1] = s * r;
                    s = e[ii] / r;
                    c = p / r;
                    p = c * d[ii] - s * g;
                    d[ii + 1] = hh + s * (c * g + s * d[ii]);
                }
                e[l] = s * p;
                d[l] = c * p;
            } while (std::abs(e[l]) > eps * tst1);
        }
        d[l] += f;
        e[l] = 0.0;
    }

    std::sort(d.begin(), d.end());
    EigenSpectrum out;
    out.values = std::move(d);
    out.method_tag = "ql";
    return out;
}

double lorentzian_trace(const SymTriMatrix& m, double mu) {
    if (!std::isfinite(mu)) throw InvalidInput("lorentzian_trace: mu must be finite");
    const EigenSpectrum s = eig_bisection(m, default_eig_tol(m));
    KahanSum acc;
    for (double v : s.values) {
        const double d = v - mu;
        acc.add(1.0 / (1.0 + d * d));
    }
    return acc.value();
}

namespace {

// Thomas algorithm on (m - z); reports failure instead of dividing by a
// collapsed pivot.
bool thomas_solve(const SymTriMatrix& m, cd z, const std::vector<cd>& rhs, std::vector<cd>& x) {
    const std::size_t n = m.dim();
    std::vector<cd> cp(n > 1 ? n - 1 : 0);
    x.assign(n, cd{});

    cd piv = cd(m.diag[0]) - z;
    if (std::abs(piv) < kPivotFloor) return false;
    if (n > 1) cp[0] = cd(m.offdiag[0]) / piv;
    x[0] = rhs[0] / piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = (cd(m.diag[i]) - z) - cd(m.offdiag[i - 1]) * cp[i - 1];
        if (std::abs(piv) < kPivotFloor) return false;
        if (i + 1 < n) cp[i] = cd(m.offdiag[i]) / piv;
        x[i] = (rhs[i] - cd(m.offdiag[i - 1]) * x[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= cp[i] * x[i + 1];
    return true;
}

// Partial-pivot banded elimination; row swaps introduce one extra
// superdiagonal of fill.
std::vector<cd> banded_pp_solve(const SymTriMatrix& m, cd z, std::vector<cd> b) {
    const std::size_t n = m.dim();
    std::vector<cd> dl(n > 1 ? n - 1 : 0), dd(n), du(n > 1 ? n - 1 : 0), du2(n > 2 ? n - 2 : 0);
    for (std::size_t i = 0; i < n; ++i) dd[i] = cd(m.diag[i]) - z;
    for (std::size_t i = 0; i + 1 < n; ++i) dl[i] = du[i] = cd(m.offdiag[i]);
    std::vector<char> swapped(n > 1 ? n - 1 : 0, 0);

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (std::abs(dd[i]) >= std::abs(dl[i])) {
            if (std::abs(dd[i]) < kPivotFloor) throw SolverBreakdown("banded solve: zero pivot");
            const cd fact = dl[i] / dd[i];
            dl[i] = fact;
            dd[i + 1] -= fact * du[i];
            if (i + 2 < n) du2[i] = cd{};
        } else {
            const cd fact = dd[i] / dl[i];
            dd[i] = dl[i];
            dl[i] = fact;
            const cd temp = du[i];
            du[i] = dd[i + 1];
            dd[i + 1] = temp - fact * dd[i + 1];
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du[i + 1];
            }
            swapped[i] = 1;
        }
    }
    if (std::abs(dd[n - 1]) < kPivotFloor) throw SolverBreakdown("banded solve: singular matrix");

    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!swapped[i]) {
            b[i + 1] -= dl[i] * b[i];
        } else {
            const cd temp = b[i];
            b[i] = b[i + 1];
            b[i + 1] = temp - dl[i] * b[i];
        }
    }
    b[n - 1] /= dd[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / dd[n - 2];
    for (std::size_t j = n > 2 ? n - 2 : 0; j-- > 0;) {
        b[j] = (b[j] - du[j] * b[j + 1] - du2[j] * b[j + 2]) / dd[j];
    }
    return b;
}

}  // namespace

std::vector<cd> solve_shifted(const SymTriMatrix& m, cd z, const std::vector<cd>& rhs) {
    m.validate();
    if (rhs.size() != m.dim()) throw InvalidInput("solve_shifted: rhs length mismatch");
    std::vector<cd> x;
    if (thomas_solve(m, z, rhs, x)) return x;
    return banded_pp_solve(m, z, rhs);
}

std::vector<double> lorentzian_diagonal_resolvent(const SymTriMatrix& m, double mu) {
    m.validate();
    if (!std::isfinite(mu)) throw InvalidInput("lorentzian_diagonal_resolvent: mu must be finite");
    const std::size_t n = m.dim();
    std::vector<double> out(n);
    std::vector<cd> rhs(n, cd{});
    const cd zm{mu, 1.0};   // (m - mu - i)
    const cd zp{mu, -1.0};  // (m - mu + i)
    for (std::size_t j = 0; j < n; ++j) {
        rhs[j] = cd{1.0, 0.0};
        const std::vector<cd> xm = solve_shifted(m, zm, rhs);
        const std::vector<cd> xp = solve_shifted(m, zp, rhs);
        const cd v = cd{0.0, -0.5} * (xm[j] - xp[j]);
        out[j] = v.real();
        rhs[j] = cd{};
    }
    return out;
}

double lorentzian_trace_resolvent(const SymTriMatrix& m, double mu) {
    const std::vector<double> d = lorentzian_diagonal_resolvent(m, mu);
    KahanSum acc;
    for (double v : d) acc.add(v);
    return acc.value();
}

ResolventProfile resolvent_row(const SymTriMatrix& m, const ComplexShift& shift, std::size_t row) {
    m.validate();
    shift.validate();
    if (row >= m.dim()) throw InvalidInput("resolvent_row: row out of range");
    std::vector<cd> rhs(m.dim(), cd{});
    rhs[row] = cd{1.0, 0.0};
    const std::vector<cd> x = solve_shifted(m, shift.value(), rhs);
    ResolventProfile p;
    p.row = row;
    p.shift = shift;
    p.magnitude.resize(m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) p.magnitude[i] = std::abs(x[i]);
    return p;
}

}  // namespace dos

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace dos {

// Real symmetric tridiagonal matrix: main diagonal plus one symmetric band.
struct SymTriMatrix {
    std::vector<double> diag;
    std::vector<double> offdiag;  // length dim()-1

    std::size_t dim() const { return diag.size(); }
    double max_abs_entry() const;
    // Union of Gershgorin discs: every eigenvalue lies in [lo, hi].
    void gershgorin_bounds(double& lo, double& hi) const;
    // Bound on the spectral radius from the disc union.
    double gershgorin_radius() const;
    void validate() const;  // throws InvalidInput on shape or finiteness violations
};

// Eigenvalues in ascending order plus a tag naming the producing algorithm.
struct EigenSpectrum {
    std::vector<double> values;
    std::string method_tag;
};

// Complex energy re + i*im used to shift resolvents off the real axis.
struct ComplexShift {
    double re = 0.0;
    double im = 1.0;

    std::complex<double> value() const { return {re, im}; }
    void validate() const;  // im != 0
};

// Magnitudes of one row of (m - shift)^{-1}.
struct ResolventProfile {
    std::size_t row = 0;
    ComplexShift shift;
    std::vector<double> magnitude;
};

// Requested bisection tolerance: 1e-12 of the Gershgorin radius. The solver
// refines each eigenvalue to the machine-precision floor regardless, so this
// only matters as the documented contract level.
double default_eig_tol(const SymTriMatrix& m);

// Absolute allowance covering the eigensolvers' backward error,
// 32 eps max(1, max|entry|): soundness comparisons against computed
// eigenvalues (e.g. Gershgorin floors that are attained exactly) must permit
// this much slack or they test rounding, not the bound.
double spectrum_slack(const SymTriMatrix& m);

// All eigenvalues via Sturm-sequence counting and interval bisection.
EigenSpectrum eig_bisection(const SymTriMatrix& m, double tol);

// All eigenvalues via implicit-shift QL iteration.
EigenSpectrum eig_ql(const SymTriMatrix& m, double tol);

// Tr (1 + (m - mu)^2)^{-1} summed over the bisection spectrum in ascending
// index order with compensated accumulation.
double lorentzian_trace(const SymTriMatrix& m, double mu);

// Same trace from resolvent diagonals: (-i/2) Tr[(m-mu-i)^{-1} - (m-mu+i)^{-1}],
// one tridiagonal solve per diagonal entry and shift.
double lorentzian_trace_resolvent(const SymTriMatrix& m, double mu);

// Diagonal entries of (-i/2)[(m-mu-i)^{-1} - (m-mu+i)^{-1}].
std::vector<double> lorentzian_diagonal_resolvent(const SymTriMatrix& m, double mu);

// One row of (m - shift)^{-1} as entry magnitudes (rows equal columns here
// because the shifted matrix is complex symmetric).
ResolventProfile resolvent_row(const SymTriMatrix& m, const ComplexShift& shift, std::size_t row);

// Solve (m - z) x = rhs by the Thomas algorithm; falls back to partial-pivot
// banded elimination when a pivot magnitude drops below 1e-300.
std::vector<std::complex<double>> solve_shifted(const SymTriMatrix& m, std::complex<double> z,
                                                const std::vector<std::complex<double>>& rhs);

}  // namespace dos

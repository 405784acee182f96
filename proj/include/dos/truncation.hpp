#pragma once

#include <vector>

#include "dos/mathieu.hpp"
#include "dos/tridiag.hpp"

namespace dos {

// Window sums of Lorentzian diagonals over a growing index window, with the
// successive differences and their fitted exponential decay rate.
struct WindowTraceReport {
    std::vector<long> L_values;
    std::vector<double> window_sums;
    std::vector<double> deltas;  // |sums[i+1] - sums[i]|, one per adjacent pair
    double fitted_decay = 0.0;   // LS slope of log(delta) vs the upper window size

    void validate() const;  // length bookkeeping, nonnegative deltas
};

// Least-squares exponential-decay fit of resolvent magnitudes.
struct DecayFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    long points_used = 0;
};

// For each L in the increasing schedule (>= 2 entries), sums the Lorentzian
// diagonal entries with |n| <= L of the Bloch matrix built on the doubled
// window 2L (clamped to the discrete circle cap), via the resolvent path.
// fitted_decay is NaN when fewer than two deltas exceed 1e-300.
WindowTraceReport window_trace_sequence(ModelKind kind, double k, double mu,
                                        const MathieuParams& params,
                                        const std::vector<long>& L_values);

// Sum of the Lorentzian diagonal over indices n > L inside an embedding of
// half-width ceil(1.5 L): the measurable stand-in for the neglected corner of
// the infinite matrix. Decays toward 0 as L grows.
double corner_truncation_gap(ModelKind kind, double k, double mu, const MathieuParams& params,
                             long L);

// Exponential-decay fit of |((m - mu + i)^{-1})_{center,n}| against the
// distance |n - center|, excluding magnitudes below 1e-13. Requires dim >= 11
// and at least 5 usable entries (insufficient-data error otherwise, e.g. for
// diagonal matrices).
DecayFit combes_thomas_fit(const SymTriMatrix& m, double mu);

// Gershgorin floor: min_i (diag_i - sum of adjacent |offdiag|), always <= the
// true minimum eigenvalue.
double gershgorin_min_eig_bound(const SymTriMatrix& m);

// Contiguous index block n = n_begin..n_end of a Bloch matrix (corner blocks
// for the probes above live here; the symmetric windows live in mathieu).
SymTriMatrix build_corner_block(ModelKind kind, double k, const MathieuParams& params,
                                long n_begin, long n_end);

// Lower bound on the smallest eigenvalue of 1 + (m - mu)^2 obtained from the
// Gershgorin floor of m: 1 + max(0, floor - mu)^2.
double shifted_square_min_eig_bound(const SymTriMatrix& m, double mu);

}  // namespace dos

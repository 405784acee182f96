#pragma once

#include <string>
#include <utility>
#include <vector>

namespace dos {

// Closed-form error budget evaluated term by term at one (eps, mu, q), with
// the range flags under which the budget is a proven bound.
struct ErrorBudget {
    std::vector<std::pair<std::string, double>> terms;
    double total = 0.0;
    double q = 0.0;
    double eps = 0.0;
    double mu = 0.0;
    bool q_valid = false;   // q in (10/7, 3/2)
    bool mu_valid = false;  // |mu| <= eps^{q-2} (always true for the Mathieu budget)

    bool valid() const { return q_valid && mu_valid; }
    void validate() const;  // nonnegative terms; total equals their sum to 1e-12 relative
};

// Least-squares power-law fit error ~ C * eps^exponent on log-log axes.
struct RateFit {
    double exponent = 0.0;
    double log_constant = 0.0;
    double residual = 0.0;  // rms residual in log space
    long n_points = 0;
};

// Laplacian DoS gap budget:
//   2 eps^{7q/2-5} + 4|mu| eps^{5q/2-3} + 32 pi eps^{3-2q} + (8/3) eps^{3-3q/2}.
// Negative mu enters through |mu| (conservative).
ErrorBudget laplacian_bound(double eps, double mu, double q);

// Mathieu DoS gap budget with measured resolvent-decay constants c5, c6 > 0:
//   2^16 pi^6 eps^{7q/2-5} + 8 eps^{1-q/2} + (8/pi^4) eps^{3-2q}
//   + c5 eps^{-2} exp(-c6 eps^{q/2-1}).
ErrorBudget mathieu_bound(double eps, double q, double c5, double c6);

// Same budget with (c5, c6) taken from a resolvent-decay fit on the continuum
// Bloch matrix at k = 0 with half-width 50: c6 = -slope, c5 = 10 e^{2 intercept}.
ErrorBudget mathieu_bound_measured(double eps, double q, double lambda, double mu);

// Fit (eps, error) points, eps strictly decreasing and >= 3 of them, to a
// power law; errors <= 0 mean the gap fell below the measurable floor
// (degenerate-data error instead of a fit).
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

}  // namespace dos

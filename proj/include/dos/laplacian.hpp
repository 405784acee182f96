#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "dos/quadrature.hpp"

namespace dos {

// Ordered (mu, value) DoS samples with the provenance needed to reproduce them.
// `epsilon` is 0 for continuum curves. `value_cap` is the model's a-priori
// ceiling on any sample (1/eps for the scaled discrete Laplacian, K/pi plus
// the tail allowance for the continuum one); producers set it, validate()
// enforces it.
struct DosCurve {
    std::string model_tag;
    double epsilon = 0.0;
    std::vector<std::pair<double, double>> samples;
    QuadratureSpec quadrature;
    double value_cap = std::numeric_limits<double>::infinity();

    // mu strictly increasing; every value finite, positive, and <= value_cap.
    void validate() const;
};

// Panel-refinement outcome plus the half-width K actually used after
// automatic tail doubling.
struct ContinuumDosInfo {
    RefineInfo quad;
    double cutoff_used = 0.0;
};

// Scaled discrete-Laplacian DoS:
//   (1/(2 pi eps)) Integral_{-pi..pi} dk / (1 + (4 sin^2(k/2)/eps^2 - mu)^2).
// Midpoint panels are doubled until two successive values differ by < 1e-9
// or the panel cap is hit (then RefineInfo reports the achieved delta).
RefineInfo dos_laplacian_discrete_scaled_info(double mu, double eps, const QuadratureSpec& quad);
double dos_laplacian_discrete_scaled(double mu, double eps, const QuadratureSpec& quad);

// Continuum-Laplacian DoS:
//   (1/(2 pi)) Integral_{-inf..inf} dk / (1 + (k^2 - mu)^2),
// truncated to [-K, K]. K starts at quad.tail_cutoff and doubles until the
// analytic tail bound 4/(3 pi K^3) (valid once K^2 > 2|mu|) drops below 1e-9;
// if 24 doublings cannot achieve that, an invalid-parameter error is thrown.
ContinuumDosInfo dos_laplacian_continuum_info(double mu, const QuadratureSpec& quad);
double dos_laplacian_continuum(double mu, const QuadratureSpec& quad);

// Per-epsilon gap |discrete(mu, eps) - continuum(mu)| for a strictly
// decreasing eps list inside (0, 1); the continuum value is computed once.
std::vector<std::pair<double, double>> laplacian_error_curve(double mu,
                                                             const std::vector<double>& eps_list,
                                                             const QuadratureSpec& quad);

}  // namespace dos

#include "dos/laplacian.hpp"

#include <cmath>
#include <numbers>

#include "dos/errors.hpp"

namespace dos {

namespace {

constexpr double kStabTol = 1e-9;  // panel-doubling stability target
constexpr double kTailTol = 1e-9;  // continuum truncation-tail target
constexpr int kMaxCutoffDoublings = 24;

void check_mu(double mu) {
    if (!std::isfinite(mu)) throw InvalidInput("dos: mu must be finite");
}

}  // namespace

void DosCurve::validate() const {
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& [mu, value] : samples) {
        if (!(mu > prev)) throw InvalidInput("DosCurve: mu samples must be strictly increasing");
        prev = mu;
        if (!std::isfinite(value) || value <= 0.0)
            throw InvalidInput("DosCurve: values must be finite and positive");
        if (value > value_cap) throw InvalidInput("DosCurve: value exceeds the model cap");
    }
}

RefineInfo dos_laplacian_discrete_scaled_info(double mu, double eps, const QuadratureSpec& quad) {
    check_mu(mu);
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw InvalidInput("dos_laplacian_discrete_scaled: eps must be positive");
    quad.validate();

    const double inv_eps = 1.0 / eps;
    const double pref = 1.0 / (2.0 * std::numbers::pi * eps);
    // 2 - 2 cos k written as 4 sin^2(k/2): exact symmetry under k -> pi - k,
    // which realizes mu -> 4/eps^2 - mu on the folded midpoint nodes.
    auto f = [=](double k) {
        const double s = 2.0 * inv_eps * std::sin(0.5 * k);
        const double d = s * s - mu;
        return pref / (1.0 + d * d);
    };
    return refine_midpoint_even(f, std::numbers::pi, quad, kStabTol);
}

double dos_laplacian_discrete_scaled(double mu, double eps, const QuadratureSpec& quad) {
    return dos_laplacian_discrete_scaled_info(mu, eps, quad).value;
}

ContinuumDosInfo dos_laplacian_continuum_info(double mu, const QuadratureSpec& quad) {
    check_mu(mu);
    quad.validate();

    // Grow K until the neglected tail (1/pi) Int_K^inf 4/k^4 dk = 4/(3 pi K^3)
    // is provably below the target; the bound needs k^2 - mu >= k^2/2 on the
    // tail, i.e. K^2 > 2|mu|.
    double cutoff = quad.tail_cutoff;
    int doublings = 0;
    while (cutoff * cutoff <= 2.0 * std::abs(mu) ||
           4.0 / (3.0 * std::numbers::pi * cutoff * cutoff * cutoff) >= kTailTol) {
        if (++doublings > kMaxCutoffDoublings)
            throw InvalidParameter("dos_laplacian_continuum: no admissible tail cutoff for mu");
        cutoff *= 2.0;
    }

    const double pref = 1.0 / (2.0 * std::numbers::pi);
    auto f = [=](double k) {
        const double d = k * k - mu;
        return pref / (1.0 + d * d);
    };
    ContinuumDosInfo out;
    out.quad = refine_midpoint_even(f, cutoff, quad, kStabTol);
    out.cutoff_used = cutoff;
    return out;
}

double dos_laplacian_continuum(double mu, const QuadratureSpec& quad) {
    return dos_laplacian_continuum_info(mu, quad).quad.value;
}

std::vector<std::pair<double, double>> laplacian_error_curve(double mu,
                                                             const std::vector<double>& eps_list,
                                                             const QuadratureSpec& quad) {
    if (eps_list.empty()) throw InvalidInput("laplacian_error_curve: eps_list must be non-empty");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0 && eps_list[i] < 1.0))
            throw InvalidInput("laplacian_error_curve: eps values must lie in (0, 1)");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
            throw InvalidInput("laplacian_error_curve: eps_list must be strictly decreasing");
    }

    const double dos_c = dos_laplacian_continuum(mu, quad);
    std::vector<std::pair<double, double>> out;
    out.reserve(eps_list.size());
    for (double e : eps_list)
        out.emplace_back(e, std::abs(dos_laplacian_discrete_scaled(mu, e, quad) - dos_c));
    return out;
}

}  // namespace dos

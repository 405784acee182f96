#include "dos/bounds.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dos/errors.hpp"
#include "dos/truncation.hpp"
#include "dos/util.hpp"

namespace dos {

namespace {

bool q_in_range(double q) { return q > 10.0 / 7.0 && q < 1.5; }

void check_eps_q(double eps, double q, const char* who) {
    if (!(eps > 0.0 && eps < 1.0)) throw InvalidInput(std::string(who) + ": eps must lie in (0, 1)");
    if (!std::isfinite(q)) throw InvalidInput(std::string(who) + ": q must be finite");
}

}  // namespace

void ErrorBudget::validate() const {
    KahanSum s;
    for (const auto& [name, value] : terms) {
        if (name.empty()) throw InvalidInput("ErrorBudget: terms must be named");
        if (!(value >= 0.0) || !std::isfinite(value))
            throw InvalidInput("ErrorBudget: terms must be finite and nonnegative");
        s.add(value);
    }
    const double sum = s.value();
    const double scale = std::max(std::abs(sum), std::abs(total));
    if (std::abs(total - sum) > 1e-12 * scale)
        throw InvalidInput("ErrorBudget: total does not match the term sum");
}

ErrorBudget laplacian_bound(double eps, double mu, double q) {
    check_eps_q(eps, q, "laplacian_bound");
    if (!std::isfinite(mu)) throw InvalidInput("laplacian_bound: mu must be finite");

    ErrorBudget b;
    b.eps = eps;
    b.mu = mu;
    b.q = q;
    b.terms = {
        {"inner_mismatch", 2.0 * std::pow(eps, 3.5 * q - 5.0)},
        {"inner_mismatch_mu", 4.0 * std::abs(mu) * std::pow(eps, 2.5 * q - 3.0)},
        {"outer_integral", 32.0 * std::numbers::pi * std::pow(eps, 3.0 - 2.0 * q)},
        {"continuum_tail", (8.0 / 3.0) * std::pow(eps, 3.0 - 1.5 * q)},
    };
    KahanSum s;
    for (const auto& [name, value] : b.terms) s.add(value);
    b.total = s.value();
    b.q_valid = q_in_range(q);
    b.mu_valid = std::abs(mu) <= std::pow(eps, q - 2.0);
    return b;
}

ErrorBudget mathieu_bound(double eps, double q, double c5, double c6) {
    check_eps_q(eps, q, "mathieu_bound");
    if (!(c5 > 0.0) || !(c6 > 0.0) || !std::isfinite(c5) || !std::isfinite(c6))
        throw InvalidInput("mathieu_bound: c5 and c6 must be positive");

    const double pi = std::numbers::pi;
    ErrorBudget b;
    b.eps = eps;
    b.mu = 0.0;
    b.q = q;
    b.terms = {
        {"middle_difference", 65536.0 * std::pow(pi, 6.0) * std::pow(eps, 3.5 * q - 5.0)},
        {"window_tail", 8.0 * std::pow(eps, 1.0 - 0.5 * q)},
        {"discrete_tail", (8.0 / std::pow(pi, 4.0)) * std::pow(eps, 3.0 - 2.0 * q)},
        {"resolvent_coupling",
         c5 * std::pow(eps, -2.0) * std::exp(-c6 * std::pow(eps, 0.5 * q - 1.0))},
    };
    KahanSum s;
    for (const auto& [name, value] : b.terms) s.add(value);
    b.total = s.value();
    b.q_valid = q_in_range(q);
    b.mu_valid = true;
    return b;
}

ErrorBudget mathieu_bound_measured(double eps, double q, double lambda, double mu) {
    const DecayFit fit = combes_thomas_fit(build_dc(0.0, lambda, BlochIndexWindow{50}), mu);
    const double c6 = -fit.slope;
    const double c5 = 10.0 * std::exp(2.0 * fit.intercept);
    if (!(c6 > 0.0))
        throw DegenerateData("mathieu_bound_measured: resolvent decay fit has no decay");
    return mathieu_bound(eps, q, c5, c6);
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw InvalidInput("fit_rate: need at least 3 points");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0)) throw InvalidInput("fit_rate: eps must be positive");
        if (i > 0 && !(points[i].first < points[i - 1].first))
            throw InvalidInput("fit_rate: eps must be strictly decreasing");
        if (!(points[i].second > 0.0))
            throw DegenerateData("fit_rate: nonpositive error (values agree to the floor)");
    }

    std::vector<double> xs, ys;
    xs.reserve(points.size());
    ys.reserve(points.size());
    for (const auto& [eps, err] : points) {
        xs.push_back(std::log(eps));
        ys.push_back(std::log(err));
    }
    const LinearFit f = fit_line(xs, ys);
    RateFit out;
    out.exponent = f.slope;
    out.log_constant = f.intercept;
    out.residual = f.rms_residual;
    out.n_points = static_cast<long>(points.size());
    return out;
}

}  // namespace dos

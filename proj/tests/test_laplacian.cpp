#include <cmath>
#include <vector>

#include "doctest.h"
#include "dos/errors.hpp"
#include "dos/laplacian.hpp"
#include "oracles.hpp"

using dos::QuadratureSpec;

namespace {
const double kPi = std::acos(-1.0);
const QuadratureSpec kQuad{};
}  // namespace

TEST_CASE("continuum value at mu 0 hits the closed form") {
    // (1/2pi) Integral dk/(1+k^4) = 1/(2 sqrt(2)).
    const double v = dos::dos_laplacian_continuum(0.0, kQuad);
    CHECK(v == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-8));
}

TEST_CASE("continuum tail doubling reaches the documented cutoff") {
    const auto info = dos::dos_laplacian_continuum_info(5.0, kQuad);
    CHECK(info.cutoff_used == 800.0);
    CHECK(info.quad.converged);
    CHECK(info.quad.last_delta < 1e-9);
}

TEST_CASE("continuum value matches an independent quadrature at mu 5") {
    auto f = [](double k) {
        const double d = k * k - 5.0;
        return 1.0 / (1.0 + d * d);
    };
    const auto info = dos::dos_laplacian_continuum_info(5.0, kQuad);
    const double reference =
        oracle::adaptive_simpson(f, -info.cutoff_used, info.cutoff_used, 1e-13) / (2.0 * kPi);
    CHECK(info.quad.value == doctest::Approx(reference).epsilon(1e-9));
}

TEST_CASE("continuum tail cutoff cannot dominate an enormous mu") {
    CHECK_THROWS_AS(dos::dos_laplacian_continuum(1.0e30, kQuad), dos::InvalidParameter);
}

TEST_CASE("discrete curve at eps 1 collapses to a closed form") {
    // At eps = 1, mu = 2 the integrand is 1/(1 + 4 cos^2 k) over [-pi, pi],
    // whose mean value is 1/sqrt(5).
    const double v = dos::dos_laplacian_discrete_scaled(2.0, 1.0, kQuad);
    CHECK(v == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
}

TEST_CASE("discrete curve is symmetric about the band center") {
    const double eps = 1.0 / 20.0;
    const double top = 4.0 / (eps * eps);
    for (double mu : {0.0, 1.0, 2.0, 5.0}) {
        const double lo = dos::dos_laplacian_discrete_scaled(mu, eps, kQuad);
        const double hi = dos::dos_laplacian_discrete_scaled(top - mu, eps, kQuad);
        CHECK(std::abs(lo - hi) < 1e-10);
    }
}

TEST_CASE("continuum curve grows toward the spectrum") {
    const double far = dos::dos_laplacian_continuum(-100.0, kQuad);
    const double near = dos::dos_laplacian_continuum(-10.0, kQuad);
    const double edge = dos::dos_laplacian_continuum(0.0, kQuad);
    CHECK(far < near);
    CHECK(near < edge);
}

TEST_CASE("error curve decreases along a refining eps list") {
    const std::vector<double> eps{1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0};
    const auto curve = dos::laplacian_error_curve(2.0, eps, kQuad);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].second > curve[1].second);
    CHECK(curve[1].second > curve[2].second);
    for (const auto& [e, err] : curve) CHECK(err > 0.0);
}

TEST_CASE("error curve rejects unordered eps lists") {
    CHECK_THROWS_AS(dos::laplacian_error_curve(2.0, {0.05, 0.05}, kQuad), dos::InvalidInput);
    CHECK_THROWS_AS(dos::laplacian_error_curve(2.0, {0.025, 0.05}, kQuad), dos::InvalidInput);
    CHECK_THROWS_AS(dos::laplacian_error_curve(2.0, {0.05, -0.025}, kQuad), dos::InvalidInput);
}

TEST_CASE("curve validation enforces ordering and the value cap") {
    dos::DosCurve good{"laplacian_continuum", 0.0, {{0.0, 0.3}, {1.0, 0.4}}, kQuad, 1.0};
    CHECK_NOTHROW(good.validate());

    dos::DosCurve unordered = good;
    unordered.samples = {{1.0, 0.3}, {0.0, 0.4}};
    CHECK_THROWS_AS(unordered.validate(), dos::InvalidInput);

    dos::DosCurve overflow = good;
    overflow.samples = {{0.0, 2.0}};
    CHECK_THROWS_AS(overflow.validate(), dos::InvalidInput);

    dos::DosCurve negative = good;
    negative.samples = {{0.0, -0.1}};
    CHECK_THROWS_AS(negative.validate(), dos::InvalidInput);
}

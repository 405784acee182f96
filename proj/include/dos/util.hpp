#pragma once

#include <cstddef>
#include <vector>

namespace dos {

// Compensated accumulator; a fixed call order gives bit-reproducible sums.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    double value() const { return sum; }
};

// Ordinary least squares y = intercept + slope * x.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
    double rms_residual = 0.0;
    std::size_t n = 0;
};

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace dos

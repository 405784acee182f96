#include "dos/util.hpp"

#include <cmath>

#include "dos/errors.hpp"

namespace dos {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw InvalidInput("fit_line: size mismatch");
    const std::size_t n = x.size();
    if (n < 2) throw InsufficientData("fit_line: need at least 2 points");

    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);

    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DegenerateData("fit_line: all abscissae equal");

    LinearFit f;
    f.n = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;

    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
        ss_tot += (y[i] - my) * (y[i] - my);
    }
    f.rms_residual = std::sqrt(ss_res / static_cast<double>(n));
    if (ss_tot > 0.0) {
        f.r_squared = 1.0 - ss_res / ss_tot;
        if (f.r_squared < 0.0) f.r_squared = 0.0;
        if (f.r_squared > 1.0) f.r_squared = 1.0;
    } else {
        f.r_squared = ss_res > 0.0 ? 0.0 : 1.0;
    }
    return f;
}

}  // namespace dos

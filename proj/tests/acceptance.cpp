// Acceptance gate: one check per release criterion, each printed as a single
// PASS/FAIL line. The process exits nonzero if any criterion fails, so this
// binary doubles as the ctest entry point for the whole-system contract.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "dos/bounds.hpp"
#include "dos/cli.hpp"
#include "dos/corpus.hpp"
#include "dos/csv.hpp"
#include "dos/laplacian.hpp"
#include "dos/mathieu.hpp"
#include "dos/sweep.hpp"
#include "dos/tridiag.hpp"
#include "dos/truncation.hpp"

namespace {

constexpr std::uint64_t kSeed = 20240817;
constexpr double kQ = 16.0 / 11.0;

int g_failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int number, bool pass, const std::string& what, const std::string& detail,
            double seconds) {
    if (!pass) ++g_failures;
    std::printf("%s criterion %2d: %s (%s) [%.2f s]\n", pass ? "PASS" : "FAIL", number,
                what.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::vector<dos::SymTriMatrix> corpus() {
    const auto dims = dos::corpus_dims();
    std::vector<dos::SymTriMatrix> out;
    out.reserve(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i)
        out.push_back(dos::random_symtri(kSeed + i, dims[i]));
    return out;
}

void criterion_1_2() {
    Timer t;
    const auto mats = corpus();
    struct Gap {
        double eig;
        double trace;
    };
    const auto gaps = dos::parallel_map<Gap>(mats.size(), 0, [&](std::size_t i) {
        const dos::SymTriMatrix& m = mats[i];
        const auto bis = dos::eig_bisection(m, dos::default_eig_tol(m));
        const auto ql = dos::eig_ql(m, dos::default_eig_tol(m));
        double eig = 0.0;
        for (std::size_t j = 0; j < bis.values.size(); ++j)
            eig = std::max(eig, std::abs(bis.values[j] - ql.values[j]));
        const double mu = 0.37;
        const double trace = std::abs(dos::lorentzian_trace(m, mu) -
                                      dos::lorentzian_trace_resolvent(m, mu)) /
                             static_cast<double>(m.dim());
        return Gap{eig, trace};
    });
    double eig_worst = 0.0, trace_worst = 0.0;
    for (const Gap& g : gaps) {
        eig_worst = std::max(eig_worst, g.eig);
        trace_worst = std::max(trace_worst, g.trace);
    }
    const double elapsed = t.seconds();
    report(1, eig_worst <= 1e-10 && elapsed < 10.0,
           "bisection and ql agree on the 100-matrix corpus",
           "max gap " + fmt(eig_worst) + ", limit 1e-10", elapsed);
    report(2, trace_worst <= 1e-8, "eigen and resolvent trace paths agree on the corpus",
           "max gap/dim " + fmt(trace_worst) + ", limit 1e-8 per dim", elapsed);
}

void criterion_3() {
    Timer t;
    const dos::QuadratureSpec quad{};
    const double v = dos::dos_laplacian_continuum(0.0, quad);
    const double err = std::abs(v - 1.0 / (2.0 * std::sqrt(2.0)));
    report(3, err <= 1e-6, "continuum laplacian anchor at mu 0 equals 1/(2 sqrt 2)",
           "err " + fmt(err) + ", limit 1e-6", t.seconds());
}

void criterion_4() {
    Timer t;
    const dos::QuadratureSpec quad{};
    const double eps = 1.0 / 20.0;
    const double top = 4.0 / (eps * eps);
    double worst = 0.0;
    for (double mu : {0.0, 1.0, 2.0, 5.0}) {
        const double lo = dos::dos_laplacian_discrete_scaled(mu, eps, quad);
        const double hi = dos::dos_laplacian_discrete_scaled(top - mu, eps, quad);
        worst = std::max(worst, std::abs(lo - hi));
    }
    report(4, worst <= 1e-10, "discrete laplacian curve is symmetric about the band center",
           "max gap " + fmt(worst) + " at eps 1/20, limit 1e-10", t.seconds());
}

void criterion_5() {
    Timer t;
    const dos::QuadratureSpec quad{};
    const std::vector<double> mus{0.0, 2.0, 5.0, 10.0};
    const std::vector<double> epss{1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0, 1.0 / 160.0};

    bool decreasing = true, exponent_ok = true, bounded = true;
    double min_exponent = std::numeric_limits<double>::infinity();
    const auto curves = dos::parallel_map<std::vector<std::pair<double, double>>>(
        mus.size(), 0, [&](std::size_t i) {
            return dos::laplacian_error_curve(mus[i], epss, quad);
        });
    for (std::size_t i = 0; i < mus.size(); ++i) {
        const auto& curve = curves[i];
        for (std::size_t j = 1; j < curve.size(); ++j)
            if (!(curve[j].second < curve[j - 1].second)) decreasing = false;
        const double expo = dos::fit_rate(curve).exponent;
        min_exponent = std::min(min_exponent, expo);
        if (!(expo >= 1.0 / 11.0)) exponent_ok = false;
        for (const auto& [eps, err] : curve) {
            const dos::ErrorBudget b = dos::laplacian_bound(eps, mus[i], kQ);
            if (b.valid() && !(err <= b.total)) bounded = false;
        }
    }
    const double elapsed = t.seconds();
    report(5, decreasing && exponent_ok && bounded && elapsed < 60.0,
           "laplacian errors fall with eps, beat the 1/11 rate, and respect the budget",
           "min exponent " + fmt(min_exponent) + ", sweep limit 60 s", elapsed);
}

void criterion_6() {
    Timer t;
    const double eps = 1.0 / 40.0;
    const dos::QuadratureSpec lquad{};
    const dos::QuadratureSpec kquad{64, 50.0, 2};
    const dos::MathieuParams p{0.0, eps, kQ, 0};
    const dos::BlochIndexWindow w = dos::default_window(p);
    const std::vector<double> mus{0.0, 5.0, 20.0};

    struct Gap {
        double cont;
        double disc;
    };
    const auto gaps = dos::parallel_map<Gap>(mus.size(), 0, [&](std::size_t i) {
        Gap g;
        g.cont = std::abs(dos::dos_mathieu_continuum(mus[i], 0.0, w, kquad) -
                          dos::dos_laplacian_continuum(mus[i], lquad));
        g.disc = std::abs(dos::dos_mathieu_discrete_scaled(mus[i], p, w, kquad) -
                          dos::dos_laplacian_discrete_scaled(mus[i], eps, lquad));
        return g;
    });
    double worst = 0.0;
    for (const Gap& g : gaps) worst = std::max(worst, std::max(g.cont, g.disc));
    report(6, worst <= 1e-6, "lambda 0 bloch models collapse to the laplacian curves",
           "max gap " + fmt(worst) + " at eps 1/40, limit 1e-6", t.seconds());
}

void criterion_7() {
    Timer t;
    const double lambda = 8.0;
    const dos::QuadratureSpec kquad{64, 50.0, 2};
    const std::vector<double> mus{0.0, 5.0, 10.0};
    const std::vector<double> epss{1.0 / 50.0, 1.0 / 100.0, 1.0 / 200.0};

    std::vector<dos::MathieuParams> params;
    for (double e : epss) params.push_back({lambda, e, kQ, 0});
    const dos::BlochIndexWindow cont_window = dos::default_window(params.back());

    const auto cont = dos::parallel_map<double>(mus.size(), 0, [&](std::size_t i) {
        return dos::dos_mathieu_continuum(mus[i], lambda, cont_window, kquad);
    });
    const auto disc =
        dos::parallel_map<double>(mus.size() * epss.size(), 0, [&](std::size_t idx) {
            const auto& p = params[idx % epss.size()];
            return dos::dos_mathieu_discrete_scaled(mus[idx / epss.size()], p,
                                                    dos::default_window(p), kquad);
        });

    bool decreasing = true, exponent_ok = true;
    double min_exponent = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < mus.size(); ++i) {
        std::vector<std::pair<double, double>> curve;
        for (std::size_t j = 0; j < epss.size(); ++j)
            curve.emplace_back(epss[j], std::abs(disc[i * epss.size() + j] - cont[i]));
        for (std::size_t j = 1; j < curve.size(); ++j)
            if (!(curve[j].second < curve[j - 1].second)) decreasing = false;
        const double expo = dos::fit_rate(curve).exponent;
        min_exponent = std::min(min_exponent, expo);
        if (!(expo >= 1.0 / 11.0)) exponent_ok = false;
    }
    const double elapsed = t.seconds();
    report(7, decreasing && exponent_ok && elapsed < 300.0,
           "mathieu errors at lambda 8 fall with eps and beat the 1/11 rate",
           "min exponent " + fmt(min_exponent) + ", sweep limit 300 s", elapsed);
}

void criterion_8() {
    Timer t;
    const dos::QuadratureSpec kquad{64, 50.0, 2};
    const dos::MathieuParams p{8.0, 1.0 / 100.0, kQ, 0};
    const dos::BlochIndexWindow w = dos::default_window(p);
    const long cap = p.circle_size() / 2;

    double worst = 0.0;
    for (double mu : {0.0, 5.0}) {
        const auto cont = dos::dos_mathieu_continuum_info(mu, p.lambda, w, kquad);
        const double cont2 =
            dos::dos_mathieu_continuum_fixed_window(mu, p.lambda, 2 * cont.L_used, kquad).value;
        worst = std::max(worst, std::abs(cont2 - cont.value));

        const auto disc = dos::dos_mathieu_discrete_scaled_info(mu, p, w, kquad);
        const long doubled = std::min(2 * disc.L_used, cap);
        const double disc2 =
            dos::dos_mathieu_discrete_fixed_window(mu, p, doubled, kquad).value;
        worst = std::max(worst, std::abs(disc2 - disc.value));
    }

    const auto rep = dos::window_trace_sequence(dos::ModelKind::continuum, 0.0, 0.0, p,
                                                {4, 8, 16, 32, 64});
    // Deltas whose upper window lies in the last half of the schedule
    // ({16, 32, 64}) must keep shrinking.
    bool tail_monotone = true;
    for (std::size_t i = 2; i < rep.deltas.size(); ++i)
        if (!(rep.deltas[i] < rep.deltas[i - 1])) tail_monotone = false;

    report(8, worst < 1e-8 && tail_monotone,
           "window truncation is stable: doubling past the stop moves nothing",
           "max doubling shift " + fmt(worst) + ", limit 1e-8; tail deltas monotone",
           t.seconds());
}

void criterion_9() {
    Timer t;
    const auto fit =
        dos::combes_thomas_fit(dos::build_dc(0.0, 8.0, dos::BlochIndexWindow{50}), 0.0);
    report(9, fit.slope <= -0.5 && fit.r_squared >= 0.9,
           "resolvent rows decay exponentially at the probe operating point",
           "slope " + fmt(fit.slope) + " (limit -0.5), r2 " + fmt(fit.r_squared) +
               " (floor 0.9)",
           t.seconds());
}

void criterion_10() {
    Timer t;
    long violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    auto check = [&](const dos::SymTriMatrix& m) {
        const double bound = dos::gershgorin_min_eig_bound(m);
        const double min_eig = dos::eig_bisection(m, dos::default_eig_tol(m)).values.front();
        const double margin = bound - min_eig - dos::spectrum_slack(m);
        worst = std::max(worst, margin);
        if (margin > 0.0) ++violations;
    };
    for (const auto& m : corpus()) check(m);
    const dos::MathieuParams base{8.0, 1.0 / 100.0, kQ, 0};
    const double pi = std::numbers::pi;
    for (double lam : {0.0, 8.0}) {
        for (double k : {-pi, -1.0, 0.0, 1.0, pi}) {
            for (long L : {8L, 25L}) {
                dos::MathieuParams p = base;
                p.lambda = lam;
                check(dos::build_dc(k, lam, dos::BlochIndexWindow{L}));
                check(dos::build_dd_scaled(k, p, dos::BlochIndexWindow{L}));
            }
        }
    }
    report(10, violations == 0,
           "gershgorin floors never exceed computed spectra (corpus plus bloch set)",
           "violations " + std::to_string(violations) + ", worst margin " + fmt(worst),
           t.seconds());
}

void criterion_11() {
    Timer t;
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "dos_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);

    dos::RunConfig cfg;
    cfg.subcommand = "converge";
    cfg.model = "laplacian";
    cfg.eps_list = {1.0 / 20.0, 1.0 / 40.0, 1.0 / 80.0};
    cfg.mu_max = 2.0;
    cfg.mu_step = 2.0;

    auto run_to = [&](unsigned threads, const char* name) {
        dos::RunConfig c = cfg;
        c.threads = threads;
        c.out_path = (dir / name).string();
        return dos::run_command(c);
    };
    const int rc1 = run_to(1, "serial.csv");
    const int rc8 = run_to(8, "parallel.csv");

    auto slurp = [](const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    };
    const std::string a = slurp(dir / "serial.csv");
    const std::string b = slurp(dir / "parallel.csv");
    fs::remove_all(dir);
    report(11, rc1 == 0 && rc8 == 0 && !a.empty() && a == b,
           "converge output is byte-identical across 1 and 8 threads",
           std::to_string(a.size()) + " bytes compared", t.seconds());
}

}  // namespace

int main() {
    criterion_1_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    criterion_11();
    if (g_failures == 0)
        std::printf("acceptance: all 11 criteria passed\n");
    else
        std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}

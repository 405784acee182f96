#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dos/cli.hpp"
#include "dos/errors.hpp"

namespace {

// Accepts "0.01" and fraction shorthand "1/100".
double parse_eps_token(const std::string& token) {
    const auto slash = token.find('/');
    try {
        if (slash == std::string::npos) return std::stod(token);
        const double num = std::stod(token.substr(0, slash));
        const double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("zero denominator");
        return num / den;
    } catch (const std::exception&) {
        throw CLI::ValidationError("--eps-list", "cannot parse '" + token + "' as a number");
    }
}

void add_common_flags(CLI::App* cmd, dos::RunConfig& cfg, std::string& eps_text,
                      std::string& eps_list_text) {
    cmd->add_option("--mu-min", cfg.mu_min, "Lowest mu sample");
    cmd->add_option("--mu-max", cfg.mu_max, "Highest mu sample");
    cmd->add_option("--mu-step", cfg.mu_step, "Grid step in mu");
    cmd->add_option("--eps", eps_text, "Lattice spacing (number or fraction like 1/40)");
    cmd->add_option("--lambda", cfg.lambda, "Potential strength");
    cmd->add_option("--q", cfg.q, "Truncation exponent");
    cmd->add_option("--L", cfg.L_override, "Starting Fourier window half-width");
    cmd->add_option("--k-panels", cfg.k_panels, "Starting quadrature panel count");
    cmd->add_option("--tail-cutoff", cfg.tail_cutoff, "Continuum integral half-width K");
    cmd->add_option("--eps-list", eps_list_text, "Comma-separated eps values (converge)");
    cmd->add_option("--out", cfg.out_path, "Output CSV path (default: stdout)");
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = auto)");
    cmd->add_option("--anchors-dir", cfg.anchors_dir, "Regression anchor directory");
    cmd->add_option("--seed", cfg.seed, "Seed for randomized test matrices");
    cmd->add_flag("--strict", cfg.strict, "Escalate warnings to exit code 2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Density-of-states toolkit: discrete and continuum 1D models"};
    app.require_subcommand(1);

    dos::RunConfig cfg;
    std::string eps_text;
    std::string eps_list_text;

    CLI::App* lap = app.add_subcommand("laplacian-dos", "DoS curves for the 1D Laplacian");
    CLI::App* mat = app.add_subcommand("mathieu-dos", "DoS curves for the Mathieu models");
    CLI::App* con = app.add_subcommand("converge", "Discrete-to-continuum error sweep over eps");
    CLI::App* prb = app.add_subcommand("probes", "Truncation and resolvent probe suite");
    CLI::App* slf = app.add_subcommand("self-test", "Fast internal consistency checks");

    for (CLI::App* cmd : {lap, mat, con, prb, slf}) add_common_flags(cmd, cfg, eps_text, eps_list_text);
    con->add_option("--model", cfg.model, "Model family: laplacian or mathieu");
    con->add_flag("--self-test", cfg.self_test_data, "Inject synthetic eps^2 errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors are exit code 1 regardless of CLI11's own codes
    }

    try {
        if (prb->parsed()) {
            // Probe-suite defaults: the canonical strong-coupling configuration.
            if (!prb->count("--lambda")) cfg.lambda = 8.0;
            if (!prb->count("--eps")) eps_text = "1/100";
        }
        if (!eps_text.empty()) cfg.eps = parse_eps_token(eps_text);
        if (!eps_list_text.empty()) {
            std::string token;
            for (char c : eps_list_text + ",") {
                if (c == ',') {
                    if (!token.empty()) cfg.eps_list.push_back(parse_eps_token(token));
                    token.clear();
                } else {
                    token += c;
                }
            }
        }
    } catch (const CLI::Error& e) {
        app.exit(e);
        return 1;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    return dos::run_command(cfg);
}

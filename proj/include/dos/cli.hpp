#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dos/csv.hpp"
#include "dos/quadrature.hpp"

namespace dos {

// One fully resolved run. Field defaults equal the CLI defaults, so a
// default-constructed config plus a subcommand is a valid run.
struct RunConfig {
    std::string subcommand;  // laplacian-dos | mathieu-dos | converge | probes | self-test
    std::string model = "laplacian";  // converge only: which model family
    double lambda = 0.0;
    double eps = 1.0 / 40.0;
    double q = 16.0 / 11.0;
    long L_override = 0;  // 0 = derive the starting window from (eps, q)
    double mu_min = 0.0;
    double mu_max = 0.0;
    double mu_step = 1.0;
    long k_panels = 0;  // 0 = per-command default (4096 Laplacian, 64 Mathieu)
    double tail_cutoff = 50.0;
    std::vector<double> eps_list;  // converge only
    std::string out_path;          // empty = stdout
    unsigned threads = 0;          // 0 = hardware concurrency
    std::uint64_t seed = 20240817; // randomized test matrices only
    std::string anchors_dir;       // empty = no anchor handling
    bool strict = false;           // escalate warnings to exit code 2
    bool self_test_data = false;   // converge only: inject synthetic eps^2 errors

    void validate() const;
    // mu_min, mu_min + step, ... up to mu_max (inclusive within a 1e-9 slack).
    std::vector<double> mu_grid() const;
};

// A finished command: the CSV payload plus any non-fatal warnings
// (non-converged refinements and the like), in deterministic order.
struct CommandResult {
    CsvTable table;
    std::vector<std::string> warnings;
};

CommandResult cmd_laplacian_dos(const RunConfig& config);
CommandResult cmd_mathieu_dos(const RunConfig& config);
CommandResult cmd_converge(const RunConfig& config);
CommandResult cmd_probes(const RunConfig& config);
CommandResult cmd_self_test(const RunConfig& config);

// Dispatch, write the CSV (stdout or --out, atomically), apply anchor
// bless/compare, and map failures to the documented exit codes:
// 0 ok, 1 usage, 2 numerical, 3 I/O.
int run_command(const RunConfig& config);

}  // namespace dos

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "scatter1d/numeric.hpp"

namespace scatter1d::cli {

enum class OutputFormat { csv, json };

const char* to_string(OutputFormat f);

// Everything a command run needs beyond its own selectors: the solver
// knobs, the momentum sweep, and where/how results are written.  Values
// are resolved in three layers: built-in defaults, then a flat
// `key = value` config file named by --config, then command-line flags,
// later layers winning.  Config keys are the long flag names with dashes
// turned into underscores (x_max, step, tol, k_min, k_max, k_steps, out,
// format, degrees).
struct RunConfig {
    numeric::SolverConfig solver;

    // momentum sweep for phase-shift and plot-data: k_steps samples laid
    // out geometrically on [k_min, k_max]
    double k_min = 0.05;
    double k_max = 10.0;
    int k_steps = 200;

    OutputFormat format = OutputFormat::csv;

    // results file ("" = the stream handed to run(); for plot-data this
    // names the output directory instead)
    std::string output_path;

    // print diagnostic angles on the log stream in degrees; stored
    // results are always radians
    bool degrees = false;

    // throws std::invalid_argument on out-of-range values
    void validate() const;
};

// Process exit codes shared by the binary and the in-process entry point.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;    // bad flags or bad domain input
inline constexpr int kExitSolver = 3;   // resolution or cross-check failure
inline constexpr int kExitIo = 4;       // unreadable/unwritable files

// Runs one command with `args` holding everything after argv[0].
// Results go to `out` (unless --out redirects them to a file),
// diagnostics and error messages to `err`.  Returns an exit code.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace scatter1d::cli

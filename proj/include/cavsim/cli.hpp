#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "cavsim/gates.hpp"
#include "cavsim/params.hpp"

namespace cavsim {

/// Flag/config parse error; the CLI exits with exit_usage.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SolverKind { time, spectral, both };

/// Effective configuration of one CLI run. Numeric values are natural units
/// (kappa = 1) except the budget rates, which are MHz. Defaults are the
/// working-point parameters (g = 3, gamma_s = 1, delta = 0, T = 240).
struct RunConfig {
    std::string subcommand;

    double g = 3.0;
    double gamma_s = 1.0;
    double delta = 0.0;
    LossModel loss_model = LossModel::standard_decay;
    SolverKind solver = SolverKind::time;
    GateMode mode = GateMode::simulated;

    int atom = 1;          // reflect: which atom level faces the photon
    double T = 240.0;      // pulse duration
    double settle = 15.0;  // ring-down window appended to the grid
    double dt_override = 0.0;  // 0 = step-size rule
    int nbins_override = 0;    // 0 = step-size rule

    std::vector<double> T_list = {30.0, 60.0, 120.0, 240.0};  // fig2b
    double g_min = 0.0;  // sweeps; per-subcommand defaults set at parse time
    double g_max = 0.0;
    int g_points = 0;

    std::string input;  // gate: hh|hv|vh|vv|sup; qnd: h|v|sup; parity: string over h/v

    double omega_min = -8.0;  // rcoeff sampling grid
    double omega_max = 8.0;
    int omega_points = 321;

    double kappa_mhz = 8.0;  // budget rates
    double gamma_mhz = 5.2;
    double g_mhz = 25.0;

    int levels = 3;  // converge

    std::string output;  // never empty after parse; default <subcommand>.csv

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse a full argv (without the program name). Throws UsageError with a
/// message naming the offending token.
RunConfig parse_args(const std::vector<std::string>& args);

/// Canonical flag echo such that parse_args(echo_args(c)) == c. Written into
/// every output table's provenance comments.
std::vector<std::string> echo_args(const RunConfig& config);

/// Execute one parsed run; returns a process exit code.
int run(const RunConfig& config);

/// Full CLI entry point: parse, run, map exceptions to exit codes.
int cli_main(int argc, const char* const* argv);

} // namespace cavsim

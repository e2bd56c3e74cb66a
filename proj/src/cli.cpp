#include "cavsim/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "cavsim/errors.hpp"
#include "cavsim/experiments.hpp"
#include "cavsim/scattering.hpp"
#include "cavsim/spectral.hpp"

namespace cavsim {

namespace {

/// --help lands here; cli_main prints the text and exits 0.
class HelpRequested : public UsageError {
public:
    using UsageError::UsageError;
};

const std::map<std::string, LossModel>& loss_names() {
    static const std::map<std::string, LossModel> m = {
        {"standard_decay", LossModel::standard_decay},
        {"paper_literal", LossModel::paper_literal}};
    return m;
}
const std::map<std::string, SolverKind>& solver_names() {
    static const std::map<std::string, SolverKind> m = {{"time", SolverKind::time},
                                                        {"spectral", SolverKind::spectral},
                                                        {"both", SolverKind::both}};
    return m;
}
const std::map<std::string, GateMode>& mode_names() {
    static const std::map<std::string, GateMode> m = {{"ideal", GateMode::ideal},
                                                      {"simulated", GateMode::simulated}};
    return m;
}

template <typename T>
std::string name_of(const std::map<std::string, T>& names, T value) {
    for (const auto& [k, v] : names) {
        if (v == value) return k;
    }
    return "?";
}

template <typename T>
T value_of(const std::map<std::string, T>& names, const std::string& key,
           const std::string& flag) {
    auto it = names.find(key);
    if (it == names.end()) {
        throw UsageError("invalid value '" + key + "' for " + flag);
    }
    return it->second;
}

// String shuttles for enum-valued flags; converted after CLI11 runs.
struct EnumStrings {
    std::string loss = "standard_decay";
    std::string solver = "time";
    std::string mode = "simulated";
};

struct Cli {
    CLI::App app{"cavity-assisted single-photon gate and QND protocol simulator", "cavsim"};
    RunConfig cfg;
    EnumStrings strings;
    std::map<std::string, CLI::App*> subs;

    Cli();
};

void add_output(CLI::App* s, RunConfig& cfg) {
    s->add_option("-o,--output", cfg.output, "output CSV path (default <subcommand>.csv)");
    // Documentation only: the file is merged into the argument list before
    // CLI11 parses (see merge_config_args), so flags always win.
    s->add_option("--config", "flat key=value config file; command-line flags win");
}

void add_cavity(CLI::App* s, RunConfig& cfg, EnumStrings& strings) {
    s->add_option("--g", cfg.g, "atom-cavity coupling (units kappa)")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--gamma", cfg.gamma_s, "spontaneous emission rate (units kappa)")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--delta", cfg.delta, "cavity detuning (units kappa)");
    s->add_option("--loss", strings.loss, "loss model: standard_decay|paper_literal");
}

void add_pulse(CLI::App* s, RunConfig& cfg) {
    auto* t = s->add_option("--T", cfg.T, "pulse duration (units 1/kappa)")
                  ->check(CLI::PositiveNumber);
    s->add_option("--settle", cfg.settle, "ring-down window after the pulse (units 1/kappa)")
        ->check(CLI::NonNegativeNumber);
    auto* dt = s->add_option("--dt", cfg.dt_override, "time step override")
                   ->check(CLI::PositiveNumber);
    auto* nb = s->add_option("--nbins", cfg.nbins_override, "bin count override")
                   ->check(CLI::Range(2, 100000000));
    dt->excludes(nb);
    nb->excludes(dt);
    (void)t;
}

Cli::Cli() {
    app.require_subcommand(1);

    CLI::App* s = app.add_subcommand("reflect", "reflect one pulse off the cavity");
    s->add_option("--atom", cfg.atom, "atom level facing the pulse: 0|1")->check(CLI::Range(0, 1));
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    s->add_option("--solver", strings.solver, "time|spectral|both");
    add_output(s, cfg);
    subs["reflect"] = s;

    s = app.add_subcommand("rcoeff", "tabulate the reflection coefficient r(omega)");
    s->add_option("--atom", cfg.atom, "atom level: 0|1")->check(CLI::Range(0, 1));
    add_cavity(s, cfg, strings);
    s->add_option("--omega-min", cfg.omega_min, "lowest angular frequency (units kappa)");
    s->add_option("--omega-max", cfg.omega_max, "highest angular frequency (units kappa)");
    s->add_option("--omega-points", cfg.omega_points, "sample count")->check(CLI::Range(1, 1000000));
    add_output(s, cfg);
    subs["rcoeff"] = s;

    s = app.add_subcommand("gate", "two-photon controlled phase flip");
    s->add_option("--input", cfg.input, "photon polarizations: hh|hv|vh|vv|sup");
    s->add_option("--mode", strings.mode, "ideal|simulated");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    add_output(s, cfg);
    subs["gate"] = s;

    s = app.add_subcommand("qnd", "photon-number QND measurement of one pulse");
    s->add_option("--input", cfg.input, "photon polarization: h|v|sup");
    s->add_option("--mode", strings.mode, "ideal|simulated");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    add_output(s, cfg);
    subs["qnd"] = s;

    s = app.add_subcommand("parity", "parity QND over a pulse train");
    s->add_option("--input", cfg.input, "one h or v per pulse, e.g. hv");
    s->add_option("--mode", strings.mode, "ideal|simulated");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    add_output(s, cfg);
    subs["parity"] = s;

    s = app.add_subcommand("fig2a", "input and reflected pulse shapes");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    add_output(s, cfg);
    subs["fig2a"] = s;

    s = app.add_subcommand("fig2b", "gate fidelity vs pulse duration");
    add_cavity(s, cfg, strings);
    s->add_option("--T-list", cfg.T_list, "pulse durations kappa*T")
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    add_output(s, cfg);
    subs["fig2b"] = s;

    s = app.add_subcommand("fig2c", "spontaneous-emission loss vs coupling");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    s->add_option("--g-min", cfg.g_min, "sweep start")->check(CLI::PositiveNumber);
    s->add_option("--g-max", cfg.g_max, "sweep end")->check(CLI::PositiveNumber);
    s->add_option("--g-points", cfg.g_points, "sweep point count")->check(CLI::Range(2, 10000));
    add_output(s, cfg);
    subs["fig2c"] = s;

    s = app.add_subcommand("stability", "phase and shape stability across a coupling sweep");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    s->add_option("--g-min", cfg.g_min, "sweep start")->check(CLI::PositiveNumber);
    s->add_option("--g-max", cfg.g_max, "sweep end")->check(CLI::PositiveNumber);
    s->add_option("--g-points", cfg.g_points, "sweep point count")->check(CLI::Range(2, 10000));
    add_output(s, cfg);
    subs["stability"] = s;

    s = app.add_subcommand("budget", "leakage error budget from experimental rates (MHz)");
    s->add_option("--kappa-mhz", cfg.kappa_mhz, "cavity decay rate / 2pi in MHz")
        ->check(CLI::PositiveNumber);
    s->add_option("--gamma-mhz", cfg.gamma_mhz, "spontaneous emission rate / 2pi in MHz")
        ->check(CLI::NonNegativeNumber);
    s->add_option("--g-mhz", cfg.g_mhz, "coupling rate / 2pi in MHz")
        ->check(CLI::NonNegativeNumber);
    add_output(s, cfg);
    subs["budget"] = s;

    s = app.add_subcommand("converge", "grid refinement study");
    add_cavity(s, cfg, strings);
    add_pulse(s, cfg);
    s->add_option("--levels", cfg.levels, "refinement levels")->check(CLI::Range(2, 6));
    add_output(s, cfg);
    subs["converge"] = s;
}

std::string trimmed(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

/// Flat `key = value` lines; `#` starts a comment; blank lines ignored.
std::vector<std::pair<std::string, std::string>> read_flat_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw UsageError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> items;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trimmed(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw UsageError("config file " + path + " line " + std::to_string(lineno) +
                             ": expected key = value");
        }
        std::string key = trimmed(line.substr(0, eq));
        std::string value = trimmed(line.substr(eq + 1));
        if (key.empty()) {
            throw UsageError("config file " + path + " line " + std::to_string(lineno) +
                             ": empty key");
        }
        items.emplace_back(std::move(key), std::move(value));
    }
    return items;
}

/// Strip `--config <file>` from the argument list and splice the file's
/// key=value pairs in as flags, skipping keys the command line already sets:
/// defaults < config file < explicit flags.
std::vector<std::string> merge_config_args(Cli& cli, const std::vector<std::string>& args) {
    std::vector<std::string> out;
    std::string config_path;
    bool config_given = false;
    for (size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) throw UsageError("--config expects a file path");
            config_path = args[++i];
            config_given = true;
        } else if (args[i].rfind("--config=", 0) == 0) {
            config_path = args[i].substr(std::string("--config=").size());
            config_given = true;
        } else {
            out.push_back(args[i]);
        }
    }
    if (!config_given) return out;

    auto sub_it = out.empty() ? cli.subs.end() : cli.subs.find(out.front());
    if (sub_it == cli.subs.end()) {
        throw UsageError("--config requires a leading subcommand");
    }
    CLI::App* sub = sub_it->second;

    std::set<std::string> given;
    for (const std::string& tok : out) {
        if (tok.rfind("--", 0) == 0) given.insert(tok.substr(0, tok.find('=')));
        if (tok == "-o") given.insert("--output");
    }
    for (auto& [key, value] : read_flat_config(config_path)) {
        std::string flag = "--" + key;
        if (key == "config" || sub->get_option_no_throw(flag) == nullptr) {
            throw UsageError("unknown key '" + key + "' in config file " + config_path);
        }
        if (given.count(flag) > 0) continue;  // explicit flag wins
        out.push_back(flag);
        out.push_back(value);
    }
    return out;
}

CavityParams cavity_from(const RunConfig& cfg) {
    CavityParams p{cfg.g, 1.0, cfg.gamma_s, cfg.delta, cfg.loss_model};
    p.validate();
    return p;
}

TimeGrid grid_from(const RunConfig& cfg, const CavityParams& params) {
    double span = cfg.T + cfg.settle / params.kappa;
    if (cfg.nbins_override > 0) {
        return make_grid(0.0, span / cfg.nbins_override, cfg.nbins_override);
    }
    if (cfg.dt_override > 0.0) {
        int n = std::max(2, static_cast<int>(std::ceil(span / cfg.dt_override)));
        return make_grid(0.0, span / n, n);
    }
    return default_reflection_grid(params, cfg.T, cfg.settle);
}

std::string cmd_line(const RunConfig& cfg) {
    std::string s = "cmd: cavsim";
    for (const std::string& a : echo_args(cfg)) s += " " + a;
    return s;
}

PhotonQubit photon_from(const std::string& token, const Envelope& env,
                        const std::string& flag) {
    double r = 1.0 / std::sqrt(2.0);
    if (token == "h") return PhotonQubit(1.0, 0.0, env);
    if (token == "v") return PhotonQubit(0.0, 1.0, env);
    if (token == "sup") return PhotonQubit(r, r, env);
    throw UsageError("invalid value '" + token + "' for " + flag);
}

int run_reflect(const RunConfig& cfg) {
    CavityParams params = cavity_from(cfg);
    TimeGrid grid = grid_from(cfg, params);
    Envelope in = make_gaussian_pulse(PulseSpec{cfg.T, PulseShape::gaussian_paper}, grid);
    AtomLabel atom = cfg.atom == 0 ? AtomLabel::g0 : AtomLabel::g1;

    if (cfg.solver == SolverKind::both) {
        ReflectionResult rt = reflect(in, atom, params);
        ReflectionResult rs = reflect_spectral(in, atom, params);
        double acc = 0.0;
        for (int i = 0; i < grid.n_bins; ++i) acc += std::norm(rt.out[i] - rs.out[i]);
        SweepTable table;
        table.name = "reflect_both";
        table.provenance = {cmd_line(cfg),
                            "time: loss_prob=" + format_g12(rt.loss_prob) +
                                " residual_excitation=" + format_g12(rt.residual_excitation) +
                                " conditional_phase=" + format_g12(rt.conditional_phase),
                            "spectral: loss_prob=" + format_g12(rs.loss_prob) +
                                " conditional_phase=" + format_g12(rs.conditional_phase),
                            "l2_distance=" + format_g12(std::sqrt(acc * grid.dt))};
        table.add_column("t");
        table.add_column("re_time");
        table.add_column("im_time");
        table.add_column("re_spectral");
        table.add_column("im_spectral");
        for (int i = 0; i < grid.n_bins; ++i) {
            table.add_row({grid.t_center(i), rt.out[i].real(), rt.out[i].imag(),
                           rs.out[i].real(), rs.out[i].imag()});
        }
        table.write_csv_file(cfg.output);
        return exit_ok;
    }

    ReflectionResult r = (cfg.solver == SolverKind::spectral)
                             ? reflect_spectral(in, atom, params)
                             : reflect(in, atom, params);
    std::ofstream os(cfg.output);
    if (!os) throw std::runtime_error("cannot open output file: " + cfg.output);
    write_envelope_csv(r.out, os,
                       {cmd_line(cfg), "loss_prob=" + format_g12(r.loss_prob),
                        "residual_excitation=" + format_g12(r.residual_excitation),
                        "conditional_phase=" + format_g12(r.conditional_phase)});
    return exit_ok;
}

int run_rcoeff(const RunConfig& cfg) {
    CavityParams params = cavity_from(cfg);
    AtomLabel atom = cfg.atom == 0 ? AtomLabel::g0 : AtomLabel::g1;
    if (!(cfg.omega_max >= cfg.omega_min)) {
        throw UsageError("--omega-max must be >= --omega-min");
    }
    SweepTable table;
    table.name = "rcoeff";
    table.provenance = {cmd_line(cfg)};
    table.add_column("omega");
    table.add_column("re");
    table.add_column("im");
    table.add_column("abs");
    table.add_column("arg");
    for (double w : lin_spaced(cfg.omega_min, cfg.omega_max, cfg.omega_points)) {
        Complex r = reflection_coefficient(w, atom, params);
        table.add_row({w, r.real(), r.imag(), std::abs(r), std::arg(r)});
    }
    table.write_csv_file(cfg.output);
    return exit_ok;
}

int run_gate(const RunConfig& cfg) {
    CavityParams params = cavity_from(cfg);
    TimeGrid grid = grid_from(cfg, params);
    Envelope env = make_gaussian_pulse(PulseSpec{cfg.T, PulseShape::gaussian_paper}, grid);

    std::string token = cfg.input;
    std::vector<PhotonQubit> photons;
    if (token == "sup") {
        photons = {photon_from("sup", env, "--input"), photon_from("sup", env, "--input")};
    } else if (token.size() == 2 && (token[0] == 'h' || token[0] == 'v') &&
               (token[1] == 'h' || token[1] == 'v')) {
        photons = {photon_from(std::string(1, token[0]), env, "--input"),
                   photon_from(std::string(1, token[1]), env, "--input")};
    } else {
        throw UsageError("invalid value '" + token + "' for --input (want hh|hv|vh|vv|sup)");
    }

    JointState input = JointState::product(AtomQubit::plus(), photons);
    auto [out, report] = cpf_photon_photon(input, params, cfg.mode);

    KeyValueTable table;
    table.name = "gate";
    table.provenance = {cmd_line(cfg),
                        "sector phases are measured against the gate input"};
    table.rows = {{"F", report.fidelity},
                  {"success_prob", report.success_prob},
                  {"lost_weight", out.lost_weight()},
                  {"norm_squared", out.norm_squared()}};
    for (const auto& [label, phase] : report.phases) {
        table.rows.emplace_back("phase_" + label, phase);
    }
    table.write_csv_file(cfg.output);
    return exit_ok;
}

void write_outcomes(const RunConfig& cfg, const std::vector<MeasurementOutcome>& outcomes,
                    const std::string& name, bool with_post_pol) {
    KeyValueTable table;
    table.name = name;
    table.provenance = {cmd_line(cfg)};
    double total = 0.0;
    for (const MeasurementOutcome& o : outcomes) total += o.probability;
    for (const MeasurementOutcome& o : outcomes) {
        std::string key = o.label;
        for (char& c : key) {
            if (c == ' ') c = '_';
        }
        table.rows.emplace_back("P_" + key, o.probability);
        if (with_post_pol && o.probability > 0.0 && o.post_state.pulse_count() == 1) {
            table.rows.emplace_back("post_" + key + "_h_weight",
                                    o.post_state.sector({Pol::h}).norm_squared());
            table.rows.emplace_back("post_" + key + "_v_weight",
                                    o.post_state.sector({Pol::v}).norm_squared());
        }
    }
    table.rows.emplace_back("lost_weight", 1.0 - total);
    table.write_csv_file(cfg.output);
}

int run_qnd(const RunConfig& cfg) {
    CavityParams params = cavity_from(cfg);
    TimeGrid grid = grid_from(cfg, params);
    Envelope env = make_gaussian_pulse(PulseSpec{cfg.T, PulseShape::gaussian_paper}, grid);
    PhotonQubit photon = photon_from(cfg.input, env, "--input");
    write_outcomes(cfg, qnd_photon_number(photon, params, cfg.mode), "qnd_photon_number", true);
    return exit_ok;
}

int run_parity(const RunConfig& cfg) {
    CavityParams params = cavity_from(cfg);
    TimeGrid grid = grid_from(cfg, params);
    Envelope env = make_gaussian_pulse(PulseSpec{cfg.T, PulseShape::gaussian_paper}, grid);
    if (cfg.input.empty()) {
        throw UsageError("--input must name at least one pulse (h or v per pulse)");
    }
    std::vector<PhotonQubit> photons;
    for (char c : cfg.input) {
        if (c != 'h' && c != 'v') {
            throw UsageError("invalid value '" + cfg.input + "' for --input (h/v per pulse)");
        }
        photons.push_back(photon_from(std::string(1, c), env, "--input"));
    }
    write_outcomes(cfg, qnd_parity(photons, params, cfg.mode), "qnd_parity", false);
    return exit_ok;
}

int run_table(const RunConfig& cfg, SweepTable table) {
    table.provenance.insert(table.provenance.begin(), cmd_line(cfg));
    table.write_csv_file(cfg.output);
    return exit_ok;
}

int dispatch(const RunConfig& cfg) {
    if (cfg.subcommand == "reflect") return run_reflect(cfg);
    if (cfg.subcommand == "rcoeff") return run_rcoeff(cfg);
    if (cfg.subcommand == "gate") return run_gate(cfg);
    if (cfg.subcommand == "qnd") return run_qnd(cfg);
    if (cfg.subcommand == "parity") return run_parity(cfg);
    if (cfg.subcommand == "fig2a") {
        return run_table(cfg, pulse_shape_comparison(cavity_from(cfg), cfg.T));
    }
    if (cfg.subcommand == "fig2b") {
        return run_table(cfg, fidelity_vs_duration(cfg.T_list, cavity_from(cfg)));
    }
    if (cfg.subcommand == "fig2c") {
        auto [table, fit] = loss_vs_coupling(log_spaced(cfg.g_min, cfg.g_max, cfg.g_points),
                                             cavity_from(cfg), cfg.T);
        return run_table(cfg, std::move(table));
    }
    if (cfg.subcommand == "stability") {
        return run_table(cfg, phase_shape_stability(
                                  lin_spaced(cfg.g_min, cfg.g_max, cfg.g_points),
                                  cavity_from(cfg), cfg.T));
    }
    if (cfg.subcommand == "budget") {
        KeyValueTable table = leakage_budget(cfg.kappa_mhz, cfg.gamma_mhz, cfg.g_mhz);
        table.provenance.insert(table.provenance.begin(), cmd_line(cfg));
        table.write_csv_file(cfg.output);
        return exit_ok;
    }
    if (cfg.subcommand == "converge") {
        return run_table(cfg, convergence_study(cavity_from(cfg), cfg.T, cfg.levels));
    }
    throw UsageError("unknown subcommand '" + cfg.subcommand + "'");
}

} // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
    Cli cli;
    std::vector<std::string> merged = merge_config_args(cli, args);
    // CLI11 parses right to left.
    std::vector<std::string> reversed(merged.rbegin(), merged.rend());
    try {
        cli.app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        throw HelpRequested(cli.app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    RunConfig& cfg = cli.cfg;
    CLI::App* sub = cli.app.get_subcommands().front();
    cfg.subcommand = sub->get_name();
    cfg.loss_model = value_of(loss_names(), cli.strings.loss, "--loss");
    cfg.mode = value_of(mode_names(), cli.strings.mode, "--mode");
    cfg.solver = value_of(solver_names(), cli.strings.solver, "--solver");

    // Per-subcommand defaults for flags the user did not set.
    auto unset = [&](const std::string& flag) {
        return sub->get_option_no_throw(flag) == nullptr || sub->count(flag) == 0;
    };
    if (cfg.subcommand == "fig2a" || cfg.subcommand == "fig2c") {
        if (unset("--T")) cfg.T = 120.0;  // T/5 = 24/kappa
    }
    if (cfg.subcommand == "fig2c") {
        if (unset("--g-min")) cfg.g_min = 0.5;
        if (unset("--g-max")) cfg.g_max = 6.0;
        if (unset("--g-points")) cfg.g_points = 20;
    }
    if (cfg.subcommand == "stability") {
        if (unset("--g-min")) cfg.g_min = 1.0;
        if (unset("--g-max")) cfg.g_max = 6.0;
        if (unset("--g-points")) cfg.g_points = 11;
    }
    if (cfg.subcommand == "gate" && cfg.input.empty()) cfg.input = "sup";
    if (cfg.subcommand == "qnd" && cfg.input.empty()) cfg.input = "sup";
    if (cfg.subcommand == "parity" && cfg.input.empty()) cfg.input = "hv";
    if (cfg.output.empty()) cfg.output = cfg.subcommand + ".csv";
    if (cfg.g_min > cfg.g_max) {
        throw UsageError("--g-min must not exceed --g-max");
    }
    return cfg;
}

std::vector<std::string> echo_args(const RunConfig& cfg) {
    std::vector<std::string> out{cfg.subcommand};
    auto num = [&](const std::string& flag, double v) {
        out.push_back(flag);
        out.push_back(format_exact(v));
    };
    auto str = [&](const std::string& flag, const std::string& v) {
        out.push_back(flag);
        out.push_back(v);
    };
    const std::string& s = cfg.subcommand;
    bool cavity = s != "budget";
    bool pulse = s == "reflect" || s == "gate" || s == "qnd" || s == "parity" ||
                 s == "fig2a" || s == "fig2c" || s == "stability" || s == "converge";
    if (s == "reflect" || s == "rcoeff") {
        num("--atom", cfg.atom);
    }
    if (cavity) {
        num("--g", cfg.g);
        num("--gamma", cfg.gamma_s);
        num("--delta", cfg.delta);
        str("--loss", name_of(loss_names(), cfg.loss_model));
    }
    if (pulse) {
        num("--T", cfg.T);
        num("--settle", cfg.settle);
        if (cfg.dt_override > 0.0) num("--dt", cfg.dt_override);
        if (cfg.nbins_override > 0) num("--nbins", cfg.nbins_override);
    }
    if (s == "reflect") str("--solver", name_of(solver_names(), cfg.solver));
    if (s == "rcoeff") {
        num("--omega-min", cfg.omega_min);
        num("--omega-max", cfg.omega_max);
        num("--omega-points", cfg.omega_points);
    }
    if (s == "gate" || s == "qnd" || s == "parity") {
        str("--input", cfg.input);
        str("--mode", name_of(mode_names(), cfg.mode));
    }
    if (s == "fig2b") {
        std::string list;
        for (double t : cfg.T_list) {
            if (!list.empty()) list += ",";
            list += format_exact(t);
        }
        str("--T-list", list);
    }
    if (s == "fig2c" || s == "stability") {
        num("--g-min", cfg.g_min);
        num("--g-max", cfg.g_max);
        num("--g-points", cfg.g_points);
    }
    if (s == "budget") {
        num("--kappa-mhz", cfg.kappa_mhz);
        num("--gamma-mhz", cfg.gamma_mhz);
        num("--g-mhz", cfg.g_mhz);
    }
    if (s == "converge") num("--levels", cfg.levels);
    str("--output", cfg.output);
    return out;
}

int run(const RunConfig& cfg) { return dispatch(cfg); }

int cli_main(int argc, const char* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    try {
        RunConfig cfg = parse_args(args);
        return run(cfg);
    } catch (const HelpRequested& h) {
        std::cout << h.what();
        return exit_ok;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const SettleWindowError& e) {
        std::cerr << "settle window exceeded: " << e.what() << "\n";
        return exit_settle_window;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_failure;
    }
}

} // namespace cavsim

// jja — Josephson junction array simulator CLI.
//
// Subcommands: modes (array normal-mode analysis), qed (qubit/COM-mode
// Jaynes-Cummings dynamics and spectroscopy), holstein {ground|ramp|scan}
// (Holstein-model exact diagonalization runs). Configuration comes from a
// key/value file validated against a per-subcommand schema; flags override.
// Exit codes: 0 success, 2 configuration/schema error, 3 solver or resource
// error.

#include "jja/array_modes.hpp"
#include "jja/config.hpp"
#include "jja/constants.hpp"
#include "jja/core_model.hpp"
#include "jja/holstein.hpp"
#include "jja/output.hpp"
#include "jja/qed.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

namespace {

constexpr const char* kToolVersion = "jja 1.0.0";

struct CommonArgs {
    std::string config_path;
    std::string output_dir = ".";
    bool output_dir_given = false;
    std::uint64_t seed = 0;
    bool force = false;
    bool plot = false;
    int workers = 1;
    std::vector<std::string> overrides;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "configuration file (key = value lines)")
        ->required();
    cmd->add_option("-o,--output-dir", args.output_dir, "directory for output artifacts")
        ->each([&args](const std::string&) { args.output_dir_given = true; });
    cmd->add_option("--seed", args.seed, "seed for stochastic choices (disorder draws)");
    cmd->add_flag("--force", args.force, "overwrite existing output files");
    cmd->add_flag("--plot", args.plot, "also emit gnuplot data/script files");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. --set N=8")
        ->type_name("KEY=VALUE");
}

jja::Config load_config(const CommonArgs& args) {
    jja::Config cfg = jja::Config::from_file(args.config_path);
    for (const std::string& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw jja::ConfigError("--set expects KEY=VALUE, got '" + kv + "'");
        cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    return cfg;
}

std::filesystem::path resolve_output_dir(const CommonArgs& args) {
    if (!args.output_dir_given) {
        if (const char* env = std::getenv("JJA_OUTPUT_DIR"); env && *env)
            return std::filesystem::path(env);
    }
    return std::filesystem::path(args.output_dir);
}

void write_manifest(const std::filesystem::path& dir, const std::string& subcommand,
                    const CommonArgs& args,
                    const std::map<std::string, std::string>& parameters,
                    const std::vector<std::string>& outputs) {
    nlohmann::json manifest;
    manifest["tool"] = kToolVersion;
    manifest["subcommand"] = subcommand;
    manifest["seed"] = args.seed;
    manifest["parameters"] = parameters;
    manifest["outputs"] = outputs;
    jja::write_json_atomic((dir / "manifest.json").string(), manifest, args.force);
}

// ---------------------------------------------------------------------------
// modes

const jja::Schema& modes_schema() {
    static const jja::Schema schema = {
        {"topology", false, "chain", "", "chain | complete"},
        {"N", true, "", "1", "number of islands"},
        {"Ic", true, "", "A", "vertical junction critical current"},
        {"C", true, "", "F", "vertical junction capacitance"},
        {"ib", false, "0", "1", "bias ratio I_b/I_c in [0,1)"},
        {"K", false, "1", "1", "horizontal/vertical critical-current ratio factor"},
        {"disorder_vertical_pct", false, "0", "%", "uniform +-% disorder on vertical E_J"},
        {"disorder_horizontal_pct", false, "0", "%", "uniform +-% disorder on horizontal E_J"},
        {"g_over_2pi", false, "50e6", "Hz", "qubit coupling for the COM quality report"},
        {"margin", false, "10", "1", "required gap/g margin"},
        {"unit_system", false, "model", "", "model (frequencies in omega_p) | si (rad/s)"},
        {"qubit_M", false, "0", "H", "qubit mutual inductance; with qubit_IcQ, report the coupling g"},
        {"qubit_IcQ", false, "0", "A", "qubit dc-SQUID critical current"},
    };
    return schema;
}

int run_modes(const CommonArgs& args) {
    const jja::Config cfg = load_config(args);
    const auto params = jja::resolve_against_schema(cfg, modes_schema());
    const std::filesystem::path dir = resolve_output_dir(args);

    jja::ArraySpec spec;
    const std::string topology = params.at("topology");
    if (topology == "chain") {
        spec.topology = jja::Topology::Chain;
    } else if (topology == "complete") {
        spec.topology = jja::Topology::Complete;
    } else {
        throw jja::ConfigError("key 'topology': expected 'chain' or 'complete', got '" +
                               topology + "'");
    }
    spec.n_sites = cfg.get_int("N");
    spec.junction.critical_current = cfg.get_double("Ic");
    spec.junction.capacitance = cfg.get_double("C");
    spec.junction.bias_ratio = cfg.has("ib") ? cfg.get_double("ib") : 0.0;
    spec.junction.k_factor = cfg.has("K") ? cfg.get_double("K") : 1.0;

    const double v_pct = std::stod(params.at("disorder_vertical_pct"));
    const double h_pct = std::stod(params.at("disorder_horizontal_pct"));
    if (v_pct > 0.0 || h_pct > 0.0)
        spec = jja::with_random_disorder(spec, v_pct, h_pct, args.seed);

    const std::string unit_system = params.at("unit_system");
    if (unit_system != "model" && unit_system != "si")
        throw jja::ConfigError("key 'unit_system': expected 'model' or 'si'");

    jja::ModeSpectrum modes = jja::array_mode_spectrum(spec);
    const double omega_p = jja::plasma_frequency(spec.junction);
    if (unit_system == "si") modes = jja::to_si(modes, spec.junction);

    jja::Table table;
    table.columns = {"s", unit_system == "si" ? "nu_rad_s" : "nu_over_omega_p"};
    for (int i = 0; i < spec.n_sites; ++i) table.columns.push_back("b_" + std::to_string(i));
    for (int s = 0; s < spec.n_sites; ++s) {
        std::vector<double> row{double(s), modes.frequencies[s]};
        for (int i = 0; i < spec.n_sites; ++i) row.push_back(modes.eigenvectors(i, s));
        table.rows.push_back(std::move(row));
    }
    jja::write_csv_atomic((dir / "modes.csv").string(), table, args.force);

    const double g_over_2pi = std::stod(params.at("g_over_2pi"));
    const double margin = std::stod(params.at("margin"));
    const double g_over_omega_p = 2.0 * jja::constants::pi * g_over_2pi / omega_p;
    const jja::ComQualityReport report = jja::com_quality(spec, g_over_omega_p, margin);

    nlohmann::json quality;
    quality["gap_over_omega_p"] = report.gap;
    quality["gap_over_2pi_hz"] = report.gap * omega_p / (2.0 * jja::constants::pi);
    quality["com_overlap"] = report.com_overlap;
    quality["n_max_for_margin"] = report.n_max_for_margin;
    quality["omega_p_rad_s"] = omega_p;
    quality["omega_p_over_2pi_hz"] = omega_p / (2.0 * jja::constants::pi);

    const double qubit_m = std::stod(params.at("qubit_M"));
    const double qubit_icq = std::stod(params.at("qubit_IcQ"));
    if (qubit_m > 0.0 && qubit_icq > 0.0) {
        const double g_rad_s = jja::qed_coupling_g(spec.junction,
                                                   {qubit_m, qubit_icq, spec.n_sites});
        quality["g_computed_rad_s"] = g_rad_s;
        quality["g_computed_over_2pi_hz"] = g_rad_s / (2.0 * jja::constants::pi);
    }
    jja::write_json_atomic((dir / "com_quality.json").string(), quality, args.force);

    std::vector<std::string> outputs = {"modes.csv", "com_quality.json", "manifest.json"};
    if (args.plot) {
        jja::emit_plot_data((dir / "modes").string(), table,
                            jja::PlotSpec{"s", {table.columns[1]}, ""}, args.force);
        outputs.push_back("modes.dat");
        outputs.push_back("modes.gp");
    }
    write_manifest(dir, "modes", args, params, outputs);
    return 0;
}

// ---------------------------------------------------------------------------
// qed

const jja::Schema& qed_schema() {
    static const jja::Schema schema = {
        {"Bz", false, "1.0", "nu0", "qubit splitting in model units"},
        {"Bx", false, "0", "nu0", "qubit transverse field"},
        {"nu0", false, "1.0", "", "resonator (COM mode) frequency, model units"},
        {"g", true, "", "nu0", "qubit-resonator coupling"},
        {"n_max", false, "8", "1", "Fock cutoff"},
        {"t_max", true, "", "1/nu0", "trajectory end time"},
        {"t_steps", false, "1000", "1", "trajectory grid points"},
        {"detuning_max", false, "0", "nu0", "spectroscopy grid half-width (0 disables)"},
        {"detuning_steps", false, "41", "1", "spectroscopy grid points"},
    };
    return schema;
}

int run_qed(const CommonArgs& args) {
    const jja::Config cfg = load_config(args);
    const auto params = jja::resolve_against_schema(cfg, qed_schema());
    const std::filesystem::path dir = resolve_output_dir(args);

    jja::QedSpec spec;
    spec.qubit_bz = std::stod(params.at("Bz"));
    spec.qubit_bx = std::stod(params.at("Bx"));
    spec.resonator_freq = std::stod(params.at("nu0"));
    spec.coupling_g = cfg.get_double("g");
    spec.fock_cutoff = std::stoi(params.at("n_max"));

    const double t_max = cfg.get_double("t_max");
    const int t_steps = std::stoi(params.at("t_steps"));
    if (t_steps < 2) throw jja::ConfigError("key 't_steps': need at least 2 grid points");
    std::vector<double> times(t_steps);
    for (int k = 0; k < t_steps; ++k) times[k] = t_max * k / (t_steps - 1);

    const jja::Trajectory traj = jja::rabi_trajectory(spec, times);
    jja::Table traj_table;
    traj_table.columns = {"t", "P_e", "n_phot", "N_exc"};
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        traj_table.rows.push_back({traj.times[k], traj.observables.at("P_e")[k],
                                   traj.observables.at("n_phot")[k],
                                   traj.observables.at("N_exc")[k]});
    jja::write_csv_atomic((dir / "trajectory.csv").string(), traj_table, args.force);

    std::vector<std::string> outputs = {"trajectory.csv", "manifest.json"};

    const double det_max = std::stod(params.at("detuning_max"));
    if (det_max > 0.0) {
        const int det_steps = std::stoi(params.at("detuning_steps"));
        std::vector<double> detunings(det_steps);
        for (int k = 0; k < det_steps; ++k)
            detunings[k] = det_steps == 1 ? 0.0 : -det_max + 2.0 * det_max * k / (det_steps - 1);
        const auto rows = jja::dressed_spectrum(spec, detunings);
        jja::Table spect;
        spect.columns = {"Delta", "E1", "E2", "E3", "E4", "splitting"};
        for (const auto& r : rows)
            spect.rows.push_back(
                {r.detuning, r.levels[0], r.levels[1], r.levels[2], r.levels[3], r.splitting});
        jja::write_csv_atomic((dir / "spectroscopy.csv").string(), spect, args.force);
        outputs.insert(outputs.begin() + 1, "spectroscopy.csv");
        if (args.plot) {
            jja::emit_plot_data((dir / "spectroscopy").string(), spect,
                                jja::PlotSpec{"Delta", {"E2", "E3"}, ""}, args.force);
            outputs.push_back("spectroscopy.dat");
            outputs.push_back("spectroscopy.gp");
        }
    }
    if (args.plot) {
        jja::emit_plot_data((dir / "trajectory").string(), traj_table,
                            jja::PlotSpec{"t", {"P_e", "n_phot"}, ""}, args.force);
        outputs.push_back("trajectory.dat");
        outputs.push_back("trajectory.gp");
    }
    write_manifest(dir, "qed", args, params, outputs);
    return 0;
}

// ---------------------------------------------------------------------------
// holstein

jja::Schema holstein_schema(const std::string& verb) {
    jja::Schema schema = {
        {"N", false, "4", "1", "number of lattice sites"},
        {"t", false, "1.0", "omega", "hopping"},
        {"omega", false, "1.0", "", "phonon frequency (model energy unit)"},
        {"g", false, "0", "omega", "electron-phonon coupling"},
        {"boundary", false, "open", "", "open | periodic (spin ring bond)"},
        {"n_max", false, "4", "1", "phonon cutoff per site"},
        {"lambda", false, "0", "omega", "anharmonic quartic coefficient"},
        {"Bz", false, "0", "omega", "uniform chemical field"},
        {"Bx", false, "0", "omega", "leakage field (breaks number conservation)"},
        {"filling", false, "-1", "1", "fermion count; -1 means N/2"},
    };
    if (verb == "ramp") {
        schema.push_back({"ramp_T", true, "", "1/omega", "total ramp time"});
        schema.push_back({"ramp_steps", false, "1000", "1", "piecewise-constant steps"});
        schema.push_back({"ramp_t_target", true, "", "omega", "final hopping"});
        schema.push_back({"ramp_g_target", true, "", "omega", "final coupling"});
        schema.push_back({"ramp_pin_field", false, "0", "omega",
                          "staggered pinning field ramped off along the path (protocol extension)"});
    } else if (verb == "scan") {
        schema.push_back({"scan_t_min", true, "", "omega", "t/omega grid start"});
        schema.push_back({"scan_t_max", true, "", "omega", "t/omega grid end"});
        schema.push_back({"scan_t_steps", false, "1", "1", "t/omega grid points"});
        schema.push_back({"scan_g_min", true, "", "omega", "g/omega grid start"});
        schema.push_back({"scan_g_max", true, "", "omega", "g/omega grid end"});
        schema.push_back({"scan_g_steps", false, "9", "1", "g/omega grid points"});
    }
    return schema;
}

jja::HolsteinSpec holstein_spec_from(const std::map<std::string, std::string>& params) {
    jja::HolsteinSpec spec;
    spec.n_sites = std::stoi(params.at("N"));
    spec.hopping = std::stod(params.at("t"));
    spec.phonon_freq = std::stod(params.at("omega"));
    spec.coupling = std::stod(params.at("g"));
    const std::string boundary = params.at("boundary");
    if (boundary == "open") {
        spec.boundary = jja::Boundary::Open;
    } else if (boundary == "periodic") {
        spec.boundary = jja::Boundary::Periodic;
    } else {
        throw jja::ConfigError("key 'boundary': expected 'open' or 'periodic'");
    }
    spec.phonon_cutoff = std::stoi(params.at("n_max"));
    spec.anharmonic_lambda = std::stod(params.at("lambda"));
    spec.chemical_bz = std::stod(params.at("Bz"));
    spec.leakage_bx = std::stod(params.at("Bx"));
    spec.filling = std::stoi(params.at("filling"));
    return spec;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int k = 0; k < n; ++k) v[k] = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    return v;
}

nlohmann::json phase_point_json(const jja::PhasePoint& p) {
    nlohmann::json j;
    j["t_over_omega"] = p.t_over_omega;
    j["g_over_omega"] = p.g_over_omega;
    j["ground_energy"] = p.ground_energy;
    j["excitation_gap"] = p.excitation_gap;
    j["cdw_order_S_pi"] = p.cdw_order;
    j["density_profile"] = p.density;
    j["solver_ok"] = p.solver_ok;
    if (!p.solver_ok) j["error"] = p.error;
    return j;
}

int run_holstein(const std::string& verb, const CommonArgs& args) {
    const jja::Config cfg = load_config(args);
    const auto params = jja::resolve_against_schema(cfg, holstein_schema(verb));
    const std::filesystem::path dir = resolve_output_dir(args);
    const jja::HolsteinSpec spec = holstein_spec_from(params);
    std::vector<std::string> outputs;

    if (verb == "ground") {
        const jja::Operator h = jja::holstein_hamiltonian(spec);
        const jja::GroundStateResult gs = jja::ground_state(h, jja::filling_sector(spec), 2);
        jja::PhasePoint point;
        point.t_over_omega = spec.hopping / spec.phonon_freq;
        point.g_over_omega = spec.coupling / spec.phonon_freq;
        point.ground_energy = gs.energies[0];
        point.excitation_gap = gs.energies[1] - gs.energies[0];
        point.cdw_order = jja::cdw_structure_factor(gs.states.front());
        point.density = jja::density_profile(gs.states.front());
        nlohmann::json j = phase_point_json(point);
        j["residuals"] = gs.residuals;
        j["top_level_weight"] = gs.top_level_weight;
        j["cutoff_warning"] = gs.cutoff_warning;
        jja::write_json_atomic((dir / "ground.json").string(), j, args.force);
        outputs = {"ground.json", "manifest.json"};
        if (gs.cutoff_warning)
            std::cerr << "warning: ground-state weight on the phonon cutoff level is "
                      << gs.top_level_weight << "; increase n_max\n";
    } else if (verb == "ramp") {
        const jja::RampSchedule schedule = jja::RampSchedule::linear(
            cfg.get_double("ramp_T"), std::stoi(params.at("ramp_steps")),
            cfg.get_double("ramp_t_target"), cfg.get_double("ramp_g_target"),
            std::stod(params.at("ramp_pin_field")));
        const jja::RampResult result = jja::adiabatic_ramp(spec, schedule);
        nlohmann::json j;
        j["fidelity"] = result.fidelity;
        j["number_drift"] = result.number_drift;
        j["max_top_level_weight"] = result.max_top_level_weight;
        j["cutoff_warning"] = result.cutoff_warning;
        j["final_density_profile"] = jja::density_profile(result.final_state);
        j["final_cdw_order_S_pi"] = jja::cdw_structure_factor(result.final_state);
        jja::write_json_atomic((dir / "ramp.json").string(), j, args.force);
        outputs = {"ramp.json", "manifest.json"};
        if (result.cutoff_warning)
            std::cerr << "warning: phonon cutoff occupation reached "
                      << result.max_top_level_weight << " during the ramp; increase n_max\n";
    } else { // scan
        const std::vector<double> t_grid =
            linspace(std::stod(params.at("scan_t_min")), std::stod(params.at("scan_t_max")),
                     std::stoi(params.at("scan_t_steps")));
        const std::vector<double> g_grid =
            linspace(std::stod(params.at("scan_g_min")), std::stod(params.at("scan_g_max")),
                     std::stoi(params.at("scan_g_steps")));
        const auto points = jja::phase_scan(spec, t_grid, g_grid, args.workers);

        jja::Table table;
        table.columns = {"t_over_omega", "g_over_omega", "E0", "gap", "S_pi"};
        for (int i = 1; i <= spec.n_sites; ++i)
            table.columns.push_back("n_" + std::to_string(i));
        nlohmann::json records = nlohmann::json::array();
        for (const auto& p : points) {
            std::vector<double> row{p.t_over_omega, p.g_over_omega, p.ground_energy,
                                    p.excitation_gap, p.cdw_order};
            for (int i = 0; i < spec.n_sites; ++i)
                row.push_back(p.solver_ok ? p.density[i] : 0.0);
            table.rows.push_back(std::move(row));
            records.push_back(phase_point_json(p));
        }
        jja::write_csv_atomic((dir / "scan.csv").string(), table, args.force);
        jja::write_json_atomic((dir / "scan.json").string(), records, args.force);
        outputs = {"scan.csv", "scan.json", "manifest.json"};
        if (args.plot) {
            jja::emit_plot_data((dir / "scan").string(), table,
                                jja::PlotSpec{"g_over_omega", {"S_pi"}, "t_over_omega"},
                                args.force);
            outputs.push_back("scan.dat");
            outputs.push_back("scan.gp");
        }
    }
    write_manifest(dir, "holstein " + verb, args, params, outputs);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Josephson junction array simulator"};
    app.require_subcommand(1);

    CommonArgs modes_args, qed_args, holstein_args;
    CLI::App* modes_cmd = app.add_subcommand("modes", "array normal-mode analysis");
    add_common_flags(modes_cmd, modes_args);
    CLI::App* qed_cmd = app.add_subcommand("qed", "qubit/COM-mode dynamics and spectroscopy");
    add_common_flags(qed_cmd, qed_args);

    CLI::App* holstein_cmd = app.add_subcommand("holstein", "Holstein model runs");
    holstein_cmd->require_subcommand(1);
    std::string verb;
    for (const char* v : {"ground", "ramp", "scan"}) {
        CLI::App* sub = holstein_cmd->add_subcommand(v, std::string("holstein ") + v);
        add_common_flags(sub, holstein_args);
        if (std::string(v) == "scan")
            sub->add_option("--workers", holstein_args.workers, "concurrent scan workers");
        sub->callback([&verb, v]() { verb = v; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (modes_cmd->parsed()) return run_modes(modes_args);
        if (qed_cmd->parsed()) return run_qed(qed_args);
        if (holstein_cmd->parsed()) return run_holstein(verb, holstein_args);
    } catch (const jja::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
    return 0;
}

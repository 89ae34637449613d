#include "cavmem/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <iomanip>
#include <optional>

#include <CLI11.hpp>

#include "cavmem/config.hpp"
#include "cavmem/dynamics.hpp"
#include "cavmem/emit.hpp"
#include "cavmem/errors.hpp"
#include "cavmem/loading.hpp"
#include "cavmem/presets.hpp"
#include "cavmem/reflection.hpp"
#include "cavmem/sweep.hpp"

namespace cavmem {

namespace {

namespace fs = std::filesystem;

struct PointSetup {
    SystemParams params;
    SchemeGeometry geom;
    double sigma = 0.1;
    double c = 0.0;
    InterferometerSettings ifc;
    std::size_t grid_points = FrequencyGrid::default_points;
};

const Preset* preset_for(const RunConfig& cfg) {
    if (!cfg.preset) return nullptr;
    const Preset* p = find_preset(*cfg.preset);
    if (!p) {
        throw ConfigError("unknown preset '" + *cfg.preset + "'; see `preset list`");
    }
    return p;
}

std::vector<Scheme> schemes_for(const RunConfig& cfg, const Preset* preset) {
    if (cfg.scheme) {
        if (*cfg.scheme == "both") return {Scheme::PushPull, Scheme::OnOff};
        return {scheme_from_name(*cfg.scheme)};
    }
    if (preset && preset->scheme) return {*preset->scheme};
    return {Scheme::PushPull, Scheme::OnOff};
}

PointSetup make_point(const RunConfig& cfg, std::ostream& err) {
    const Preset* preset = preset_for(cfg);
    PointSetup ps;
    if (!preset && !(cfg.delta && cfg.gamma && cfg.sigma)) {
        throw ConfigError("give --preset, or --delta, --gamma and --sigma explicitly");
    }

    ps.geom.scheme = schemes_for(cfg, preset).front();
    ps.geom.delta = cfg.delta.value_or(preset ? preset->delta : 10.0);
    ps.sigma = cfg.sigma.value_or(preset ? preset->sigma : 0.1);
    if (cfg.grid_points) ps.grid_points = *cfg.grid_points;

    SystemParams p;
    p.gamma = cfg.gamma.value_or(preset ? preset->gamma : 0.1);
    p.kappa_j = cfg.kappa_j.value_or(preset ? preset->kappa_j : 0.0);
    p.delta_c = cfg.delta_c.value_or(0.0);
    ps.params = with_geometry(p, ps.geom);

    std::optional<double> g = cfg.g;
    if (!g && preset && preset->g_fixed) g = preset->g_fixed;
    if (g) {
        ps.params.g = *g;
        ps.c = ps.params.cooperativity();
    } else if (cfg.c) {
        ps.c = *cfg.c;
        ps.params.g = g_from_cooperativity(ps.c, ps.params.kappa, ps.params.gamma);
    } else if (preset && preset->c_fixed && !preset->c_at_pi) {
        ps.c = *preset->c_fixed;
        ps.params.g = g_from_cooperativity(ps.c, ps.params.kappa, ps.params.gamma);
    } else if (ps.geom.scheme == Scheme::PushPull) {
        ps.c = c_pi(ps.params, ps.params.delta_1);
        ps.params.g = g_from_cooperativity(ps.c, ps.params.kappa, ps.params.gamma);
        err << "note: cooperativity not given, using C_pi = " << ps.c << "\n";
    } else {
        throw ConfigError("the on-off scheme needs an explicit --c (or --g)");
    }

    ps.ifc = InterferometerSettings(cfg.theta.value_or(default_theta(ps.geom.scheme)),
                                    cfg.delay.value_or(1.2), cfg.eta.value_or(1.0));
    return ps;
}

SweepSpec make_sweep_spec(const RunConfig& cfg) {
    const Preset* preset = preset_for(cfg);
    SweepSpec spec;
    if (preset) spec = SweepSpec::from_preset(*preset);
    if (!preset && !(cfg.delta && cfg.gamma && cfg.sigma)) {
        throw ConfigError("give --preset, or --delta, --gamma and --sigma explicitly");
    }
    if (cfg.delta) spec.delta = *cfg.delta;
    if (cfg.gamma) spec.gamma = *cfg.gamma;
    if (cfg.kappa_j) spec.kappa_j = *cfg.kappa_j;
    if (cfg.delta_c) spec.delta_c = *cfg.delta_c;
    if (cfg.sigma) spec.sigma = *cfg.sigma;
    if (cfg.c_min) spec.c_min = *cfg.c_min;
    if (cfg.c_max) spec.c_max = *cfg.c_max;
    if (cfg.c_points) spec.c_points = *cfg.c_points;
    if (cfg.theta) spec.theta_override = *cfg.theta;
    if (cfg.delay) spec.delay = *cfg.delay;
    if (cfg.eta) spec.eta = *cfg.eta;
    if (cfg.grid_points) spec.grid_points = *cfg.grid_points;
    if (cfg.bloch_polar) spec.bloch_polar = *cfg.bloch_polar;
    if (cfg.bloch_azimuth) spec.bloch_azimuth = *cfg.bloch_azimuth;
    if (cfg.optimize_interferometer) spec.optimize_interferometer = *cfg.optimize_interferometer;
    spec.schemes = schemes_for(cfg, preset);
    return spec;
}

fs::path ensure_out_dir(const RunConfig& cfg) {
    const fs::path dir = cfg.out_dir ? fs::path(*cfg.out_dir) : fs::path(".");
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
    return dir;
}

std::string output_stem(const RunConfig& cfg, const std::string& fallback) {
    return cfg.preset ? *cfg.preset : fallback;
}

// "<preset>-<kind>.csv" when a preset names the run, else "<kind>.csv".
std::string output_name(const RunConfig& cfg, const std::string& kind) {
    return cfg.preset ? *cfg.preset + "-" + kind + ".csv" : kind + ".csv";
}

void print_diagnostics(const std::vector<std::string>& diagnostics, std::ostream& err) {
    for (const std::string& d : diagnostics) err << "warning: " << d << "\n";
}

int cmd_reflectivity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    PointSetup ps = make_point(cfg, err);
    const SystemParams& p = ps.params;
    // Plotting grid: wide enough to show the atomic structure, not just the
    // photon bandwidth.
    const double span = std::max({2.0 * std::abs(p.delta_1), 2.0 * std::abs(p.delta_2),
                                  4.0 * p.g, 8.0 * p.kappa});
    const FrequencyGrid grid(span, ps.grid_points);
    const ReflectionSpectrum rs = reflection_spectrum(p, grid);
    const PhaseReport pr = phase_report(rs);

    const fs::path path = ensure_out_dir(cfg) / output_name(cfg, "reflectivity");
    emit_csv(rs, pr, path);

    out << "scheme " << scheme_name(ps.geom.scheme) << ", C = " << ps.c
        << ", g = " << p.g << ", detunings (" << p.delta_1 << ", " << p.delta_2 << ")\n";
    if (ps.geom.scheme == Scheme::PushPull && p.kappa_j <= p.kappa && p.delta_c == 0.0) {
        out << "C_pi = " << c_pi(p, p.delta_1) << "\n";
    }
    out << "delta_phase(0) = " << pr.delta_phase_at_0 << "\n";
    for (int state : {1, 2}) {
        const auto minima = reflectivity_minima(rs, state);
        out << "|r_" << state << "| minima at omega =";
        if (minima.empty()) out << " (none)";
        for (double w : minima) out << " " << w;
        out << "\n";
    }
    out << "wrote " << path.string() << "\n";
    return 0;
}

PulseFn gaussian_pulse(double sigma) {
    return [sigma](double t) { return gaussian_time_amplitude(sigma, t); };
}

int cmd_dynamics(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    PointSetup ps = make_point(cfg, err);
    const int state = cfg.atom_state.value_or(1);
    const double delta_j = ps.params.detuning(state);

    IntegrationControl ctrl = IntegrationControl::for_pulse(ps.sigma, ps.params);
    if (cfg.rel_tol) ctrl.rel_tol = *cfg.rel_tol;
    if (cfg.abs_tol) ctrl.abs_tol = *cfg.abs_tol;
    if (cfg.samples) ctrl.samples = std::max<std::size_t>(*cfg.samples, 2);

    AmplitudeTrajectory traj;
    FluxBalance fb{};
    if (cfg.kappa_q) {
        FullSystemParams fp;
        fp.base = ps.params;
        fp.kappa_q = *cfg.kappa_q;
        fp.g_q = std::sqrt(ps.params.gamma * fp.kappa_q);
        traj = integrate_full(fp, delta_j, gaussian_pulse(ps.sigma), ctrl);
        fb = flux_balance(traj, fp);
        if (traj.stiffness_warning) {
            err << "warning: kappa_q/kappa > 1e6, the explicit integrator is running "
                   "stiffness-limited\n";
        }
    } else {
        traj = integrate_reduced(ps.params, delta_j, gaussian_pulse(ps.sigma), ctrl);
        fb = flux_balance(traj, ps.params);
    }

    const fs::path path = ensure_out_dir(cfg) / output_name(cfg, "dynamics");
    emit_csv(traj, path);

    double peak = 0.0;
    for (const auto& amp : traj.psi_e) peak = std::max(peak, std::norm(amp));
    out << "atom state " << state << " (delta_j = " << delta_j << "), steps = " << traj.steps
        << "\n";
    out << "peak |psi_e|^2 = " << peak << "\n";
    out << "flux balance: reflected " << fb.reflected << " + J loss " << fb.j_loss
        << " + spontaneous " << fb.spont_loss << " = " << fb.total() << "\n";
    out << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_loading(const RunConfig& cfg, std::ostream& out, std::ostream& err, double chi,
                double phi) {
    PointSetup ps = make_point(cfg, err);
    const FrequencyGrid grid = FrequencyGrid::for_sigma(ps.sigma, ps.grid_points);
    const ReflectionSpectrum rs = reflection_spectrum(ps.params, grid);
    const PhotonSpectrum ph = gaussian_spectrum(ps.sigma, grid);
    const QubitState q = QubitState::from_angles(chi, phi);
    const LoadingReport rep = loading_report(rs, ph, q, ps.ifc);

    const fs::path path = ensure_out_dir(cfg) / output_name(cfg, "loading");
    emit_csv(rep, path);

    out << "scheme " << scheme_name(ps.geom.scheme) << ", C = " << ps.c << ", qubit chi = " << chi
        << ", phi = " << phi << "\n";
    out << "R1 = " << rep.r1 << ", R2 = " << rep.r2 << ", P_herald = " << rep.p_herald << "\n";
    out << "K+ = " << rep.k_plus << ", K- = " << rep.k_minus << "\n";
    out << "F+ = " << rep.f_plus << ", F- = " << rep.f_minus
        << ", herald-weighted F = " << rep.f_weighted() << "\n";
    out << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const SweepSpec spec = make_sweep_spec(cfg);
    const SweepResult result = run_sweep(spec);
    print_diagnostics(result.diagnostics, err);

    const fs::path dir = ensure_out_dir(cfg);
    const std::string stem = output_stem(cfg, "sweep");
    emit_csv(result, dir / (stem + ".csv"));
    emit_svg(result, dir / (stem + ".svg"));

    if (result.rows.empty()) {
        err << "warning: sweep produced no rows\n";
    }
    for (Scheme scheme : spec.schemes) {
        const SweepRow* best = nullptr;
        for (const SweepRow& r : result.rows) {
            if (r.scheme == scheme && (!best || r.f_ave > best->f_ave)) best = &r;
        }
        if (best) {
            out << scheme_name(scheme) << ": best F_ave = " << best->f_ave << " at C = "
                << best->c << " (P_herald_ave = " << best->p_herald_ave << ")\n";
        }
    }
    out << "wrote " << (dir / (stem + ".csv")).string() << " and "
        << (dir / (stem + ".svg")).string() << "\n";
    return 0;
}

int cmd_bandwidth(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    RunConfig local = cfg;
    if (!local.preset && !local.sigma_list) local.preset = "fig9";
    const Preset* preset = preset_for(local);
    const SweepSpec spec = make_sweep_spec(local);

    std::vector<double> sigmas;
    if (local.sigma_list) {
        sigmas = *local.sigma_list;
    } else if (preset && !preset->sigma_list.empty()) {
        sigmas = preset->sigma_list;
    } else {
        throw ConfigError("bandwidth: give --sigma-list or a preset that defines one");
    }

    const BandwidthResult result = run_bandwidth_scan(spec, sigmas, local.c);
    print_diagnostics(result.diagnostics, err);

    const fs::path dir = ensure_out_dir(local);
    const std::string stem = output_stem(local, "bandwidth");
    emit_csv(result, dir / (stem + ".csv"));
    emit_svg(result, dir / (stem + ".svg"));

    out << "rows: " << result.rows.size()
        << ", F strictly decreasing: " << (result.f_strictly_decreasing ? "yes" : "no")
        << ", P strictly increasing: " << (result.p_strictly_increasing ? "yes" : "no") << "\n";
    out << "wrote " << (dir / (stem + ".csv")).string() << " and "
        << (dir / (stem + ".svg")).string() << "\n";
    return 0;
}

int cmd_population(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::vector<DurationConvention> conventions;
    if (cfg.conventions) {
        for (const std::string& name : *cfg.conventions) {
            conventions.push_back(duration_convention_from_name(name));
        }
    } else {
        conventions = {DurationConvention::IntensityFwhm,
                       DurationConvention::AmplitudeInvEHalfWidth,
                       DurationConvention::IntensitySigma};
    }
    const PopulationResult result =
        run_population_demo(conventions, cfg.duration.value_or(1.0), cfg.gamma.value_or(0.01));
    print_diagnostics(result.diagnostics, err);

    const fs::path path = ensure_out_dir(cfg) / "population.csv";
    emit_csv(result, path);

    out << "kappa = g = 1, gamma = " << cfg.gamma.value_or(0.01) << ", duration = "
        << cfg.duration.value_or(1.0) << "\n";
    for (const PopulationRow& r : result.rows) {
        out << std::left << std::setw(28) << duration_convention_name(r.convention)
            << " sigma = " << std::setw(10) << r.sigma << " peak |psi_e|^2 = "
            << r.peak_population << " at t = " << r.peak_time << "\n";
    }
    out << "wrote " << path.string() << "\n";
    return 0;
}

int cmd_preset_list(std::ostream& out) {
    for (const Preset& p : preset_catalog()) {
        out << std::left << std::setw(14) << p.name << p.title << "\n";
    }
    return 0;
}

int cmd_preset_show(const std::string& name, std::ostream& out) {
    const Preset* p = find_preset(name);
    if (!p) throw ConfigError("unknown preset '" + name + "'; see `preset list`");
    out << "preset " << p->name << ": " << p->title << "\n";
    out << "  delta = " << p->delta << " (units of kappa)\n";
    out << "  sigma = " << p->sigma << "\n";
    out << "  gamma = " << p->gamma << "\n";
    out << "  kappa_j = " << p->kappa_j << "\n";
    if (p->c_fixed) {
        out << "  C = " << *p->c_fixed << "\n";
    } else if (p->c_at_pi) {
        out << "  C = C_pi\n";
    } else {
        out << "  C range = " << p->c_min << " .. " << p->c_max << "\n";
    }
    if (p->g_fixed) out << "  g = " << *p->g_fixed << "\n";
    if (p->scheme) out << "  scheme = " << scheme_name(*p->scheme) << "\n";
    if (!p->sigma_list.empty()) {
        out << "  sigma list =";
        for (double s : p->sigma_list) out << " " << s;
        out << "\n";
    }
    out << "  provenance: " << p->provenance << "\n";
    return 0;
}

void add_point_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--preset", cfg.preset, "preset name (see `preset list`)");
    cmd->add_option("--scheme", cfg.scheme, "push-pull, on-off or both");
    cmd->add_option("--delta", cfg.delta, "ground-state separation (units of kappa)");
    cmd->add_option("--gamma", cfg.gamma, "atomic damping rate");
    cmd->add_option("--kappa-j", cfg.kappa_j, "cavity loss rate");
    cmd->add_option("--delta-c", cfg.delta_c, "cavity-carrier detuning");
    cmd->add_option("--sigma", cfg.sigma, "photon linewidth parameter");
    cmd->add_option("--c", cfg.c, "cooperativity");
    cmd->add_option("--g", cfg.g, "Rabi coupling (overrides --c)");
    cmd->add_option("--theta", cfg.theta, "interferometer phase (radians)");
    cmd->add_option("--delay", cfg.delay, "interferometer delay T (units 1/kappa)");
    cmd->add_option("--eta", cfg.eta, "lower-path attenuation in [0,1]");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"single-photon cavity-atom memory loading toolkit"};
    app.name("cavmem");
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cli_cfg;
    std::string config_path;
    app.add_option("--config", config_path, "flat TOML config file");
    app.add_option("--out", cli_cfg.out_dir, "output directory (default .)");
    app.add_option("--grid-points", cli_cfg.grid_points, "frequency grid points (odd)");
    app.add_option("--tol", cli_cfg.rel_tol, "integrator relative tolerance");
    app.add_option("--seed", cli_cfg.seed,
                   "seed reserved for randomized diagnostics (accepted, echoed into configs)");

    CLI::App* reflectivity = app.add_subcommand("reflectivity", "reflection spectra and phases");
    add_point_flags(reflectivity, cli_cfg);

    CLI::App* dynamics = app.add_subcommand("dynamics", "time-domain amplitude trajectories");
    add_point_flags(dynamics, cli_cfg);
    dynamics->add_option("--state", cli_cfg.atom_state, "atomic ground state (1 or 2)");
    dynamics->add_option("--kappa-q", cli_cfg.kappa_q,
                         "integrate the full three-amplitude system with this kappa_q");
    dynamics->add_option("--samples", cli_cfg.samples, "output sample count");

    CLI::App* loading = app.add_subcommand("loading", "single-point memory-loading report");
    add_point_flags(loading, cli_cfg);
    double chi = 1.5707963267948966, phi = 0.0;
    loading->add_option("--chi", chi, "qubit polar angle (radians)");
    loading->add_option("--phi", phi, "qubit azimuthal angle (radians)");

    CLI::App* sweep = app.add_subcommand("sweep", "fidelity/herald trajectories versus C");
    add_point_flags(sweep, cli_cfg);
    sweep->add_option("--c-min", cli_cfg.c_min, "sweep lower C");
    sweep->add_option("--c-max", cli_cfg.c_max, "sweep upper C");
    sweep->add_option("--c-points", cli_cfg.c_points, "log-spaced sample count");
    sweep->add_option("--bloch-polar", cli_cfg.bloch_polar, "Bloch quadrature polar nodes");
    sweep->add_option("--bloch-azimuth", cli_cfg.bloch_azimuth, "Bloch quadrature azimuth nodes");
    sweep->add_flag("--optimize-interferometer", [&cli_cfg](std::int64_t) {
        cli_cfg.optimize_interferometer = true;
    }, "refine (theta, T) by golden section");

    CLI::App* bandwidth = app.add_subcommand("bandwidth", "fidelity/herald versus photon bandwidth");
    add_point_flags(bandwidth, cli_cfg);
    bandwidth->add_option("--sigma-list", cli_cfg.sigma_list, "sigma values to scan");

    CLI::App* population = app.add_subcommand("population", "excited-state population demonstration");
    population->add_option("--duration", cli_cfg.duration, "pulse duration (default 1)");
    population->add_option("--gamma", cli_cfg.gamma, "atomic damping rate (default 0.01)");
    population->add_option("--conventions", cli_cfg.conventions,
                           "duration conventions (fwhm, inv-e, sigma-t)");

    CLI::App* preset = app.add_subcommand("preset", "preset catalog");
    preset->require_subcommand(1);
    CLI::App* preset_list = preset->add_subcommand("list", "list presets");
    CLI::App* preset_show = preset->add_subcommand("show", "show one preset");
    std::string preset_name;
    preset_show->add_option("name", preset_name, "preset name")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) {
            cfg = RunConfig::from_file(config_path);
            cfg.normalize_units();
        }
        cfg.merge_from(cli_cfg);

        if (reflectivity->parsed()) return cmd_reflectivity(cfg, out, err);
        if (dynamics->parsed()) return cmd_dynamics(cfg, out, err);
        if (loading->parsed()) return cmd_loading(cfg, out, err, chi, phi);
        if (sweep->parsed()) return cmd_sweep(cfg, out, err);
        if (bandwidth->parsed()) return cmd_bandwidth(cfg, out, err);
        if (population->parsed()) return cmd_population(cfg, out, err);
        if (preset->parsed()) {
            if (preset_list->parsed()) return cmd_preset_list(out);
            if (preset_show->parsed()) return cmd_preset_show(preset_name, out);
        }
        err << "error: no subcommand selected\n" << app.help();
        return 1;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        err << "config error: " << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << "\n";
        return 3;
    } catch (const NumericError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cavmem

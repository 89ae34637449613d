#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavmem/cli.hpp"
#include "cavmem/config.hpp"
#include "cavmem/emit.hpp"
#include "cavmem/errors.hpp"
#include "cavmem/presets.hpp"
#include "cavmem/sweep.hpp"

using namespace cavmem;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("cavmem-test-" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

}  // namespace

TEST_SUITE("runner") {

TEST_CASE("preset catalog matches the pinned constants") {
    struct Expected {
        const char* name;
        double delta, gamma, kappa_j, sigma;
    };
    const Expected expected[] = {
        {"fig5-onoff", 100.0, 1.0, 0.0, 1.0},
        {"fig5-pushpull", 100.0, 1.0, 0.0, 1.0},
        {"fig6", 10.0, 0.1, 0.0, 0.1},
        {"fig7a", 5.0, 0.1, 0.003, 0.1},
        {"fig7b", 2.0, 0.1, 0.003, 0.1},
        {"fig8a", 0.0043, 0.00083, 0.23, 0.0005},
        {"fig8b", 0.0043, 0.00083, 0.023, 0.0005},
        {"fig9", 0.0043, 0.00083, 0.023, 0.0005},
        {"siv", 0.0043, 0.00083, 0.23, 0.0005},
    };
    for (const Expected& e : expected) {
        const Preset* p = find_preset(e.name);
        REQUIRE_MESSAGE(p != nullptr, e.name);
        CHECK(p->delta == e.delta);
        CHECK(p->gamma == e.gamma);
        CHECK(p->kappa_j == e.kappa_j);
        CHECK(p->sigma == e.sigma);
    }
    CHECK(find_preset("fig5-onoff")->c_fixed == 10.0);
    CHECK(find_preset("fig5-pushpull")->c_at_pi);
    CHECK(find_preset("siv")->g_fixed == 0.050);
    CHECK(find_preset("fig9")->sigma_list ==
          std::vector<double>{1.0 / 500.0, 1.0 / 200.0, 1.0 / 100.0, 1.0 / 50.0, 1.0 / 30.0});
    CHECK(find_preset("nope") == nullptr);
}

TEST_CASE("sweep rows are ordered and carry the C_pi marker") {
    SweepSpec spec = SweepSpec::from_preset(*find_preset("fig6"));
    spec.c_points = 12;
    const SweepResult result = run_sweep(spec);
    REQUIRE(result.diagnostics.empty());

    int cpi_rows = 0;
    for (Scheme scheme : {Scheme::PushPull, Scheme::OnOff}) {
        double prev = 0.0;
        for (const SweepRow& row : result.rows) {
            if (row.scheme != scheme) continue;
            CHECK(row.c > prev);
            prev = row.c;
            CHECK(row.r1 >= 0.0);
            CHECK(row.r1 <= 1.0);
            CHECK(row.r2 >= 0.0);
            CHECK(row.r2 <= 1.0);
            CHECK(row.f_ave >= 0.0);
            CHECK(row.f_ave <= 1.0);
            CHECK(row.p_herald_ave >= 0.0);
            CHECK(row.p_herald_ave <= 1.0);
            if (row.at_c_pi) {
                ++cpi_rows;
                CHECK(row.scheme == Scheme::PushPull);
                CHECK(row.c == doctest::Approx(50.00999900019995).epsilon(1e-12));
            }
        }
    }
    CHECK(cpi_rows == 1);
}

TEST_CASE("fig8a sweep pins the C_pi row") {
    SweepSpec spec = SweepSpec::from_preset(*find_preset("fig8a"));
    spec.c_points = 4;
    spec.schemes = {Scheme::PushPull};
    const SweepResult result = run_sweep(spec);
    bool found = false;
    for (const SweepRow& row : result.rows) {
        if (row.at_c_pi) {
            found = true;
            CHECK(row.c == doctest::Approx(2.48).epsilon(5e-3));
        }
    }
    CHECK(found);
}

TEST_CASE("a failing point becomes a diagnostic, not an abort") {
    SweepSpec spec = SweepSpec::from_preset(*find_preset("fig6"));
    spec.c_points = 4;
    spec.kappa_j = 1.5;  // above kappa: C_pi is undefined, rows still evaluate
    spec.schemes = {Scheme::PushPull};
    const SweepResult result = run_sweep(spec);
    CHECK(result.rows.size() == 4);
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].find("C_pi") != std::string::npos);
}

TEST_CASE("interferometer refinement does not lose fidelity") {
    const Preset* preset = find_preset("fig6");
    SystemParams p;
    p.gamma = preset->gamma;
    const Detunings d = build_detunings({Scheme::PushPull, preset->delta});
    p.g = g_from_cooperativity(20.0, 1.0, p.gamma);
    p.delta_1 = d.delta_1;
    p.delta_2 = d.delta_2;
    const FrequencyGrid grid = FrequencyGrid::for_sigma(preset->sigma, 1025);
    const ReflectionSpectrum rs = reflection_spectrum(p, grid);
    const PhotonSpectrum ph = gaussian_spectrum(preset->sigma, grid);
    const InterferometerSettings start(default_theta(Scheme::PushPull), 1.2);
    const BlochQuadrature quad = BlochQuadrature::product_gauss();
    const double before = averaged_metrics(rs, ph, start, quad).f_ave;
    const InterferometerOptimum opt = refine_interferometer(rs, ph, start, quad);
    CHECK(opt.f_ave >= before - 1e-12);
}

TEST_CASE("empty sweep range reports and succeeds") {
    SweepSpec spec;
    spec.c_min = 10.0;
    spec.c_max = 5.0;
    const SweepResult result = run_sweep(spec);
    CHECK(result.rows.empty());
    REQUIRE(result.diagnostics.size() == 1);
    CHECK(result.diagnostics[0].find("empty") != std::string::npos);
}

TEST_CASE("sweeps are deterministic across worker counts") {
    SweepSpec spec = SweepSpec::from_preset(*find_preset("fig8a"));
    spec.c_points = 10;
    spec.threads = 1;
    const SweepResult serial = run_sweep(spec);
    spec.threads = 4;
    const SweepResult parallel = run_sweep(spec);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t i = 0; i < serial.rows.size(); ++i) {
        CHECK(serial.rows[i].c == parallel.rows[i].c);
        CHECK(serial.rows[i].f_ave == parallel.rows[i].f_ave);
        CHECK(serial.rows[i].p_herald_ave == parallel.rows[i].p_herald_ave);
    }

    const fs::path dir = temp_dir("determinism");
    emit_csv(serial, dir / "a.csv");
    emit_csv(parallel, dir / "b.csv");
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
}

TEST_CASE("bandwidth scan sorts sigmas and flags the trends") {
    SweepSpec base = SweepSpec::from_preset(*find_preset("fig9"));
    const BandwidthResult single = run_bandwidth_scan(base, {0.002}, std::nullopt);
    CHECK(single.rows.size() == 1);

    const BandwidthResult scan =
        run_bandwidth_scan(base, {0.01, 0.002, 0.02}, std::nullopt);  // unsorted input
    REQUIRE(scan.rows.size() == 3);
    CHECK(scan.rows[0].sigma == 0.002);
    CHECK(scan.rows[1].sigma == 0.01);
    CHECK(scan.rows[2].sigma == 0.02);
    CHECK(scan.f_strictly_decreasing);
    CHECK(scan.p_strictly_increasing);
}

TEST_CASE("population demo edge cases") {
    const PopulationResult hot = run_population_demo(
        {DurationConvention::IntensitySigma}, 1.0, 100.0);  // overdamped atom
    REQUIRE(hot.rows.size() == 1);
    CHECK(hot.rows[0].peak_population < 0.01);
}

TEST_CASE("csv formatting contract") {
    CHECK(fmt_real(1.0) == "1.00000000000e+00");
    CHECK(fmt_real(-0.125) == "-1.25000000000e-01");
    CHECK(fmt_real(3.0e-4) == "3.00000000000e-04");

    const SweepResult empty;
    const fs::path dir = temp_dir("csv");
    emit_csv(empty, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") ==
          "scheme,cooperativity,f_ave,f_ave_plus,f_ave_minus,p_herald_ave,r1,r2,"
          "delta_phase0,at_c_pi\n");
}

TEST_CASE("svg output carries the plot structure") {
    SweepSpec spec = SweepSpec::from_preset(*find_preset("fig6"));
    spec.c_points = 6;
    const SweepResult result = run_sweep(spec);
    const fs::path dir = temp_dir("svg");
    emit_svg(result, dir / "plot.svg");
    const std::string svg = slurp(dir / "plot.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("C_pi") != std::string::npos);
    CHECK(svg.find("r=\"6\"") != std::string::npos);  // C_pi marker, twice the base radius
    CHECK(svg.find("r=\"3\"") != std::string::npos);
    CHECK(svg.find("push-pull") != std::string::npos);
    CHECK(svg.find("on-off") != std::string::npos);
}

TEST_CASE("flat config parsing") {
    const RunConfig cfg = RunConfig::from_text(
        "# comment\n"
        "preset = \"fig6\"\n"
        "scheme = \"push-pull\"  # trailing comment\n"
        "c_min = 5\n"
        "c_max = 8e1\n"
        "optimize_interferometer = true\n"
        "sigma_list = [0.002, 0.005]\n"
        "conventions = [\"fwhm\", \"sigma-t\"]\n");
    CHECK(cfg.preset == "fig6");
    CHECK(cfg.scheme == "push-pull");
    CHECK(cfg.c_min == 5.0);
    CHECK(cfg.c_max == 80.0);
    CHECK(cfg.optimize_interferometer == true);
    REQUIRE(cfg.sigma_list.has_value());
    CHECK(cfg.sigma_list->size() == 2);
    REQUIRE(cfg.conventions.has_value());
    CHECK((*cfg.conventions)[1] == "sigma-t");

    CHECK_THROWS_AS(RunConfig::from_text("mystery_key = 1\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_text("[section]\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_text("c = 1\nc = 2\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_text("c = oops\n"), ConfigError);
    CHECK_THROWS_AS(RunConfig::from_text("c\n"), ConfigError);
}

TEST_CASE("config units normalize against kappa") {
    RunConfig cfg = RunConfig::from_text(
        "kappa = 2.0\n"
        "gamma = 0.2\n"
        "delta = 20\n"
        "sigma = 0.2\n"
        "delay = 1.2\n");
    cfg.normalize_units();
    CHECK(cfg.kappa == 1.0);
    CHECK(cfg.gamma == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(cfg.delta == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(cfg.sigma == doctest::Approx(0.1).epsilon(1e-15));
    CHECK(cfg.delay == doctest::Approx(2.4).epsilon(1e-15));
}

TEST_CASE("cli: preset inspection") {
    std::string out;
    CHECK(cli({"preset", "list"}, &out) == 0);
    CHECK(out.find("fig6") != std::string::npos);
    CHECK(out.find("fig8a") != std::string::npos);

    CHECK(cli({"preset", "show", "fig6"}, &out) == 0);
    CHECK(out.find("delta = 10") != std::string::npos);
    CHECK(out.find("sigma = 0.1") != std::string::npos);
    CHECK(out.find("gamma = 0.1") != std::string::npos);

    std::string err;
    CHECK(cli({"preset", "show", "nope"}, &out, &err) == 1);
    CHECK(err.find("unknown preset") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
    std::string out, err;
    CHECK(cli({"frobnicate"}, &out, &err) == 1);
    CHECK(!err.empty());

    CHECK(cli({"--help"}, &out, &err) == 0);
    CHECK(out.find("sweep") != std::string::npos);

    // on-off without an explicit cooperativity is a configuration error
    CHECK(cli({"loading", "--preset", "fig6", "--scheme", "on-off"}, &out, &err) == 1);

    // an atomic feature about as narrow as the grid spacing trips the
    // refinement check (the photon itself is still well resolved)
    const int numeric = cli({"loading", "--delta", "0.1", "--gamma", "0.003", "--sigma", "0.05",
                             "--c", "5", "--grid-points", "65", "--out",
                             temp_dir("cli-num").string()},
                            &out, &err);
    CHECK(numeric == 2);
    CHECK(err.find("refinement") != std::string::npos);

    // unwritable output directory
    const fs::path dir = temp_dir("cli-io");
    std::ofstream(dir / "file") << "x";
    CHECK(cli({"sweep", "--preset", "fig8a", "--c-points", "3", "--out",
               (dir / "file" / "sub").string()},
              &out, &err) == 3);
}

TEST_CASE("cli: sweep writes the named outputs") {
    const fs::path dir = temp_dir("cli-sweep");
    std::string out, err;
    const int code =
        cli({"sweep", "--preset", "fig8a", "--c-points", "6", "--out", dir.string()}, &out, &err);
    CHECK(code == 0);
    CHECK(fs::exists(dir / "fig8a.csv"));
    CHECK(fs::exists(dir / "fig8a.svg"));

    // byte-identical reruns
    const std::string first = slurp(dir / "fig8a.csv");
    CHECK(cli({"sweep", "--preset", "fig8a", "--c-points", "6", "--out", dir.string()}, &out,
              &err) == 0);
    CHECK(slurp(dir / "fig8a.csv") == first);
}

TEST_CASE("cli: bandwidth and population subcommands") {
    const fs::path dir = temp_dir("cli-misc");
    std::string out, err;
    CHECK(cli({"bandwidth", "--preset", "fig9", "--out", dir.string()}, &out, &err) == 0);
    CHECK(fs::exists(dir / "fig9.csv"));
    CHECK(out.find("F strictly decreasing: yes") != std::string::npos);

    CHECK(cli({"population", "--gamma", "100", "--out", dir.string()}, &out, &err) == 0);
    CHECK(fs::exists(dir / "population.csv"));
}

TEST_CASE("cli: config file end to end") {
    const fs::path dir = temp_dir("cli-config");
    const fs::path cfg_path = dir / "run.toml";
    std::ofstream(cfg_path) << "preset = \"fig7b\"\nc_points = 5\nout_dir = \"" << dir.string()
                            << "\"\n";
    std::string out, err;
    CHECK(cli({"--config", cfg_path.string(), "sweep"}, &out, &err) == 0);
    CHECK(fs::exists(dir / "fig7b.csv"));

    std::ofstream(dir / "bad.toml") << "nonsense = 1\n";
    CHECK(cli({"--config", (dir / "bad.toml").string(), "sweep"}, &out, &err) == 1);
}

TEST_CASE("cli: dynamics and reflectivity subcommands") {
    const fs::path dir = temp_dir("cli-dyn");
    std::string out, err;
    CHECK(cli({"reflectivity", "--preset", "fig5-pushpull", "--out", dir.string()}, &out, &err) ==
          0);
    CHECK(fs::exists(dir / "fig5-pushpull-reflectivity.csv"));
    CHECK(out.find("delta_phase(0)") != std::string::npos);

    CHECK(cli({"dynamics", "--preset", "fig5-pushpull", "--samples", "2001", "--out",
               dir.string()},
              &out, &err) == 0);
    CHECK(fs::exists(dir / "fig5-pushpull-dynamics.csv"));
    CHECK(out.find("flux balance") != std::string::npos);

    CHECK(cli({"loading", "--preset", "fig6", "--c", "20", "--out", dir.string()}, &out, &err) ==
          0);
    CHECK(fs::exists(dir / "fig6-loading.csv"));
}

}  // TEST_SUITE

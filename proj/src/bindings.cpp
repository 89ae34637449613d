#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "cavmem/cli.hpp"
#include "cavmem/config.hpp"
#include "cavmem/dynamics.hpp"
#include "cavmem/emit.hpp"
#include "cavmem/errors.hpp"
#include "cavmem/loading.hpp"
#include "cavmem/presets.hpp"
#include "cavmem/reflection.hpp"
#include "cavmem/sweep.hpp"

#include <sstream>

namespace py = pybind11;
using namespace cavmem;

namespace {

template <typename T>
py::array_t<T> to_array(const std::vector<T>& v) {
    // Explicit shape and strides; the (shape, strides, ptr) constructor
    // copies the data into a fresh array.
    return py::array_t<T>({static_cast<py::ssize_t>(v.size())},
                          {static_cast<py::ssize_t>(sizeof(T))}, v.data());
}

py::array_t<std::complex<double>> mat2_to_array(const Mat2& m) {
    const std::complex<double> data[4] = {m[0][0], m[0][1], m[1][0], m[1][1]};
    return py::array_t<std::complex<double>>(
        {static_cast<py::ssize_t>(2), static_cast<py::ssize_t>(2)},
        {static_cast<py::ssize_t>(2 * sizeof(std::complex<double>)),
         static_cast<py::ssize_t>(sizeof(std::complex<double>))},
        data);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "single-photon cavity-atom memory loading toolkit";

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<NumericError>(m, "NumericError");
    py::register_exception<IoError>(m, "IoError");

    py::enum_<Scheme>(m, "Scheme")
        .value("OnOff", Scheme::OnOff)
        .value("PushPull", Scheme::PushPull);

    py::enum_<LossMode>(m, "LossMode")
        .value("Physical", LossMode::Physical)
        .value("LosslessAtom", LossMode::LosslessAtom);

    py::enum_<DurationConvention>(m, "DurationConvention")
        .value("IntensityFwhm", DurationConvention::IntensityFwhm)
        .value("AmplitudeInvEHalfWidth", DurationConvention::AmplitudeInvEHalfWidth)
        .value("IntensitySigma", DurationConvention::IntensitySigma);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("kappa", &SystemParams::kappa)
        .def_readwrite("kappa_j", &SystemParams::kappa_j)
        .def_readwrite("gamma", &SystemParams::gamma)
        .def_readwrite("g", &SystemParams::g)
        .def_readwrite("delta_c", &SystemParams::delta_c)
        .def_readwrite("delta_1", &SystemParams::delta_1)
        .def_readwrite("delta_2", &SystemParams::delta_2)
        .def("validate", &SystemParams::validate)
        .def("cooperativity", &SystemParams::cooperativity)
        .def("normalized", &SystemParams::normalized)
        .def("__repr__", [](const SystemParams& p) {
            std::ostringstream s;
            s << "SystemParams(kappa=" << p.kappa << ", kappa_j=" << p.kappa_j
              << ", gamma=" << p.gamma << ", g=" << p.g << ", delta_c=" << p.delta_c
              << ", delta_1=" << p.delta_1 << ", delta_2=" << p.delta_2 << ")";
            return s.str();
        });

    py::class_<FullSystemParams>(m, "FullSystemParams")
        .def(py::init<>())
        .def_readwrite("base", &FullSystemParams::base)
        .def_readwrite("kappa_q", &FullSystemParams::kappa_q)
        .def_readwrite("g_q", &FullSystemParams::g_q)
        .def("implied_gamma", &FullSystemParams::implied_gamma);

    py::class_<SchemeGeometry>(m, "SchemeGeometry")
        .def(py::init([](Scheme s, double delta) {
                 return SchemeGeometry{s, delta};
             }),
             py::arg("scheme"), py::arg("delta"))
        .def_readwrite("scheme", &SchemeGeometry::scheme)
        .def_readwrite("delta", &SchemeGeometry::delta);

    m.def("build_detunings", [](const SchemeGeometry& g) {
        const Detunings d = build_detunings(g);
        return std::make_pair(d.delta_1, d.delta_2);
    });
    m.def("with_geometry", &with_geometry);
    m.def("cooperativity", &cooperativity);
    m.def("g_from_cooperativity", &g_from_cooperativity, py::arg("c"), py::arg("kappa") = 1.0,
          py::arg("gamma") = 1.0);
    m.def("default_theta", &default_theta);

    py::class_<FrequencyGrid>(m, "FrequencyGrid")
        .def(py::init<double, std::size_t>(), py::arg("half_span"),
             py::arg("points") = FrequencyGrid::default_points)
        .def_static("for_sigma", &FrequencyGrid::for_sigma, py::arg("sigma"),
                    py::arg("points") = FrequencyGrid::default_points)
        .def_property_readonly("samples",
                               [](const FrequencyGrid& g) { return to_array(g.samples()); })
        .def("spacing", &FrequencyGrid::spacing)
        .def("half_span", &FrequencyGrid::half_span)
        .def("zero_index", &FrequencyGrid::zero_index)
        .def("__len__", &FrequencyGrid::size);

    py::class_<PhotonSpectrum>(m, "PhotonSpectrum")
        .def_readonly("grid", &PhotonSpectrum::grid)
        .def_property_readonly("amplitude",
                               [](const PhotonSpectrum& p) { return to_array(p.amplitude); })
        .def_readonly("sigma", &PhotonSpectrum::sigma)
        .def("norm", &PhotonSpectrum::norm);

    m.def("gaussian_spectrum", &gaussian_spectrum, py::arg("sigma"), py::arg("grid"));
    m.def("gaussian_spectrum_amplitude", py::vectorize(&gaussian_spectrum_amplitude));
    m.def("gaussian_time_amplitude",
          [](double sigma, double t) { return gaussian_time_amplitude(sigma, t); });
    m.def("sigma_for_duration", &sigma_for_duration);

    py::class_<QubitState>(m, "QubitState")
        .def_static("from_amplitudes", &QubitState::from_amplitudes)
        .def_static("from_angles", &QubitState::from_angles, py::arg("chi"), py::arg("phi"))
        .def_readonly("alpha", &QubitState::alpha)
        .def_readonly("beta", &QubitState::beta)
        .def("chi", &QubitState::chi)
        .def("phi", &QubitState::phi);

    py::class_<InterferometerSettings>(m, "InterferometerSettings")
        .def(py::init<double, double, double>(), py::arg("theta"), py::arg("delay") = 1.2,
             py::arg("eta") = 1.0)
        .def_readonly("theta", &InterferometerSettings::theta)
        .def_readonly("delay", &InterferometerSettings::delay)
        .def_readonly("eta", &InterferometerSettings::eta);

    m.def(
        "reflection_coefficient",
        [](const SystemParams& p, double delta_j, double omega, LossMode mode) {
            return reflection_coefficient(p, delta_j, omega, mode);
        },
        py::arg("params"), py::arg("delta_j"), py::arg("omega"),
        py::arg("mode") = LossMode::Physical);

    py::class_<ReflectionSpectrum>(m, "ReflectionSpectrum")
        .def_readonly("grid", &ReflectionSpectrum::grid)
        .def_property_readonly("r1", [](const ReflectionSpectrum& r) { return to_array(r.r1); })
        .def_property_readonly("r2", [](const ReflectionSpectrum& r) { return to_array(r.r2); })
        .def_readonly("params", &ReflectionSpectrum::params)
        .def("eval", &ReflectionSpectrum::eval, py::arg("state"), py::arg("omega"));

    m.def(
        "reflection_spectrum",
        [](const SystemParams& p, const SchemeGeometry& geom, const FrequencyGrid& grid,
           LossMode mode) { return reflection_spectrum(p, geom, grid, mode); },
        py::arg("params"), py::arg("geometry"), py::arg("grid"),
        py::arg("mode") = LossMode::Physical);
    m.def("center_reflectivity", &center_reflectivity);
    m.def("c_pi", &c_pi, py::arg("params"), py::arg("delta_1"));
    m.def("center_reflectivity_at_cpi", &center_reflectivity_at_cpi);

    py::class_<PhaseReport>(m, "PhaseReport")
        .def_property_readonly("theta1", [](const PhaseReport& p) { return to_array(p.theta1); })
        .def_property_readonly("theta2", [](const PhaseReport& p) { return to_array(p.theta2); })
        .def_property_readonly("delta_phase",
                               [](const PhaseReport& p) { return to_array(p.delta_phase); })
        .def_readonly("delta_phase_at_0", &PhaseReport::delta_phase_at_0)
        .def_readonly("undefined_samples", &PhaseReport::undefined_samples);

    m.def("phase_report", &phase_report);

    py::class_<OnOffPhaseError>(m, "OnOffPhaseError")
        .def_readonly("estimate", &OnOffPhaseError::estimate)
        .def_readonly("estimate_full", &OnOffPhaseError::estimate_full)
        .def_readonly("regime_ok", &OnOffPhaseError::regime_ok);

    m.def("onoff_phase_error_estimate", &onoff_phase_error_estimate);
    m.def("reflectivity_minima", &reflectivity_minima);

    py::class_<IntegrationControl>(m, "IntegrationControl")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegrationControl::rel_tol)
        .def_readwrite("abs_tol", &IntegrationControl::abs_tol)
        .def_readwrite("t_start", &IntegrationControl::t_start)
        .def_readwrite("t_end", &IntegrationControl::t_end)
        .def_readwrite("samples", &IntegrationControl::samples)
        .def_static("for_pulse", &IntegrationControl::for_pulse, py::arg("sigma"),
                    py::arg("params"), py::arg("ring_down_factor") = 30.0);

    py::class_<AmplitudeTrajectory>(m, "AmplitudeTrajectory")
        .def_property_readonly("times",
                               [](const AmplitudeTrajectory& t) { return to_array(t.times); })
        .def_property_readonly("psi_c",
                               [](const AmplitudeTrajectory& t) { return to_array(t.psi_c); })
        .def_property_readonly("psi_e",
                               [](const AmplitudeTrajectory& t) { return to_array(t.psi_e); })
        .def_property_readonly("psi_q",
                               [](const AmplitudeTrajectory& t) { return to_array(t.psi_q); })
        .def_property_readonly("a_in",
                               [](const AmplitudeTrajectory& t) { return to_array(t.a_in); })
        .def_property_readonly("b_out",
                               [](const AmplitudeTrajectory& t) { return to_array(t.b_out); })
        .def_readonly("stiffness_warning", &AmplitudeTrajectory::stiffness_warning)
        .def_readonly("steps", &AmplitudeTrajectory::steps);

    m.def(
        "integrate_reduced_gaussian",
        [](const SystemParams& p, double delta_j, double sigma, const IntegrationControl& ctrl,
           LossMode mode) {
            return integrate_reduced(
                p, delta_j, [sigma](double t) { return gaussian_time_amplitude(sigma, t); }, ctrl,
                mode);
        },
        py::arg("params"), py::arg("delta_j"), py::arg("sigma"), py::arg("ctrl"),
        py::arg("mode") = LossMode::Physical);
    m.def(
        "integrate_full_gaussian",
        [](const FullSystemParams& p, double delta_j, double sigma,
           const IntegrationControl& ctrl) {
            return integrate_full(
                p, delta_j, [sigma](double t) { return gaussian_time_amplitude(sigma, t); },
                ctrl);
        },
        py::arg("params"), py::arg("delta_j"), py::arg("sigma"), py::arg("ctrl"));

    m.def("output_spectrum", [](const AmplitudeTrajectory& traj, const FrequencyGrid& grid) {
        return to_array(output_spectrum(traj, grid));
    });

    py::class_<FluxBalance>(m, "FluxBalance")
        .def_readonly("reflected", &FluxBalance::reflected)
        .def_readonly("j_loss", &FluxBalance::j_loss)
        .def_readonly("spont_loss", &FluxBalance::spont_loss)
        .def("total", &FluxBalance::total);

    m.def("flux_balance",
          [](const AmplitudeTrajectory& t, const SystemParams& p) { return flux_balance(t, p); });
    m.def("flux_balance_full", [](const AmplitudeTrajectory& t, const FullSystemParams& p) {
        return flux_balance(t, p);
    });
    m.def("loss_output", &loss_output);

    m.def("energy_reflectivity", &energy_reflectivity);
    m.def("herald_probability", &herald_probability);

    py::class_<ConditionalState>(m, "ConditionalState")
        .def_property_readonly("rho",
                               [](const ConditionalState& c) { return mat2_to_array(c.rho); })
        .def_readonly("k", &ConditionalState::k);

    m.def("conditional_state", &conditional_state, py::arg("reflection"), py::arg("photon"),
          py::arg("qubit"), py::arg("interferometer"), py::arg("s"));
    m.def("fidelity", &fidelity, py::arg("reflection"), py::arg("photon"), py::arg("qubit"),
          py::arg("interferometer"), py::arg("s"));
    m.def("fidelity_from_state", &fidelity_from_state);

    py::class_<LoadingReport>(m, "LoadingReport")
        .def_readonly("r1", &LoadingReport::r1)
        .def_readonly("r2", &LoadingReport::r2)
        .def_readonly("k_plus", &LoadingReport::k_plus)
        .def_readonly("k_minus", &LoadingReport::k_minus)
        .def_readonly("f_plus", &LoadingReport::f_plus)
        .def_readonly("f_minus", &LoadingReport::f_minus)
        .def_property_readonly("rho_plus",
                               [](const LoadingReport& r) { return mat2_to_array(r.rho_plus); })
        .def_property_readonly("rho_minus",
                               [](const LoadingReport& r) { return mat2_to_array(r.rho_minus); })
        .def_readonly("p_herald", &LoadingReport::p_herald)
        .def("f_weighted", &LoadingReport::f_weighted);

    m.def("loading_report", &loading_report);

    py::class_<BlochQuadrature>(m, "BlochQuadrature")
        .def_static("product_gauss", &BlochQuadrature::product_gauss, py::arg("n_polar") = 10,
                    py::arg("n_azimuth") = 10)
        .def("nodes", [](const BlochQuadrature& q) {
            std::vector<std::tuple<double, double, double>> out;
            for (const BlochNode& n : q.nodes()) out.emplace_back(n.chi, n.phi, n.weight);
            return out;
        });

    m.def("bloch_average", &bloch_average);

    py::class_<AveragedMetrics>(m, "AveragedMetrics")
        .def_readonly("f_ave", &AveragedMetrics::f_ave)
        .def_readonly("f_ave_plus", &AveragedMetrics::f_ave_plus)
        .def_readonly("f_ave_minus", &AveragedMetrics::f_ave_minus)
        .def_readonly("p_herald_ave", &AveragedMetrics::p_herald_ave)
        .def_readonly("r1", &AveragedMetrics::r1)
        .def_readonly("r2", &AveragedMetrics::r2);

    m.def("averaged_metrics", &averaged_metrics);

    py::class_<Preset>(m, "Preset")
        .def_readonly("name", &Preset::name)
        .def_readonly("title", &Preset::title)
        .def_readonly("delta", &Preset::delta)
        .def_readonly("gamma", &Preset::gamma)
        .def_readonly("kappa_j", &Preset::kappa_j)
        .def_readonly("sigma", &Preset::sigma)
        .def_readonly("c_min", &Preset::c_min)
        .def_readonly("c_max", &Preset::c_max)
        .def_readonly("c_fixed", &Preset::c_fixed)
        .def_readonly("c_at_pi", &Preset::c_at_pi)
        .def_readonly("g_fixed", &Preset::g_fixed)
        .def_readonly("sigma_list", &Preset::sigma_list)
        .def_readonly("provenance", &Preset::provenance);

    m.def("preset_catalog", &preset_catalog);
    m.def("find_preset", [](const std::string& name) -> std::optional<Preset> {
        const Preset* p = find_preset(name);
        if (!p) return std::nullopt;
        return *p;
    });

    py::class_<SweepSpec>(m, "SweepSpec")
        .def(py::init<>())
        .def_static("from_preset", &SweepSpec::from_preset)
        .def_readwrite("delta", &SweepSpec::delta)
        .def_readwrite("gamma", &SweepSpec::gamma)
        .def_readwrite("kappa_j", &SweepSpec::kappa_j)
        .def_readwrite("delta_c", &SweepSpec::delta_c)
        .def_readwrite("sigma", &SweepSpec::sigma)
        .def_readwrite("c_min", &SweepSpec::c_min)
        .def_readwrite("c_max", &SweepSpec::c_max)
        .def_readwrite("c_points", &SweepSpec::c_points)
        .def_readwrite("schemes", &SweepSpec::schemes)
        .def_readwrite("delay", &SweepSpec::delay)
        .def_readwrite("eta", &SweepSpec::eta)
        .def_readwrite("theta_override", &SweepSpec::theta_override)
        .def_readwrite("grid_points", &SweepSpec::grid_points)
        .def_readwrite("bloch_polar", &SweepSpec::bloch_polar)
        .def_readwrite("bloch_azimuth", &SweepSpec::bloch_azimuth)
        .def_readwrite("threads", &SweepSpec::threads);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("scheme", &SweepRow::scheme)
        .def_readonly("c", &SweepRow::c)
        .def_readonly("f_ave", &SweepRow::f_ave)
        .def_readonly("f_plus", &SweepRow::f_plus)
        .def_readonly("f_minus", &SweepRow::f_minus)
        .def_readonly("p_herald_ave", &SweepRow::p_herald_ave)
        .def_readonly("r1", &SweepRow::r1)
        .def_readonly("r2", &SweepRow::r2)
        .def_readonly("delta_phase0", &SweepRow::delta_phase0)
        .def_readonly("at_c_pi", &SweepRow::at_c_pi);

    py::class_<SweepResult>(m, "SweepResult")
        .def_readonly("rows", &SweepResult::rows)
        .def_readonly("diagnostics", &SweepResult::diagnostics);

    m.def("run_sweep", &run_sweep, py::call_guard<py::gil_scoped_release>());

    py::class_<BandwidthRow>(m, "BandwidthRow")
        .def_readonly("sigma", &BandwidthRow::sigma)
        .def_readonly("f_ave", &BandwidthRow::f_ave)
        .def_readonly("p_herald_ave", &BandwidthRow::p_herald_ave);

    py::class_<BandwidthResult>(m, "BandwidthResult")
        .def_readonly("rows", &BandwidthResult::rows)
        .def_readonly("f_strictly_decreasing", &BandwidthResult::f_strictly_decreasing)
        .def_readonly("p_strictly_increasing", &BandwidthResult::p_strictly_increasing)
        .def_readonly("diagnostics", &BandwidthResult::diagnostics);

    m.def("run_bandwidth_scan", &run_bandwidth_scan, py::arg("base"), py::arg("sigmas"),
          py::arg("c") = std::nullopt, py::call_guard<py::gil_scoped_release>());

    py::class_<PopulationRow>(m, "PopulationRow")
        .def_readonly("convention", &PopulationRow::convention)
        .def_readonly("sigma", &PopulationRow::sigma)
        .def_readonly("peak_population", &PopulationRow::peak_population)
        .def_readonly("peak_time", &PopulationRow::peak_time);

    py::class_<PopulationResult>(m, "PopulationResult")
        .def_readonly("rows", &PopulationResult::rows)
        .def_readonly("diagnostics", &PopulationResult::diagnostics);

    m.def("run_population_demo", &run_population_demo, py::arg("conventions"),
          py::arg("duration") = 1.0, py::arg("gamma") = 0.01,
          py::call_guard<py::gil_scoped_release>());

    m.def("emit_sweep_csv", [](const SweepResult& r, const std::filesystem::path& p) {
        emit_csv(r, p);
    });
    m.def("emit_sweep_svg", [](const SweepResult& r, const std::filesystem::path& p) {
        emit_svg(r, p);
    });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return std::make_tuple(code, out.str(), err.str());
    });
}

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cavmem/grid.hpp"
#include "cavmem/loading.hpp"
#include "cavmem/params.hpp"
#include "cavmem/presets.hpp"
#include "cavmem/spectrum.hpp"

namespace cavmem {

// Scheme defaults for the reference-arm phase: the arm must match the state-1
// reflection phase, which is -i for push-pull (delta_1 < 0) and -1 for on-off.
double default_theta(Scheme s);

struct SweepSpec {
    double delta = 10.0;
    double gamma = 0.1;
    double kappa_j = 0.0;
    double delta_c = 0.0;
    double sigma = 0.1;
    double c_min = 5.0;
    double c_max = 80.0;
    std::size_t c_points = 40;  // log-spaced; C_pi inserted for push-pull
    std::vector<Scheme> schemes{Scheme::PushPull, Scheme::OnOff};
    double delay = 1.2;
    double eta = 1.0;
    std::optional<double> theta_override;  // otherwise default_theta(scheme)
    std::size_t grid_points = FrequencyGrid::default_points;
    int bloch_polar = 10;
    int bloch_azimuth = 10;
    bool optimize_interferometer = false;  // golden-section (theta, T) refinement
    unsigned threads = 0;                  // 0: hardware concurrency

    static SweepSpec from_preset(const Preset& p);
};

struct SweepRow {
    Scheme scheme;
    double c;
    double f_ave, f_plus, f_minus;
    double p_herald_ave;
    double r1, r2;
    double delta_phase0;
    bool at_c_pi;
};

struct SweepResult {
    std::vector<SweepRow> rows;               // per scheme, ascending C
    std::vector<std::string> diagnostics;     // per-point failures, warnings
};

SweepResult run_sweep(const SweepSpec& spec);

struct BandwidthRow {
    double sigma;
    double f_ave, f_plus, f_minus;
    double p_herald_ave;
    double r1, r2;
};

struct BandwidthResult {
    std::vector<BandwidthRow> rows;  // ascending sigma
    bool f_strictly_decreasing = false;
    bool p_strictly_increasing = false;
    std::vector<std::string> diagnostics;
};

// Fixed cooperativity (default: C_pi of the push-pull geometry), photon
// bandwidth varied.
BandwidthResult run_bandwidth_scan(const SweepSpec& base, std::vector<double> sigmas,
                                   std::optional<double> c = std::nullopt);

struct PopulationRow {
    DurationConvention convention;
    double sigma;
    double peak_population;
    double peak_time;
};

struct PopulationResult {
    std::vector<PopulationRow> rows;
    std::vector<std::string> diagnostics;
};

// Strong-coupling excited-population demonstration: kappa = g = 1, kappa_j = 0,
// Gaussian pulse of the given duration under each convention.
PopulationResult run_population_demo(const std::vector<DurationConvention>& conventions,
                                     double duration = 1.0, double gamma = 0.01);

// Optional golden-section refinement of (theta, T) around the defaults.
struct InterferometerOptimum {
    InterferometerSettings settings;
    double f_ave;
};

InterferometerOptimum refine_interferometer(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                            const InterferometerSettings& start,
                                            const BlochQuadrature& quad);

}  // namespace cavmem

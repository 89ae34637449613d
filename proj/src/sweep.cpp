#include "cavmem/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>
#include <thread>

#include "cavmem/dynamics.hpp"
#include "cavmem/errors.hpp"
#include "cavmem/quadrature.hpp"
#include "cavmem/reflection.hpp"

namespace cavmem {

namespace {

double wrap_center_phase(double x) {
    double y = wrap_pi(x);
    if (y < -std::numbers::pi + 1e-9) y += 2.0 * std::numbers::pi;
    return y;
}

SystemParams base_params(const SweepSpec& spec) {
    SystemParams p;
    p.kappa = 1.0;
    p.kappa_j = spec.kappa_j;
    p.gamma = spec.gamma;
    p.delta_c = spec.delta_c;
    return p;
}

struct PointResult {
    SweepRow row;
    std::string error;  // empty on success
};

PointResult evaluate_point(const SweepSpec& spec, Scheme scheme, double c, bool at_c_pi) {
    PointResult pr;
    pr.row.scheme = scheme;
    pr.row.c = c;
    pr.row.at_c_pi = at_c_pi;
    try {
        const SchemeGeometry geom{scheme, spec.delta};
        SystemParams p = with_geometry(base_params(spec), geom);
        p.g = g_from_cooperativity(c, p.kappa, p.gamma);

        const FrequencyGrid grid = FrequencyGrid::for_sigma(spec.sigma, spec.grid_points);
        const ReflectionSpectrum rs = reflection_spectrum(p, grid);
        const PhotonSpectrum ph = gaussian_spectrum(spec.sigma, grid);
        InterferometerSettings ifc(spec.theta_override.value_or(default_theta(scheme)),
                                   spec.delay, spec.eta);
        const BlochQuadrature quad =
            BlochQuadrature::product_gauss(spec.bloch_polar, spec.bloch_azimuth);
        if (spec.optimize_interferometer) {
            ifc = refine_interferometer(rs, ph, ifc, quad).settings;
        }
        const AveragedMetrics metrics = averaged_metrics(rs, ph, ifc, quad);

        pr.row.f_ave = metrics.f_ave;
        pr.row.f_plus = metrics.f_ave_plus;
        pr.row.f_minus = metrics.f_ave_minus;
        pr.row.p_herald_ave = metrics.p_herald_ave;
        pr.row.r1 = metrics.r1;
        pr.row.r2 = metrics.r2;
        pr.row.delta_phase0 =
            wrap_center_phase(std::arg(reflection_coefficient(p, p.delta_1, 0.0)) -
                              std::arg(reflection_coefficient(p, p.delta_2, 0.0)));
    } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << scheme_name(scheme) << " C=" << c << ": " << e.what();
        pr.error = msg.str();
    }
    return pr;
}

// Pure per-point evaluations, gathered in index order regardless of the
// number of workers.
std::vector<PointResult> evaluate_points(const SweepSpec& spec, Scheme scheme,
                                         const std::vector<std::pair<double, bool>>& points) {
    std::vector<PointResult> results(points.size());
    unsigned workers = spec.threads != 0 ? spec.threads : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, points.size()));

    if (workers == 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            results[i] = evaluate_point(spec, scheme, points[i].first, points[i].second);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    std::vector<std::future<void>> futures;
    futures.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futures.push_back(std::async(std::launch::async, [&] {
            for (std::size_t i = next.fetch_add(1); i < points.size(); i = next.fetch_add(1)) {
                results[i] = evaluate_point(spec, scheme, points[i].first, points[i].second);
            }
        }));
    }
    for (auto& f : futures) f.get();
    return results;
}

}  // namespace

double default_theta(Scheme s) {
    return s == Scheme::PushPull ? -0.5 * std::numbers::pi : std::numbers::pi;
}

SweepSpec SweepSpec::from_preset(const Preset& p) {
    SweepSpec spec;
    spec.delta = p.delta;
    spec.gamma = p.gamma;
    spec.kappa_j = p.kappa_j;
    spec.sigma = p.sigma;
    spec.c_min = p.c_min;
    spec.c_max = p.c_max;
    if (p.scheme) {
        spec.schemes = {*p.scheme};
    }
    return spec;
}

SweepResult run_sweep(const SweepSpec& spec) {
    SweepResult result;
    if (spec.c_points == 0 || !(spec.c_min <= spec.c_max) || !(spec.c_min > 0.0)) {
        result.diagnostics.push_back("empty C range; nothing to sweep");
        return result;
    }

    for (Scheme scheme : spec.schemes) {
        std::vector<std::pair<double, bool>> points;
        if (spec.c_points == 1 || spec.c_min == spec.c_max) {
            points.emplace_back(spec.c_min, false);
        } else {
            const double lmin = std::log(spec.c_min);
            const double lmax = std::log(spec.c_max);
            for (std::size_t i = 0; i < spec.c_points; ++i) {
                const double f = static_cast<double>(i) / (spec.c_points - 1);
                points.emplace_back(std::exp(lmin + f * (lmax - lmin)), false);
            }
        }

        if (scheme == Scheme::PushPull) {
            try {
                SystemParams p = base_params(spec);
                const Detunings d = build_detunings({scheme, spec.delta});
                const double cpi = c_pi(p, d.delta_1);
                if (cpi >= spec.c_min && cpi <= spec.c_max) {
                    points.emplace_back(cpi, true);
                }
            } catch (const std::exception& e) {
                result.diagnostics.push_back(std::string("C_pi unavailable: ") + e.what());
            }
        }

        std::sort(points.begin(), points.end());
        // Merge duplicates, keeping the C_pi marker if either copy has it.
        std::vector<std::pair<double, bool>> merged;
        for (const auto& pt : points) {
            if (!merged.empty() && merged.back().first == pt.first) {
                merged.back().second = merged.back().second || pt.second;
            } else {
                merged.push_back(pt);
            }
        }
        points = std::move(merged);

        for (PointResult& pr : evaluate_points(spec, scheme, points)) {
            if (pr.error.empty()) {
                result.rows.push_back(pr.row);
            } else {
                result.diagnostics.push_back(pr.error);
            }
        }
    }
    return result;
}

BandwidthResult run_bandwidth_scan(const SweepSpec& base, std::vector<double> sigmas,
                                   std::optional<double> c) {
    BandwidthResult result;
    std::sort(sigmas.begin(), sigmas.end());
    sigmas.erase(std::unique(sigmas.begin(), sigmas.end()), sigmas.end());
    if (sigmas.empty()) {
        result.diagnostics.push_back("empty sigma list; nothing to scan");
        return result;
    }

    const Scheme scheme = base.schemes.empty() ? Scheme::PushPull : base.schemes.front();
    double cval;
    if (c) {
        cval = *c;
    } else {
        const Detunings d = build_detunings({scheme, base.delta});
        if (scheme != Scheme::PushPull) {
            throw ConfigError("bandwidth scan: a fixed C is required for the on-off scheme");
        }
        cval = c_pi(base_params(base), d.delta_1);
    }

    for (double sigma : sigmas) {
        SweepSpec spec = base;
        spec.sigma = sigma;
        const PointResult pr = evaluate_point(spec, scheme, cval, false);
        if (!pr.error.empty()) {
            result.diagnostics.push_back(pr.error);
            continue;
        }
        BandwidthRow row;
        row.sigma = sigma;
        row.f_ave = pr.row.f_ave;
        row.f_plus = pr.row.f_plus;
        row.f_minus = pr.row.f_minus;
        row.p_herald_ave = pr.row.p_herald_ave;
        row.r1 = pr.row.r1;
        row.r2 = pr.row.r2;
        result.rows.push_back(row);
    }

    result.f_strictly_decreasing = result.rows.size() >= 2;
    result.p_strictly_increasing = result.rows.size() >= 2;
    for (std::size_t i = 1; i < result.rows.size(); ++i) {
        if (!(result.rows[i].f_ave < result.rows[i - 1].f_ave)) {
            result.f_strictly_decreasing = false;
        }
        if (!(result.rows[i].p_herald_ave > result.rows[i - 1].p_herald_ave)) {
            result.p_strictly_increasing = false;
        }
    }
    return result;
}

PopulationResult run_population_demo(const std::vector<DurationConvention>& conventions,
                                     double duration, double gamma) {
    PopulationResult result;
    for (DurationConvention convention : conventions) {
        PopulationRow row;
        row.convention = convention;
        try {
            row.sigma = sigma_for_duration(convention, duration);
            SystemParams p;
            p.kappa = 1.0;
            p.g = 1.0;
            p.gamma = gamma;
            p.kappa_j = 0.0;
            const double sigma = row.sigma;
            const IntegrationControl ctrl = IntegrationControl::for_pulse(sigma, p);
            const AmplitudeTrajectory traj = integrate_reduced(
                p, 0.0, [sigma](double t) { return gaussian_time_amplitude(sigma, t); }, ctrl);
            row.peak_population = 0.0;
            row.peak_time = traj.times.front();
            for (std::size_t i = 0; i < traj.times.size(); ++i) {
                const double pop = std::norm(traj.psi_e[i]);
                if (pop > row.peak_population) {
                    row.peak_population = pop;
                    row.peak_time = traj.times[i];
                }
            }
            result.rows.push_back(row);
        } catch (const std::exception& e) {
            std::ostringstream msg;
            msg << duration_convention_name(convention) << ": " << e.what();
            result.diagnostics.push_back(msg.str());
        }
    }
    return result;
}

namespace {

// Golden-section maximization on [lo, hi].
template <typename F>
double golden_max(const F& f, double lo, double hi, int iters = 40) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

InterferometerOptimum refine_interferometer(const ReflectionSpectrum& rs,
                                            const PhotonSpectrum& ph,
                                            const InterferometerSettings& start,
                                            const BlochQuadrature& quad) {
    auto objective = [&](double theta, double delay) {
        return averaged_metrics(rs, ph, InterferometerSettings(theta, delay, start.eta), quad)
            .f_ave;
    };
    double theta = start.theta;
    double delay = start.delay;
    for (int round = 0; round < 2; ++round) {
        theta = golden_max([&](double th) { return objective(th, delay); }, theta - 0.5,
                           theta + 0.5);
        delay = golden_max([&](double t) { return objective(theta, t); },
                           std::max(0.0, delay - 1.0), delay + 1.0);
    }
    InterferometerOptimum out{InterferometerSettings(theta, delay, start.eta),
                              objective(theta, delay)};
    return out;
}

}  // namespace cavmem

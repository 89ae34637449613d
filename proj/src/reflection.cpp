#include "cavmem/reflection.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cavmem/errors.hpp"
#include "cavmem/quadrature.hpp"

namespace cavmem {

namespace {

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

// A delta at omega = 0 in the (-pi, pi] window that is within rounding of -pi
// is the same angle as +pi; report it as +pi.
constexpr double pi_tie_tol = 1e-9;

}  // namespace

std::complex<double> reflection_coefficient(const SystemParams& p, double delta_j, double omega,
                                            LossMode mode) {
    p.validate();
    const double gamma = mode == LossMode::LosslessAtom ? 0.0 : p.gamma;
    const cplx atom = gamma + I * (delta_j - omega);
    const cplx num = atom * (p.kappa - p.kappa_j - I * (p.delta_c - omega)) - p.g * p.g;
    const cplx den = atom * (p.kappa + p.kappa_j + I * (p.delta_c - omega)) + p.g * p.g;
    if (std::abs(den) < 1e-300) {
        std::ostringstream msg;
        msg << "reflection_coefficient: singular denominator at omega=" << omega
            << ", delta_j=" << delta_j;
        throw NumericError(msg.str());
    }
    return num / den;
}

std::complex<double> ReflectionSpectrum::eval(int state, double omega) const {
    if (state != 1 && state != 2) {
        throw std::invalid_argument("ReflectionSpectrum: ground-state index must be 1 or 2");
    }
    if (analytic) {
        return reflection_coefficient(params, state == 1 ? params.delta_1 : params.delta_2, omega,
                                      mode);
    }
    const ReflectivityFn& fn = state == 1 ? custom1 : custom2;
    if (!fn) {
        throw NumericError("ReflectionSpectrum: no evaluator available for off-grid points");
    }
    return fn(omega);
}

ReflectionSpectrum reflection_spectrum(const SystemParams& p, const FrequencyGrid& grid,
                                       LossMode mode) {
    p.validate();
    ReflectionSpectrum rs;
    rs.grid = grid;
    rs.params = p;
    rs.mode = mode;
    rs.analytic = true;
    rs.r1.resize(grid.size());
    rs.r2.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rs.r1[i] = reflection_coefficient(p, p.delta_1, grid[i], mode);
        rs.r2[i] = reflection_coefficient(p, p.delta_2, grid[i], mode);
    }
    return rs;
}

ReflectionSpectrum reflection_spectrum(const SystemParams& p, const SchemeGeometry& geom,
                                       const FrequencyGrid& grid, LossMode mode) {
    return reflection_spectrum(with_geometry(p, geom), grid, mode);
}

ReflectionSpectrum synthetic_reflection_spectrum(const FrequencyGrid& grid, ReflectivityFn r1,
                                                 ReflectivityFn r2) {
    if (!r1 || !r2) {
        throw std::invalid_argument("synthetic_reflection_spectrum: both evaluators required");
    }
    ReflectionSpectrum rs;
    rs.grid = grid;
    rs.analytic = false;
    rs.custom1 = std::move(r1);
    rs.custom2 = std::move(r2);
    rs.r1.resize(grid.size());
    rs.r2.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rs.r1[i] = rs.custom1(grid[i]);
        rs.r2[i] = rs.custom2(grid[i]);
    }
    return rs;
}

std::complex<double> center_reflectivity(const SystemParams& p, double delta_j) {
    p.validate();
    if (p.delta_c != 0.0) {
        throw std::invalid_argument(
            "center_reflectivity: the narrow-band form assumes delta_c = 0");
    }
    const double c = p.cooperativity();
    const cplx a = 1.0 + I * (delta_j / p.gamma);
    const double k = p.kappa_j / p.kappa;
    return (a * (1.0 - k) - c) / (a * (1.0 + k) + c);
}

double c_pi(const SystemParams& p, double delta_1) {
    p.validate();
    if (p.delta_c != 0.0) {
        throw std::invalid_argument("c_pi: defined for delta_c = 0");
    }
    if (p.kappa_j > p.kappa) {
        throw std::domain_error("c_pi: requires kappa_j <= kappa");
    }
    const double k = p.kappa_j / p.kappa;
    const double a = delta_1 / p.gamma;
    return std::sqrt(1.0 + (1.0 - k * k) * a * a) - k;
}

std::complex<double> center_reflectivity_at_cpi(const SystemParams& p, double delta_j) {
    p.validate();
    if (p.kappa_j > p.kappa) {
        throw std::domain_error("center_reflectivity_at_cpi: requires kappa_j <= kappa");
    }
    if (delta_j == 0.0) {
        throw std::domain_error(
            "center_reflectivity_at_cpi: singular at delta_j = 0 (push-pull needs delta_j != 0)");
    }
    const double gk = p.gamma * p.kappa;
    const double root =
        std::sqrt(gk * gk + delta_j * delta_j * (p.kappa * p.kappa - p.kappa_j * p.kappa_j));
    return I * delta_j * (root - gk) / (delta_j * delta_j * (p.kappa + p.kappa_j));
}

PhaseReport phase_report(const ReflectionSpectrum& rs) {
    const std::size_t n = rs.grid.size();
    PhaseReport pr;
    pr.theta1.resize(n);
    pr.theta2.resize(n);
    pr.delta_phase.assign(n, std::numeric_limits<double>::quiet_NaN());

    std::vector<double> raw(n, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t i = 0; i < n; ++i) {
        const bool ok1 = std::abs(rs.r1[i]) >= phase_floor;
        const bool ok2 = std::abs(rs.r2[i]) >= phase_floor;
        pr.theta1[i] = ok1 ? std::arg(rs.r1[i]) : std::numeric_limits<double>::quiet_NaN();
        pr.theta2[i] = ok2 ? std::arg(rs.r2[i]) : std::numeric_limits<double>::quiet_NaN();
        if (ok1 && ok2) {
            raw[i] = pr.theta1[i] - pr.theta2[i];
        } else {
            pr.undefined_samples.push_back(i);
        }
    }

    // Unwrap outward from the center sample; undefined samples inherit the
    // running value of the nearest defined neighbor toward the center.
    const std::size_t mid = rs.grid.zero_index();
    double anchor = std::isnan(raw[mid]) ? 0.0 : wrap_pi(raw[mid]);
    if (anchor < -std::numbers::pi + pi_tie_tol) anchor += 2.0 * std::numbers::pi;
    pr.delta_phase[mid] = anchor;

    double prev_raw = raw[mid];
    double acc = anchor;
    for (std::size_t i = mid + 1; i < n; ++i) {
        if (!std::isnan(raw[i]) && !std::isnan(prev_raw)) acc += wrap_pi(raw[i] - prev_raw);
        if (!std::isnan(raw[i])) prev_raw = raw[i];
        pr.delta_phase[i] = acc;
    }
    prev_raw = raw[mid];
    acc = anchor;
    for (std::size_t i = mid; i-- > 0;) {
        if (!std::isnan(raw[i]) && !std::isnan(prev_raw)) acc += wrap_pi(raw[i] - prev_raw);
        if (!std::isnan(raw[i])) prev_raw = raw[i];
        pr.delta_phase[i] = acc;
    }

    pr.delta_phase_at_0 = pr.delta_phase[mid];
    return pr;
}

OnOffPhaseError onoff_phase_error_estimate(const SystemParams& p, double delta_2) {
    p.validate();
    if (p.kappa_j >= p.kappa) {
        throw std::domain_error("onoff_phase_error_estimate: requires kappa_j < kappa");
    }
    const double c = p.cooperativity();
    const double k = p.kappa_j / p.kappa;
    const double d = delta_2 / p.gamma;
    OnOffPhaseError out;
    out.estimate = 2.0 * c * d / (d * d * (1.0 - k * k));
    out.estimate_full = 2.0 * c * d / (d * d * (1.0 - k * k) - 2.0 * c * k - c * c);
    out.regime_ok = c >= 5.0 && d >= 20.0 * c;
    return out;
}

std::vector<double> reflectivity_minima(const ReflectionSpectrum& rs, int state) {
    const auto& r = state == 1 ? rs.r1 : rs.r2;
    if (state != 1 && state != 2) {
        throw std::invalid_argument("reflectivity_minima: ground-state index must be 1 or 2");
    }
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < r.size(); ++i) {
        const double fm = std::abs(r[i - 1]);
        const double f0 = std::abs(r[i]);
        const double fp = std::abs(r[i + 1]);
        if (f0 < fm && f0 < fp) {
            const double denom = fp - 2.0 * f0 + fm;
            const double shift = denom > 0.0 ? 0.5 * (fm - fp) / denom : 0.0;
            out.push_back(rs.grid[i] + shift * rs.grid.spacing());
        }
    }
    return out;
}

}  // namespace cavmem

#include "cavmem/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cavmem/errors.hpp"
#include "cavmem/quadrature.hpp"

namespace cavmem {

std::complex<double> PhotonSpectrum::eval(double omega) const {
    if (!sigma) {
        throw NumericError("PhotonSpectrum: no closed form available for off-grid evaluation");
    }
    return gaussian_spectrum_amplitude(*sigma, omega);
}

double PhotonSpectrum::norm() const {
    std::vector<double> f(amplitude.size());
    for (std::size_t i = 0; i < amplitude.size(); ++i) f[i] = std::norm(amplitude[i]);
    return spectral_trapezoid(grid, f);
}

double gaussian_spectrum_amplitude(double sigma, double omega) {
    return std::pow(8.0 * std::numbers::pi / (sigma * sigma), 0.25) *
           std::exp(-omega * omega / (sigma * sigma));
}

PhotonSpectrum gaussian_spectrum(double sigma, const FrequencyGrid& grid) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_spectrum: sigma must be positive");
    }
    if (grid.half_span() < 6.0 * sigma) {
        std::ostringstream msg;
        msg << "gaussian_spectrum: grid half-span " << grid.half_span() << " is below 6*sigma = "
            << 6.0 * sigma << "; the normalization invariant cannot hold";
        throw ConfigError(msg.str());
    }
    PhotonSpectrum ph{grid, {}, sigma};
    ph.amplitude.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ph.amplitude[i] = gaussian_spectrum_amplitude(sigma, grid[i]);
    }
    const double n = ph.norm();
    if (std::abs(n - 1.0) > spectrum_norm_tol) {
        std::ostringstream msg;
        msg << "gaussian_spectrum: normalization " << n << " deviates from 1 beyond "
            << spectrum_norm_tol;
        throw ConfigError(msg.str());
    }
    return ph;
}

std::complex<double> gaussian_time_amplitude(double sigma, double t) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("gaussian_time_amplitude: sigma must be positive");
    }
    return std::pow(sigma * sigma / (2.0 * std::numbers::pi), 0.25) *
           std::exp(-0.25 * sigma * sigma * t * t);
}

double sigma_for_duration(DurationConvention c, double duration) {
    if (!(duration > 0.0)) {
        throw std::invalid_argument("sigma_for_duration: duration must be positive");
    }
    switch (c) {
        case DurationConvention::IntensityFwhm:
            return 2.0 * std::sqrt(2.0 * std::numbers::ln2) / duration;
        case DurationConvention::AmplitudeInvEHalfWidth:
            return 2.0 / duration;
        case DurationConvention::IntensitySigma:
            return 1.0 / duration;
    }
    throw std::invalid_argument("sigma_for_duration: unknown convention");
}

const char* duration_convention_name(DurationConvention c) {
    switch (c) {
        case DurationConvention::IntensityFwhm:
            return "intensity-fwhm";
        case DurationConvention::AmplitudeInvEHalfWidth:
            return "amplitude-inv-e-half-width";
        case DurationConvention::IntensitySigma:
            return "intensity-sigma";
    }
    return "?";
}

DurationConvention duration_convention_from_name(const std::string& name) {
    if (name == "intensity-fwhm" || name == "fwhm") return DurationConvention::IntensityFwhm;
    if (name == "amplitude-inv-e-half-width" || name == "inv-e") {
        return DurationConvention::AmplitudeInvEHalfWidth;
    }
    if (name == "intensity-sigma" || name == "sigma-t") return DurationConvention::IntensitySigma;
    throw std::invalid_argument("unknown duration convention '" + name + "'");
}

}  // namespace cavmem

#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cavmem/grid.hpp"

namespace cavmem {

inline constexpr double spectrum_norm_tol = 1e-10;

// Square-normalized single-photon spectral amplitude sampled on a grid:
// trapezoid of |amplitude|^2 d(omega)/(2*pi) equals 1 to spectrum_norm_tol.
// `sigma` is set when the samples come from the closed-form Gaussian, which
// then also provides off-grid evaluation for refinement checks.
struct PhotonSpectrum {
    FrequencyGrid grid;
    std::vector<std::complex<double>> amplitude;
    std::optional<double> sigma;

    bool evaluable() const { return sigma.has_value(); }
    std::complex<double> eval(double omega) const;
    double norm() const;
};

// (8*pi/sigma^2)^{1/4} exp(-omega^2/sigma^2)
double gaussian_spectrum_amplitude(double sigma, double omega);

// Samples the Gaussian closed form; requires the grid to span at least
// +-6*sigma so the normalization invariant can hold.
PhotonSpectrum gaussian_spectrum(double sigma, const FrequencyGrid& grid);

// (sigma^2/(2*pi))^{1/4} exp(-sigma^2 t^2/4), the time-domain amplitude whose
// transform is the Gaussian spectrum; real, even, unit L2 norm.
std::complex<double> gaussian_time_amplitude(double sigma, double t);

// The demonstration pulse is specified only as "duration 1"; each convention
// maps a duration to the Gaussian linewidth parameter.
enum class DurationConvention {
    IntensityFwhm,           // sigma = 2*sqrt(2 ln 2)/tau
    AmplitudeInvEHalfWidth,  // sigma = 2/tau
    IntensitySigma           // sigma = 1/tau (std of |A(t)|^2)
};

double sigma_for_duration(DurationConvention c, double duration);
const char* duration_convention_name(DurationConvention c);
DurationConvention duration_convention_from_name(const std::string& name);

}  // namespace cavmem

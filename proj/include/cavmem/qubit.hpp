#pragma once

#include <complex>

namespace cavmem {

// Photon polarization qubit alpha|H> + beta|V>, |alpha|^2 + |beta|^2 = 1.
struct QubitState {
    std::complex<double> alpha{1.0, 0.0};
    std::complex<double> beta{0.0, 0.0};

    // Renormalizes; rejects a near-zero vector.
    static QubitState from_amplitudes(std::complex<double> alpha, std::complex<double> beta);

    // (alpha, beta) = (cos(chi/2), e^{i phi} sin(chi/2)), chi in [0, pi].
    static QubitState from_angles(double chi, double phi);

    double chi() const;
    double phi() const;
    double norm2() const;
};

// Reference-arm phase theta (wrapped to (-pi, pi]), delay T in units 1/kappa,
// optional lower-path attenuation eta in [0, 1].
struct InterferometerSettings {
    double theta = 0.0;
    double delay = 1.2;
    double eta = 1.0;

    InterferometerSettings() = default;
    InterferometerSettings(double theta_, double delay_, double eta_ = 1.0);
};

}  // namespace cavmem

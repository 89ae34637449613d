#include "cavmem/qubit.hpp"

#include <cmath>
#include <stdexcept>

#include "cavmem/quadrature.hpp"

namespace cavmem {

QubitState QubitState::from_amplitudes(std::complex<double> alpha, std::complex<double> beta) {
    const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
    if (!(n > 1e-12) || !std::isfinite(n)) {
        throw std::invalid_argument("QubitState: amplitudes must not be (near) zero");
    }
    return QubitState{alpha / n, beta / n};
}

QubitState QubitState::from_angles(double chi, double phi) {
    if (!(chi >= 0.0 && chi <= std::acos(-1.0) + 1e-12)) {
        throw std::invalid_argument("QubitState: chi must lie in [0, pi]");
    }
    return QubitState{std::cos(0.5 * chi),
                      std::polar(1.0, phi) * std::sin(0.5 * chi)};
}

double QubitState::chi() const {
    return 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
}

double QubitState::phi() const {
    if (std::abs(beta) == 0.0) return 0.0;
    return wrap_pi(std::arg(beta) - std::arg(alpha));
}

double QubitState::norm2() const {
    return std::norm(alpha) + std::norm(beta);
}

InterferometerSettings::InterferometerSettings(double theta_, double delay_, double eta_)
    : theta(wrap_pi(theta_)), delay(delay_), eta(eta_) {
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw std::invalid_argument("InterferometerSettings: eta must lie in [0, 1]");
    }
    if (!std::isfinite(delay)) {
        throw std::invalid_argument("InterferometerSettings: delay must be finite");
    }
}

}  // namespace cavmem

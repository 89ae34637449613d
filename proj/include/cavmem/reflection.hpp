#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "cavmem/grid.hpp"
#include "cavmem/params.hpp"

namespace cavmem {

// Single-sided cavity amplitude reflection coefficient for the atom in the
// ground state with detuning delta_j:
//
//   r_j(w) = [(gamma + i*dj - i*w)(kappa - kappa_j - i*dc + i*w) - g^2]
//          / [(gamma + i*dj - i*w)(kappa + kappa_j + i*dc - i*w) + g^2]
//
// LossMode::LosslessAtom evaluates the same expression with gamma set to 0.
std::complex<double> reflection_coefficient(const SystemParams& p, double delta_j, double omega,
                                            LossMode mode = LossMode::Physical);

using ReflectivityFn = std::function<std::complex<double>(double)>;

// r_j sampled for both ground states on a shared grid. Spectra built from
// parameters stay re-evaluable off-grid (refinement checks); synthetic ones
// carry their own evaluators.
struct ReflectionSpectrum {
    FrequencyGrid grid;
    std::vector<std::complex<double>> r1, r2;
    SystemParams params;  // snapshot with resolved detunings
    LossMode mode = LossMode::Physical;
    bool analytic = false;
    ReflectivityFn custom1, custom2;

    std::complex<double> eval(int state, double omega) const;
    bool evaluable() const { return analytic || (custom1 && custom2); }
};

ReflectionSpectrum reflection_spectrum(const SystemParams& p, const SchemeGeometry& geom,
                                       const FrequencyGrid& grid,
                                       LossMode mode = LossMode::Physical);
ReflectionSpectrum reflection_spectrum(const SystemParams& p, const FrequencyGrid& grid,
                                       LossMode mode = LossMode::Physical);
ReflectionSpectrum synthetic_reflection_spectrum(const FrequencyGrid& grid, ReflectivityFn r1,
                                                 ReflectivityFn r2);

// Narrow-band limit r_j(0) for delta_c = 0 (rejected otherwise); algebraically
// equal to reflection_coefficient at omega = 0.
std::complex<double> center_reflectivity(const SystemParams& p, double delta_j);

// Push-pull cooperativity giving a center-frequency phase split of exactly pi:
// sqrt(1 + (1 - kappa_j^2/kappa^2) * delta_1^2/gamma^2) - kappa_j/kappa.
// Requires kappa_j <= kappa and delta_c = 0.
double c_pi(const SystemParams& p, double delta_1);

// Closed form of r_j(0) at C = C_pi (pure imaginary); singular at delta_j = 0.
std::complex<double> center_reflectivity_at_cpi(const SystemParams& p, double delta_j);

inline constexpr double phase_floor = 1e-12;

// Principal-value phases of both reflectivities plus the unwrapped phase-shift
// difference. Samples where |r_j| < phase_floor carry NaN phases and are
// listed in undefined_samples. delta_phase is anchored at omega = 0 wrapped to
// (-pi, pi], with the -pi representation reported as +pi.
struct PhaseReport {
    std::vector<double> theta1, theta2;
    std::vector<double> delta_phase;
    double delta_phase_at_0 = 0.0;
    std::vector<std::size_t> undefined_samples;
};

PhaseReport phase_report(const ReflectionSpectrum& rs);

// On-off departure of the center phase difference from pi. `estimate` is the
// simplified final form 2C(d2/g) / ((d2/g)^2 (1 - kj^2/k^2)); `estimate_full`
// keeps the -2Ckj/k - C^2 denominator terms for diagnostics.
struct OnOffPhaseError {
    double estimate;
    double estimate_full;
    bool regime_ok;  // 1 << C << delta_2/gamma, tested as C >= 5 and delta_2/gamma >= 20 C
};

OnOffPhaseError onoff_phase_error_estimate(const SystemParams& p, double delta_2);

// Local minima of |r_j(w)| from a grid scan with parabolic refinement.
std::vector<double> reflectivity_minima(const ReflectionSpectrum& rs, int state);

}  // namespace cavmem

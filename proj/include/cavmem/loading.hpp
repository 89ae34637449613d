#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "cavmem/qubit.hpp"
#include "cavmem/reflection.hpp"
#include "cavmem/spectrum.hpp"

namespace cavmem {

// 2x2 density matrix in the {|g1>, |g2>} basis.
using Mat2 = std::array<std::array<std::complex<double>, 2>, 2>;

// R_j = int d(omega)/(2 pi) |A(omega)|^2 |r_j(omega)|^2, refinement-checked.
double energy_reflectivity(const ReflectionSpectrum& rs, const PhotonSpectrum& ph, int state);

// |beta|^2 + |alpha|^2 (R1 + R2)/2.
double herald_probability(const QubitState& q, double r1, double r2);

struct ConditionalState {
    Mat2 rho;  // trace one, Hermitian, PSD
    double k;  // branch normalization K_s
};

// Atomic state conditioned on detector s = +1 or -1 clicking, from the branch
// amplitudes
//   phi_1(w)  = alpha (r1 - r2)
//   phi_2s(w) = alpha (r1 + r2) + 2 s beta' e^{i theta} e^{i w T},
// with beta' = sqrt(eta) beta. Throws when K_s is consistent with a
// zero-probability branch.
ConditionalState conditional_state(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                   const QubitState& q, const InterferometerSettings& ifc, int s);

// Overlap of the conditioned state with alpha|g1> + s beta|g2>, computed as a
// direct spectral integral (independent of the conditional_state route).
double fidelity(const ReflectionSpectrum& rs, const PhotonSpectrum& ph, const QubitState& q,
                const InterferometerSettings& ifc, int s);

// The same overlap as a quadratic form in rho_s.
double fidelity_from_state(const ConditionalState& cs, const QubitState& q, int s);

struct LoadingReport {
    double r1 = 0.0, r2 = 0.0;
    double k_plus = 0.0, k_minus = 0.0;
    double f_plus = 0.0, f_minus = 0.0;
    Mat2 rho_plus{}, rho_minus{};
    double p_herald = 0.0;

    double f_weighted() const;  // (K+ F+ + K- F-)/(K+ + K-)
};

LoadingReport loading_report(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                             const QubitState& q, const InterferometerSettings& ifc);

struct BlochNode {
    double chi;
    double phi;
    double weight;
};

// Product rule over the sphere: Gauss-Legendre in cos(chi) times uniform
// midpoints in phi; weights sum to one.
class BlochQuadrature {
public:
    static BlochQuadrature product_gauss(int n_polar = 10, int n_azimuth = 10);
    const std::vector<BlochNode>& nodes() const { return nodes_; }

private:
    std::vector<BlochNode> nodes_;
};

double bloch_average(const std::function<double(const QubitState&)>& f,
                     const BlochQuadrature& quad);

// Photon-weighted moments of the reflectivities and the reference-arm phasor
// E = e^{i theta} e^{i w T}; every R_j, K_s, F_s is an O(1) form in these.
struct SpectralMoments {
    double i11 = 0.0, i22 = 0.0, iee = 0.0;
    std::complex<double> i12, i1e, i2e;
};

SpectralMoments spectral_moments(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                 const InterferometerSettings& ifc);

struct KF {
    double k;
    double f;
};

KF kf_from_moments(const SpectralMoments& m, const QubitState& q, double eta, int s);

struct AveragedMetrics {
    double f_ave = 0.0;  // herald-weighted over s, then Bloch-averaged
    double f_ave_plus = 0.0, f_ave_minus = 0.0;  // unweighted per-branch averages
    double p_herald_ave = 0.0;
    double r1 = 0.0, r2 = 0.0;
};

AveragedMetrics averaged_metrics(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                 const InterferometerSettings& ifc, const BlochQuadrature& quad);

}  // namespace cavmem

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "cavmem/grid.hpp"
#include "cavmem/params.hpp"

namespace cavmem {

using PulseFn = std::function<std::complex<double>(double)>;

inline constexpr double endpoint_decay_tol = 1e-10;

struct IntegrationControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double t_start = 0.0;
    double t_end = 1.0;
    std::size_t samples = 4001;

    void validate() const;

    // Window [-10/sigma, +10/sigma + ring_down_factor/min(kappa+kappa_j, gamma)]
    // for a Gaussian pulse peaking at t = 0, sampled densely enough that the
    // trapezoid Fourier transform of the driven response does not alias.
    static IntegrationControl for_pulse(double sigma, const SystemParams& p,
                                        double ring_down_factor = 30.0);
};

struct AmplitudeTrajectory {
    std::vector<double> times;  // uniform
    std::vector<std::complex<double>> psi_c;
    std::vector<std::complex<double>> psi_e;
    std::vector<std::complex<double>> psi_q;  // empty for the reduced system
    std::vector<std::complex<double>> a_in;
    std::vector<std::complex<double>> b_out;  // -A(t) + sqrt(2 kappa) psi_c(t)
    double gamma_used = -1.0;  // gamma the reduced integration ran with (0 in lossless mode)
    bool stiffness_warning = false;
    std::size_t steps = 0;

    double dt() const;
};

// Two-amplitude system (the bad-cavity reduction):
//   d psi_c = -(i dc + kappa + kappa_j) psi_c + g psi_e + sqrt(2 kappa) A(t)
//   d psi_e = -(i dj + gamma) psi_e - g psi_c
// LosslessAtom substitutes gamma = 0.
AmplitudeTrajectory integrate_reduced(const SystemParams& p, double delta_j, const PulseFn& a_in,
                                      const IntegrationControl& ctrl,
                                      LossMode mode = LossMode::Physical);

// Three-amplitude system including the spontaneous-emission cavity:
//   d psi_e = -i dj psi_e - g psi_c - g_q psi_q
//   d psi_q = -kappa_q psi_q + g_q psi_e
AmplitudeTrajectory integrate_full(const FullSystemParams& p, double delta_j, const PulseFn& a_in,
                                   const IntegrationControl& ctrl);

// Trapezoid Fourier transform of B(t) onto the grid, convention
// Btilde(w) = int B(t) e^{+i w t} dt. Requires |psi_c|, |psi_e| (and |psi_q|)
// below endpoint_decay_tol at both window ends.
std::vector<std::complex<double>> output_spectrum(const AmplitudeTrajectory& traj,
                                                  const FrequencyGrid& grid);

struct FluxBalance {
    double reflected;   // int |B|^2 dt
    double j_loss;      // 2 kappa_j int |psi_c|^2 dt
    double spont_loss;  // 2 gamma int |psi_e|^2 dt, or 2 kappa_q int |psi_q|^2 dt
    double total() const { return reflected + j_loss + spont_loss; }
};

FluxBalance flux_balance(const AmplitudeTrajectory& traj, const SystemParams& p);
FluxBalance flux_balance(const AmplitudeTrajectory& traj, const FullSystemParams& p);

// Total probability lost to the J channel and to spontaneous emission.
double loss_output(const AmplitudeTrajectory& traj, const SystemParams& p);

}  // namespace cavmem

#include "cavmem/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "cavmem/errors.hpp"
#include "cavmem/quadrature.hpp"

namespace cavmem {

namespace {

namespace ode = boost::numeric::odeint;

using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

constexpr std::size_t max_steps = 200'000'000;

template <std::size_t N>
using State = std::array<cplx, N>;

struct ReducedRhs {
    double kappa, kappa_j, gamma, g, delta_c, delta_j;
    const PulseFn* a_in;
    double sqrt_2k;

    void operator()(const State<2>& x, State<2>& dx, double t) const {
        const cplx a = (*a_in)(t);
        dx[0] = -(I * delta_c + kappa + kappa_j) * x[0] + g * x[1] + sqrt_2k * a;
        dx[1] = -(I * delta_j + gamma) * x[1] - g * x[0];
    }
};

struct FullRhs {
    double kappa, kappa_j, g, delta_c, delta_j, kappa_q, g_q;
    const PulseFn* a_in;
    double sqrt_2k;

    void operator()(const State<3>& x, State<3>& dx, double t) const {
        const cplx a = (*a_in)(t);
        dx[0] = -(I * delta_c + kappa + kappa_j) * x[0] + g * x[1] + sqrt_2k * a;
        dx[1] = -I * delta_j * x[1] - g * x[0] - g_q * x[2];
        dx[2] = -kappa_q * x[2] + g_q * x[1];
    }
};

// Drive the dense-output stepper past each requested sample time and
// interpolate. Returns the step count.
template <std::size_t N, typename Rhs, typename Emit>
std::size_t drive(const Rhs& rhs, const IntegrationControl& ctrl, double max_dt,
                  const Emit& emit) {
    const double span = ctrl.t_end - ctrl.t_start;
    const double dt_out = span / static_cast<double>(ctrl.samples - 1);
    const double dt0 = std::min(max_dt, span / 1e4);

    auto stepper = ode::make_dense_output(ctrl.abs_tol, ctrl.rel_tol, max_dt,
                                          ode::runge_kutta_dopri5<State<N>>());
    State<N> x{};
    stepper.initialize(x, ctrl.t_start, dt0);
    emit(0, ctrl.t_start, x);

    std::size_t steps = 0;
    try {
        for (std::size_t i = 1; i < ctrl.samples; ++i) {
            const double ti = ctrl.t_start + static_cast<double>(i) * dt_out;
            while (stepper.current_time() < ti) {
                stepper.do_step(rhs);
                if (++steps > max_steps) {
                    std::ostringstream msg;
                    msg << "integration exceeded " << max_steps << " steps at t="
                        << stepper.current_time() << " (dt=" << stepper.current_time_step()
                        << ")";
                    throw NumericError(msg.str());
                }
            }
            stepper.calc_state(ti, x);
            emit(i, ti, x);
        }
    } catch (const std::overflow_error& e) {
        std::ostringstream msg;
        msg << "integration failed near t=" << stepper.current_time()
            << " (step-size control could not meet rel_tol=" << ctrl.rel_tol << "): " << e.what();
        throw NumericError(msg.str());
    }
    return steps;
}

}  // namespace

void IntegrationControl::validate() const {
    if (!(rel_tol >= 1e-13)) {
        throw std::invalid_argument("IntegrationControl: rel_tol must be at least 1e-13");
    }
    if (!(abs_tol > 0.0)) {
        throw std::invalid_argument("IntegrationControl: abs_tol must be positive");
    }
    if (!(t_end > t_start)) {
        throw std::invalid_argument("IntegrationControl: window must have positive length");
    }
    if (samples < 2) {
        throw std::invalid_argument("IntegrationControl: need at least two output samples");
    }
}

IntegrationControl IntegrationControl::for_pulse(double sigma, const SystemParams& p,
                                                 double ring_down_factor) {
    p.validate();
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("IntegrationControl: sigma must be positive");
    }
    if (!(ring_down_factor >= 20.0)) {
        throw std::invalid_argument("IntegrationControl: ring-down factor must be at least 20");
    }
    IntegrationControl ctrl;
    ctrl.t_start = -10.0 / sigma;
    ctrl.t_end = 10.0 / sigma + ring_down_factor / std::min(p.kappa + p.kappa_j, p.gamma);
    // Sample spacing <= 1/(32 sigma): the driven response has Gaussian-limited
    // spectral support, so the trapezoid transform has no aliasing to worry
    // about well before that.
    const double span = ctrl.t_end - ctrl.t_start;
    const auto wanted = static_cast<std::size_t>(std::ceil(span * 32.0 * sigma)) + 1;
    ctrl.samples = std::clamp<std::size_t>(wanted, 4001, 2'000'001);
    return ctrl;
}

double AmplitudeTrajectory::dt() const {
    if (times.size() < 2) return 0.0;
    return (times.back() - times.front()) / static_cast<double>(times.size() - 1);
}

AmplitudeTrajectory integrate_reduced(const SystemParams& p, double delta_j, const PulseFn& a_in,
                                      const IntegrationControl& ctrl, LossMode mode) {
    p.validate();
    ctrl.validate();
    if (!a_in) throw std::invalid_argument("integrate_reduced: input pulse required");

    const double gamma = mode == LossMode::LosslessAtom ? 0.0 : p.gamma;
    ReducedRhs rhs{p.kappa, p.kappa_j, gamma, p.g, p.delta_c, delta_j, &a_in,
                   std::sqrt(2.0 * p.kappa)};

    AmplitudeTrajectory traj;
    traj.gamma_used = gamma;
    traj.times.resize(ctrl.samples);
    traj.psi_c.resize(ctrl.samples);
    traj.psi_e.resize(ctrl.samples);
    traj.a_in.resize(ctrl.samples);
    traj.b_out.resize(ctrl.samples);

    traj.steps = drive<2>(rhs, ctrl, std::numeric_limits<double>::infinity(),
                          [&](std::size_t i, double t, const State<2>& x) {
                              traj.times[i] = t;
                              traj.psi_c[i] = x[0];
                              traj.psi_e[i] = x[1];
                              traj.a_in[i] = a_in(t);
                              traj.b_out[i] = -traj.a_in[i] + rhs.sqrt_2k * x[0];
                          });
    return traj;
}

AmplitudeTrajectory integrate_full(const FullSystemParams& p, double delta_j, const PulseFn& a_in,
                                   const IntegrationControl& ctrl) {
    p.validate();
    ctrl.validate();
    if (!a_in) throw std::invalid_argument("integrate_full: input pulse required");

    const SystemParams& b = p.base;
    FullRhs rhs{b.kappa, b.kappa_j, b.g,      b.delta_c,
                delta_j, p.kappa_q, p.g_q,    &a_in,
                std::sqrt(2.0 * b.kappa)};

    const double ratio = p.kappa_q / b.kappa;
    const double max_dt =
        ratio > 1e3 ? 2.0 / p.kappa_q : std::numeric_limits<double>::infinity();

    AmplitudeTrajectory traj;
    traj.stiffness_warning = ratio > 1e6;
    traj.times.resize(ctrl.samples);
    traj.psi_c.resize(ctrl.samples);
    traj.psi_e.resize(ctrl.samples);
    traj.psi_q.resize(ctrl.samples);
    traj.a_in.resize(ctrl.samples);
    traj.b_out.resize(ctrl.samples);

    traj.steps = drive<3>(rhs, ctrl, max_dt, [&](std::size_t i, double t, const State<3>& x) {
        traj.times[i] = t;
        traj.psi_c[i] = x[0];
        traj.psi_e[i] = x[1];
        traj.psi_q[i] = x[2];
        traj.a_in[i] = a_in(t);
        traj.b_out[i] = -traj.a_in[i] + rhs.sqrt_2k * x[0];
    });
    return traj;
}

std::vector<std::complex<double>> output_spectrum(const AmplitudeTrajectory& traj,
                                                  const FrequencyGrid& grid) {
    if (traj.times.size() < 2) {
        throw std::invalid_argument("output_spectrum: trajectory too short");
    }
    double residue = std::max(std::abs(traj.psi_c.front()), std::abs(traj.psi_c.back()));
    residue = std::max(residue, std::abs(traj.psi_e.front()));
    residue = std::max(residue, std::abs(traj.psi_e.back()));
    if (!traj.psi_q.empty()) {
        residue = std::max({residue, std::abs(traj.psi_q.front()), std::abs(traj.psi_q.back())});
    }
    if (residue > endpoint_decay_tol) {
        std::ostringstream msg;
        msg << "output_spectrum: window truncates undecayed amplitudes (endpoint residue "
            << residue << " > " << endpoint_decay_tol << "); extend the integration window";
        throw NumericError(msg.str());
    }

    const double dt = traj.dt();
    const double t0 = traj.times.front();
    const std::size_t nt = traj.times.size();
    std::vector<cplx> out(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = grid[k];
        // exp(i w t_i) by rotation; the accumulated drift over ~1e6 samples is
        // far below the quadrature tolerance.
        cplx phase = std::polar(1.0, w * t0);
        const cplx rot = std::polar(1.0, w * dt);
        cplx acc = 0.5 * traj.b_out.front() * phase;
        phase *= rot;
        for (std::size_t i = 1; i + 1 < nt; ++i) {
            acc += traj.b_out[i] * phase;
            phase *= rot;
        }
        acc += 0.5 * traj.b_out.back() * phase;
        out[k] = acc * dt;
    }
    return out;
}

namespace {

FluxBalance flux_balance_impl(const AmplitudeTrajectory& traj, double spont_rate,
                              const std::vector<cplx>& spont_amp, double kappa_j) {
    const double dt = traj.dt();
    const std::size_t n = traj.times.size();
    std::vector<double> b2(n), c2(n), s2(n);
    for (std::size_t i = 0; i < n; ++i) {
        b2[i] = std::norm(traj.b_out[i]);
        c2[i] = std::norm(traj.psi_c[i]);
        s2[i] = std::norm(spont_amp[i]);
    }
    FluxBalance fb{};
    fb.reflected = time_trapezoid(b2, dt);
    fb.j_loss = 2.0 * kappa_j * time_trapezoid(c2, dt);
    fb.spont_loss = 2.0 * spont_rate * time_trapezoid(s2, dt);
    return fb;
}

}  // namespace

FluxBalance flux_balance(const AmplitudeTrajectory& traj, const SystemParams& p) {
    if (!traj.psi_q.empty()) {
        throw std::invalid_argument(
            "flux_balance: three-amplitude trajectory needs the FullSystemParams overload");
    }
    const double gamma = traj.gamma_used >= 0.0 ? traj.gamma_used : p.gamma;
    return flux_balance_impl(traj, gamma, traj.psi_e, p.kappa_j);
}

FluxBalance flux_balance(const AmplitudeTrajectory& traj, const FullSystemParams& p) {
    if (traj.psi_q.empty()) {
        throw std::invalid_argument("flux_balance: trajectory has no Q-cavity amplitudes");
    }
    return flux_balance_impl(traj, p.kappa_q, traj.psi_q, p.base.kappa_j);
}

double loss_output(const AmplitudeTrajectory& traj, const SystemParams& p) {
    const FluxBalance fb = flux_balance(traj, p);
    return fb.j_loss + fb.spont_loss;
}

}  // namespace cavmem

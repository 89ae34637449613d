#include "cavmem/loading.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "cavmem/errors.hpp"
#include "cavmem/quadrature.hpp"

namespace cavmem {

namespace {

using cplx = std::complex<double>;

constexpr double no_click_floor = 1e-14;

void require_shared_grid(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                         const char* where) {
    if (!rs.grid.same_shape(ph.grid)) {
        throw std::invalid_argument(std::string(where) +
                                    ": reflection and photon spectra must share the grid");
    }
}

cplx arm_phasor(const InterferometerSettings& ifc, double omega) {
    return std::polar(1.0, ifc.theta + omega * ifc.delay);
}

// Trapezoid accumulation of several integrands in one pass, evaluated either
// from the stored samples or off-grid through the evaluators.
template <typename Emit>
void accumulate(const FrequencyGrid& grid, const Emit& term, std::size_t n_out, double* out) {
    for (std::size_t k = 0; k < n_out; ++k) out[k] = 0.0;
    std::vector<double> vals(n_out);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double w = (i == 0 || i + 1 == grid.size()) ? 0.5 : 1.0;
        term(i, grid[i], vals.data());
        for (std::size_t k = 0; k < n_out; ++k) out[k] += w * vals[k];
    }
    const double scale = grid.spacing() / (2.0 * std::numbers::pi);
    for (std::size_t k = 0; k < n_out; ++k) out[k] *= scale;
}

struct BranchTerms {
    double m00, m11;  // (1/8) int w |phi1|^2, |phi2s|^2
    cplx m01;         // (1/8) int w phi1 conj(phi2s)
    double fnum;      // (1/8) int w |c1 r1 + c2 r2 + c3 E|^2
};

struct BranchCoeffs {
    cplx alpha, beta_eff;  // beta_eff = sqrt(eta) beta
    cplx c1, c2, c3;
    int s;
};

BranchCoeffs branch_coeffs(const QubitState& q, const InterferometerSettings& ifc, int s) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("detector branch must be +1 or -1");
    }
    BranchCoeffs bc;
    bc.alpha = q.alpha;
    bc.beta_eff = std::sqrt(ifc.eta) * q.beta;
    const double a2 = std::norm(q.alpha);
    const cplx sba = static_cast<double>(s) * std::conj(q.beta) * q.alpha;
    bc.c1 = a2 + sba;
    bc.c2 = -(a2 - sba);
    bc.c3 = 2.0 * std::conj(q.beta) * bc.beta_eff;
    bc.s = s;
    return bc;
}

// One integrand evaluation shared by both branch routes.
void branch_values(const BranchCoeffs& bc, const InterferometerSettings& ifc, double omega,
                   double a2w, cplx r1, cplx r2, double* out5) {
    const cplx e = arm_phasor(ifc, omega);
    const cplx phi1 = bc.alpha * (r1 - r2);
    const cplx phi2 = bc.alpha * (r1 + r2) + 2.0 * static_cast<double>(bc.s) * bc.beta_eff * e;
    const cplx cross = phi1 * std::conj(phi2);
    const cplx fvec = bc.c1 * r1 + bc.c2 * r2 + bc.c3 * e;
    out5[0] = a2w * std::norm(phi1);
    out5[1] = a2w * std::norm(phi2);
    out5[2] = a2w * cross.real();
    out5[3] = a2w * cross.imag();
    out5[4] = a2w * std::norm(fvec);
}

BranchTerms branch_terms(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                         const QubitState& q, const InterferometerSettings& ifc, int s,
                         const char* where) {
    require_shared_grid(rs, ph, where);
    const BranchCoeffs bc = branch_coeffs(q, ifc, s);

    double coarse[5];
    accumulate(rs.grid,
               [&](std::size_t i, double omega, double* out) {
                   branch_values(bc, ifc, omega, std::norm(ph.amplitude[i]), rs.r1[i], rs.r2[i],
                                 out);
               },
               5, coarse);

    double fine[5];
    if (rs.evaluable() && ph.evaluable()) {
        const FrequencyGrid ref = rs.grid.refined();
        accumulate(ref,
                   [&](std::size_t, double omega, double* out) {
                       branch_values(bc, ifc, omega, std::norm(ph.eval(omega)), rs.eval(1, omega),
                                     rs.eval(2, omega), out);
                   },
                   5, fine);
    } else {
        // Samples only: every-other-sample trapezoid plays the coarse role.
        const FrequencyGrid& g = rs.grid;
        for (double& v : fine) v = 0.0;
        double vals[5];
        const std::size_t last = g.size() - 1;
        for (std::size_t i = 0; i <= last; i += 2) {
            const double w = (i == 0 || i == last) ? 0.5 : 1.0;
            branch_values(bc, ifc, g[i], std::norm(ph.amplitude[i]), rs.r1[i], rs.r2[i], vals);
            for (int k = 0; k < 5; ++k) fine[k] += w * vals[k];
        }
        const double scale = 2.0 * g.spacing() / (2.0 * std::numbers::pi);
        for (double& v : fine) v *= scale;
    }

    double scale = 0.0;
    for (int k = 0; k < 5; ++k) scale = std::max(scale, std::abs(fine[k]));
    for (int k = 0; k < 5; ++k) {
        if (std::abs(fine[k] - coarse[k]) > refinement_rel_tol * std::max(scale, 1e-30) + 1e-14) {
            std::ostringstream msg;
            msg << where << ": spectral integral refinement check failed (component " << k
                << ": " << coarse[k] << " vs " << fine[k] << "); increase grid_points";
            throw NumericError(msg.str());
        }
    }

    BranchTerms bt;
    bt.m00 = coarse[0] / 8.0;
    bt.m11 = coarse[1] / 8.0;
    bt.m01 = cplx{coarse[2], coarse[3]} / 8.0;
    bt.fnum = coarse[4] / 8.0;
    return bt;
}

}  // namespace

double energy_reflectivity(const ReflectionSpectrum& rs, const PhotonSpectrum& ph, int state) {
    require_shared_grid(rs, ph, "energy_reflectivity");
    if (state != 1 && state != 2) {
        throw std::invalid_argument("energy_reflectivity: ground-state index must be 1 or 2");
    }
    const auto& samples = state == 1 ? rs.r1 : rs.r2;
    if (rs.evaluable() && ph.evaluable()) {
        return spectral_integral_checked(
            rs.grid,
            std::function<double(double)>([&](double omega) {
                return std::norm(ph.eval(omega)) * std::norm(rs.eval(state, omega));
            }),
            "energy reflectivity R_" + std::to_string(state));
    }
    std::vector<double> f(rs.grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = std::norm(ph.amplitude[i]) * std::norm(samples[i]);
    }
    return sampled_integral_checked(rs.grid, f,
                                    "energy reflectivity R_" + std::to_string(state));
}

double herald_probability(const QubitState& q, double r1, double r2) {
    const double slack = 1e-12;
    if (!(r1 >= -slack && r1 <= 1.0 + slack && r2 >= -slack && r2 <= 1.0 + slack)) {
        throw std::invalid_argument("herald_probability: reflectivities must lie in [0, 1]");
    }
    return std::norm(q.beta) + std::norm(q.alpha) * 0.5 * (r1 + r2);
}

ConditionalState conditional_state(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                   const QubitState& q, const InterferometerSettings& ifc,
                                   int s) {
    const BranchTerms bt = branch_terms(rs, ph, q, ifc, s, "conditional_state");
    const double k = bt.m00 + bt.m11;
    if (k < no_click_floor) {
        throw NumericError("conditional_state: no-click branch (K_s below 1e-14), cannot "
                           "condition on a zero-probability detection");
    }
    ConditionalState cs;
    cs.k = k;
    cs.rho[0][0] = bt.m00 / k;
    cs.rho[0][1] = bt.m01 / k;
    cs.rho[1][0] = std::conj(bt.m01) / k;
    cs.rho[1][1] = bt.m11 / k;
    return cs;
}

double fidelity(const ReflectionSpectrum& rs, const PhotonSpectrum& ph, const QubitState& q,
                const InterferometerSettings& ifc, int s) {
    const BranchTerms bt = branch_terms(rs, ph, q, ifc, s, "fidelity");
    const double k = bt.m00 + bt.m11;
    if (k < no_click_floor) {
        throw NumericError("fidelity: no-click branch (K_s below 1e-14)");
    }
    return bt.fnum / k;
}

double fidelity_from_state(const ConditionalState& cs, const QubitState& q, int s) {
    const cplx a = q.alpha;
    const cplx b = static_cast<double>(s) * q.beta;
    const cplx val = std::conj(a) * (cs.rho[0][0] * a + cs.rho[0][1] * b) +
                     std::conj(b) * (cs.rho[1][0] * a + cs.rho[1][1] * b);
    return val.real();
}

double LoadingReport::f_weighted() const {
    const double total = k_plus + k_minus;
    if (total <= 0.0) return 0.0;
    return (k_plus * f_plus + k_minus * f_minus) / total;
}

LoadingReport loading_report(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                             const QubitState& q, const InterferometerSettings& ifc) {
    LoadingReport rep;
    rep.r1 = energy_reflectivity(rs, ph, 1);
    rep.r2 = energy_reflectivity(rs, ph, 2);
    const ConditionalState plus = conditional_state(rs, ph, q, ifc, +1);
    const ConditionalState minus = conditional_state(rs, ph, q, ifc, -1);
    rep.k_plus = plus.k;
    rep.k_minus = minus.k;
    rep.rho_plus = plus.rho;
    rep.rho_minus = minus.rho;
    rep.f_plus = fidelity(rs, ph, q, ifc, +1);
    rep.f_minus = fidelity(rs, ph, q, ifc, -1);
    rep.p_herald = herald_probability(q, rep.r1, rep.r2);
    return rep;
}

BlochQuadrature BlochQuadrature::product_gauss(int n_polar, int n_azimuth) {
    if (n_polar < 1 || n_azimuth < 1) {
        throw std::invalid_argument("BlochQuadrature: node counts must be positive");
    }
    const GaussLegendre gl = gauss_legendre(n_polar);
    BlochQuadrature quad;
    quad.nodes_.reserve(static_cast<std::size_t>(n_polar) * n_azimuth);
    for (int i = 0; i < n_polar; ++i) {
        const double chi = std::acos(gl.nodes[i]);
        const double wchi = 0.5 * gl.weights[i];
        for (int j = 0; j < n_azimuth; ++j) {
            const double phi =
                -std::numbers::pi + (j + 0.5) * 2.0 * std::numbers::pi / n_azimuth;
            quad.nodes_.push_back({chi, phi, wchi / n_azimuth});
        }
    }
    return quad;
}

double bloch_average(const std::function<double(const QubitState&)>& f,
                     const BlochQuadrature& quad) {
    double acc = 0.0;
    double wsum = 0.0;
    for (const BlochNode& node : quad.nodes()) {
        acc += node.weight * f(QubitState::from_angles(node.chi, node.phi));
        wsum += node.weight;
    }
    return acc / wsum;
}

SpectralMoments spectral_moments(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                 const InterferometerSettings& ifc) {
    require_shared_grid(rs, ph, "spectral_moments");

    auto terms = [&](double omega, double a2w, cplx r1, cplx r2, double* out) {
        const cplx e = arm_phasor(ifc, omega);
        const cplx m12 = r1 * std::conj(r2);
        const cplx m1e = r1 * std::conj(e);
        const cplx m2e = r2 * std::conj(e);
        out[0] = a2w * std::norm(r1);
        out[1] = a2w * std::norm(r2);
        out[2] = a2w;
        out[3] = a2w * m12.real();
        out[4] = a2w * m12.imag();
        out[5] = a2w * m1e.real();
        out[6] = a2w * m1e.imag();
        out[7] = a2w * m2e.real();
        out[8] = a2w * m2e.imag();
    };

    double coarse[9];
    accumulate(rs.grid,
               [&](std::size_t i, double omega, double* out) {
                   terms(omega, std::norm(ph.amplitude[i]), rs.r1[i], rs.r2[i], out);
               },
               9, coarse);

    double fine[9];
    if (rs.evaluable() && ph.evaluable()) {
        accumulate(rs.grid.refined(),
                   [&](std::size_t, double omega, double* out) {
                       terms(omega, std::norm(ph.eval(omega)), rs.eval(1, omega),
                             rs.eval(2, omega), out);
                   },
                   9, fine);
    } else {
        const FrequencyGrid& g = rs.grid;
        for (double& v : fine) v = 0.0;
        double vals[9];
        const std::size_t last = g.size() - 1;
        for (std::size_t i = 0; i <= last; i += 2) {
            const double w = (i == 0 || i == last) ? 0.5 : 1.0;
            terms(g[i], std::norm(ph.amplitude[i]), rs.r1[i], rs.r2[i], vals);
            for (int k = 0; k < 9; ++k) fine[k] += w * vals[k];
        }
        const double scale = 2.0 * g.spacing() / (2.0 * std::numbers::pi);
        for (double& v : fine) v *= scale;
    }

    for (int k = 0; k < 9; ++k) {
        if (std::abs(fine[k] - coarse[k]) > refinement_rel_tol + 1e-14) {
            // Moments are bounded by the unit photon norm, so an absolute
            // comparison at the same tolerance is the right scale.
            std::ostringstream msg;
            msg << "spectral_moments: refinement check failed (component " << k << ": "
                << coarse[k] << " vs " << fine[k] << "); increase grid_points";
            throw NumericError(msg.str());
        }
    }

    SpectralMoments m;
    m.i11 = coarse[0];
    m.i22 = coarse[1];
    m.iee = coarse[2];
    m.i12 = {coarse[3], coarse[4]};
    m.i1e = {coarse[5], coarse[6]};
    m.i2e = {coarse[7], coarse[8]};
    return m;
}

KF kf_from_moments(const SpectralMoments& m, const QubitState& q, double eta, int s) {
    if (s != 1 && s != -1) {
        throw std::invalid_argument("detector branch must be +1 or -1");
    }
    const double a2 = std::norm(q.alpha);
    const cplx beta_eff = std::sqrt(eta) * q.beta;
    const double b2 = std::norm(beta_eff);
    const double sd = static_cast<double>(s);

    const double phi1 = a2 * (m.i11 + m.i22 - 2.0 * m.i12.real());
    const double phi2 = a2 * (m.i11 + m.i22 + 2.0 * m.i12.real()) + 4.0 * b2 * m.iee +
                        4.0 * sd * (q.alpha * std::conj(beta_eff) * (m.i1e + m.i2e)).real();
    KF out;
    out.k = (phi1 + phi2) / 8.0;

    const cplx sba = sd * std::conj(q.beta) * q.alpha;
    const cplx c1 = a2 + sba;
    const cplx c2 = -(a2 - sba);
    const cplx c3 = 2.0 * std::conj(q.beta) * beta_eff;
    const double num = std::norm(c1) * m.i11 + std::norm(c2) * m.i22 + std::norm(c3) * m.iee +
                       2.0 * (c1 * std::conj(c2) * m.i12).real() +
                       2.0 * (c1 * std::conj(c3) * m.i1e).real() +
                       2.0 * (c2 * std::conj(c3) * m.i2e).real();
    out.f = out.k > no_click_floor ? num / (8.0 * out.k) : 0.0;
    return out;
}

AveragedMetrics averaged_metrics(const ReflectionSpectrum& rs, const PhotonSpectrum& ph,
                                 const InterferometerSettings& ifc,
                                 const BlochQuadrature& quad) {
    const SpectralMoments m = spectral_moments(rs, ph, ifc);
    AveragedMetrics out;
    out.r1 = m.i11;
    out.r2 = m.i22;
    for (const BlochNode& node : quad.nodes()) {
        const QubitState q = QubitState::from_angles(node.chi, node.phi);
        const KF plus = kf_from_moments(m, q, ifc.eta, +1);
        const KF minus = kf_from_moments(m, q, ifc.eta, -1);
        const double ksum = plus.k + minus.k;
        const double fw = ksum > 0.0 ? (plus.k * plus.f + minus.k * minus.f) / ksum : 0.0;
        out.f_ave += node.weight * fw;
        out.f_ave_plus += node.weight * plus.f;
        out.f_ave_minus += node.weight * minus.f;
        out.p_herald_ave += node.weight * herald_probability(q, out.r1, out.r2);
    }
    return out;
}

}  // namespace cavmem

#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "cavmem/errors.hpp"
#include "cavmem/grid.hpp"
#include "cavmem/params.hpp"
#include "cavmem/quadrature.hpp"
#include "cavmem/qubit.hpp"
#include "cavmem/reflection.hpp"
#include "cavmem/spectrum.hpp"
#include "test_util.hpp"

using namespace cavmem;

namespace {

// Inverse transform of a sampled spectrum at one instant, trapezoid rule.
std::complex<double> inverse_transform(const PhotonSpectrum& ph, double t) {
    std::vector<std::complex<double>> f(ph.grid.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = ph.amplitude[i] * std::polar(1.0, -ph.grid[i] * t);
    }
    return spectral_trapezoid(ph.grid, f);
}

}  // namespace

TEST_SUITE("core-types") {

TEST_CASE("parameter validation") {
    SystemParams p;
    p.gamma = 0.1;
    CHECK_NOTHROW(p.validate());
    p.gamma = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.gamma = 0.1;
    p.kappa = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.kappa = 1.0;
    p.g = -0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);

    FullSystemParams fp;
    fp.base.gamma = 0.01;
    fp.kappa_q = 1e4;
    fp.g_q = std::sqrt(0.01 * 1e4);
    CHECK(fp.implied_gamma() == doctest::Approx(0.01).epsilon(1e-14));
    fp.kappa_q = 0.0;
    CHECK_THROWS_AS(fp.validate(), std::invalid_argument);
}

TEST_CASE("cooperativity examples") {
    SystemParams p;
    p.g = 1.0;
    p.gamma = 1.0;
    CHECK(cooperativity(p) == doctest::Approx(1.0).epsilon(1e-14));

    // Quoted SiV numbers; the stored ratio arithmetic gives ~3.01, not the
    // quoted ~13 (both live in the preset provenance).
    p.g = 0.050;
    p.gamma = 0.00083;
    CHECK(cooperativity(p) == doctest::Approx(3.01204819).epsilon(1e-8));

    p.g = std::sqrt(10.0);
    p.gamma = 1.0;
    CHECK(cooperativity(p) == doctest::Approx(10.0).epsilon(1e-14));
}

TEST_CASE("g from cooperativity") {
    CHECK(g_from_cooperativity(0.0, 1.0, 1.0) == 0.0);
    CHECK(g_from_cooperativity(10.0, 1.0, 1.0) == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
    CHECK(g_from_cooperativity(50.01, 1.0, 1.0) ==
          doctest::Approx(7.071774883294857).epsilon(1e-12));
    CHECK_THROWS_AS(g_from_cooperativity(-1.0, 1.0, 1.0), std::invalid_argument);

    test_util::Rng rng;
    for (int i = 0; i < 200; ++i) {
        SystemParams p;
        p.kappa = rng.log_uniform(0.1, 10.0);
        p.gamma = rng.log_uniform(1e-4, 1.0);
        const double c = rng.log_uniform(1e-3, 100.0);
        p.g = g_from_cooperativity(c, p.kappa, p.gamma);
        CHECK(cooperativity(p) == doctest::Approx(c).epsilon(1e-14));
    }
}

TEST_CASE("unit normalization is exact for binary scale factors") {
    SystemParams p;
    p.gamma = 0.1;
    p.kappa_j = 0.003;
    p.g = 1.75;
    p.delta_1 = -5.0;
    p.delta_2 = 5.0;

    SystemParams scaled = p;
    const double factor = 4.0;
    scaled.kappa *= factor;
    scaled.kappa_j *= factor;
    scaled.gamma *= factor;
    scaled.g *= factor;
    scaled.delta_1 *= factor;
    scaled.delta_2 *= factor;

    const SystemParams a = p.normalized();
    const SystemParams b = scaled.normalized();
    CHECK(a.gamma == b.gamma);
    CHECK(a.kappa_j == b.kappa_j);
    CHECK(a.g == b.g);
    CHECK(a.delta_1 == b.delta_1);

    // Equal ratios force bit-identical reflectivities downstream.
    const FrequencyGrid grid(2.0, 257);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto ra = reflection_coefficient(a, a.delta_1, grid[i]);
        const auto rb = reflection_coefficient(b, b.delta_1, grid[i]);
        CHECK(ra.real() == rb.real());
        CHECK(ra.imag() == rb.imag());
    }
}

TEST_CASE("unit normalization for arbitrary scale factors") {
    SystemParams p;
    p.gamma = 0.1;
    p.kappa_j = 0.23;
    p.g = 0.05;
    SystemParams scaled = p;
    const double factor = 3.7;
    scaled.kappa *= factor;
    scaled.kappa_j *= factor;
    scaled.gamma *= factor;
    scaled.g *= factor;
    const SystemParams a = p.normalized();
    const SystemParams b = scaled.normalized();
    CHECK(a.gamma == doctest::Approx(b.gamma).epsilon(1e-15));
    CHECK(a.kappa_j == doctest::Approx(b.kappa_j).epsilon(1e-15));
    CHECK(a.g == doctest::Approx(b.g).epsilon(1e-15));
}

TEST_CASE("scheme detunings") {
    const Detunings pp = build_detunings({Scheme::PushPull, 100.0});
    CHECK(pp.delta_1 == -50.0);
    CHECK(pp.delta_2 == 50.0);

    const Detunings oo = build_detunings({Scheme::OnOff, 10.0});
    CHECK(oo.delta_1 == 0.0);
    CHECK(oo.delta_2 == 10.0);

    // Swapping the ground-state labels flips the push-pull detuning signs.
    CHECK(pp.delta_1 == -pp.delta_2);

    CHECK_THROWS_AS(build_detunings({Scheme::PushPull, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(build_detunings({Scheme::OnOff, -1.0}), std::invalid_argument);
}

TEST_CASE("frequency grid shape") {
    const FrequencyGrid grid(8.0, 4097);
    CHECK(grid.size() == 4097);
    CHECK(grid[grid.zero_index()] == 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(grid[i] == -grid[grid.size() - 1 - i]);  // exact negated partners
    }
    for (std::size_t i = 1; i < grid.size(); ++i) {
        CHECK(grid[i] - grid[i - 1] == doctest::Approx(grid.spacing()).epsilon(1e-12));
    }

    const FrequencyGrid fine = grid.refined();
    CHECK(fine.size() == 2 * (grid.size() - 1) + 1);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(fine[2 * i] == grid[i]);  // shared points bit-exact
    }

    CHECK_THROWS_AS(FrequencyGrid(1.0, 4096), ConfigError);
    CHECK_THROWS_AS(FrequencyGrid(-1.0, 11), ConfigError);
    CHECK_THROWS_AS(FrequencyGrid(1.0, 1), ConfigError);
}

TEST_CASE("gaussian spectrum closed form and normalization") {
    const FrequencyGrid grid = FrequencyGrid::for_sigma(1.0);
    const PhotonSpectrum ph = gaussian_spectrum(1.0, grid);

    // (8 pi)^{1/4}
    CHECK(ph.amplitude[grid.zero_index()].real() ==
          doctest::Approx(2.2390302698404954).epsilon(1e-13));
    CHECK(ph.norm() == doctest::Approx(1.0).epsilon(1e-10));

    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(ph.amplitude[i] == ph.amplitude[grid.size() - 1 - i]);  // even function
    }

    for (double sigma : {1.0 / 2000.0, 1.0 / 100.0, 0.05, 0.5, 1.0}) {
        const PhotonSpectrum g = gaussian_spectrum(sigma, FrequencyGrid::for_sigma(sigma));
        CHECK(std::abs(g.norm() - 1.0) < 1e-10);
    }

    // Too-narrow grid is a configuration error.
    CHECK_THROWS_AS(gaussian_spectrum(1.0, FrequencyGrid(4.0, 257)), ConfigError);
}

TEST_CASE("gaussian time amplitude") {
    CHECK(gaussian_time_amplitude(1.0, 0.0).real() ==
          doctest::Approx(0.6316187777460647).epsilon(1e-13));

    // Real and even.
    CHECK(gaussian_time_amplitude(0.7, 1.3).imag() == 0.0);
    CHECK(gaussian_time_amplitude(0.7, 1.3) == gaussian_time_amplitude(0.7, -1.3));

    // Unit L2 norm in time.
    const double sigma = 0.5;
    const int n = 20001;
    const double t_max = 14.0 / sigma, dt = 2.0 * t_max / (n - 1);
    std::vector<double> f(n);
    for (int i = 0; i < n; ++i) {
        f[i] = std::norm(gaussian_time_amplitude(sigma, -t_max + i * dt));
    }
    CHECK(time_trapezoid(f, dt) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("closed-form pulse matches the inverse transform of the spectrum") {
    for (double sigma : {0.1, 1.0}) {
        const PhotonSpectrum ph = gaussian_spectrum(sigma, FrequencyGrid::for_sigma(sigma));
        for (double t : {0.0, 0.3 / sigma, 1.0 / sigma, -2.5 / sigma}) {
            const std::complex<double> numeric = inverse_transform(ph, t);
            const std::complex<double> closed = gaussian_time_amplitude(sigma, t);
            CHECK(std::abs(numeric - closed) < 1e-10);
        }
    }
}

TEST_CASE("qubit state round trips") {
    for (double chi : {0.0, 0.3, 1.5707963267948966, 2.8, 3.141592653589793}) {
        for (double phi : {-3.0, -1.2, 0.0, 0.7, 3.0}) {
            const QubitState q = QubitState::from_angles(chi, phi);
            CHECK(std::abs(q.norm2() - 1.0) < 1e-12);
            CHECK(std::abs(q.chi() - chi) < 1e-12);
            if (chi > 1e-9 && chi < 3.14159) {
                CHECK(std::abs(wrap_pi(q.phi() - phi)) < 1e-12);
            }
        }
    }
    CHECK_THROWS_AS(QubitState::from_amplitudes(0.0, 0.0), std::invalid_argument);
    const QubitState q = QubitState::from_amplitudes({3.0, 0.0}, {0.0, 4.0});
    CHECK(std::abs(q.norm2() - 1.0) < 1e-14);
    CHECK(std::abs(q.alpha - std::complex<double>(0.6, 0.0)) < 1e-14);
}

TEST_CASE("interferometer settings") {
    const InterferometerSettings ifc(7.0, 1.2);  // 7 rad wraps
    CHECK(ifc.theta == doctest::Approx(7.0 - 2.0 * std::numbers::pi).epsilon(1e-12));
    CHECK(ifc.eta == 1.0);
    CHECK_THROWS_AS(InterferometerSettings(0.0, 1.2, 1.5), std::invalid_argument);
    CHECK_THROWS_AS(InterferometerSettings(0.0, 1.2, -0.1), std::invalid_argument);
}

TEST_CASE("duration conventions") {
    CHECK(sigma_for_duration(DurationConvention::IntensityFwhm, 1.0) ==
          doctest::Approx(2.3548200450309493).epsilon(1e-14));
    CHECK(sigma_for_duration(DurationConvention::AmplitudeInvEHalfWidth, 1.0) == 2.0);
    CHECK(sigma_for_duration(DurationConvention::IntensitySigma, 1.0) == 1.0);
    CHECK(sigma_for_duration(DurationConvention::IntensitySigma, 2.0) == 0.5);
}

TEST_CASE("wrap_pi convention") {
    CHECK(wrap_pi(std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_pi(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_pi(3.0 * std::numbers::pi) == doctest::Approx(std::numbers::pi));
    CHECK(wrap_pi(0.5) == 0.5);
    CHECK(wrap_pi(-0.5) == -0.5);
}

}  // TEST_SUITE

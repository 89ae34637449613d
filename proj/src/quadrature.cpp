#include "cavmem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "cavmem/errors.hpp"

namespace cavmem {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

template <typename T>
T trapezoid_impl(const FrequencyGrid& grid, const std::vector<T>& f) {
    if (f.size() != grid.size()) {
        throw NumericError("spectral trapezoid: integrand size does not match grid");
    }
    T acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
    return acc * (grid.spacing() / two_pi);
}

void check_agreement(double coarse, double fine, double coarse_im, double fine_im,
                     const std::string& label) {
    const double diff = std::hypot(fine - coarse, fine_im - coarse_im);
    const double scale = std::max(std::hypot(fine, fine_im), std::hypot(coarse, coarse_im));
    if (diff > refinement_rel_tol * scale + 1e-14) {
        std::ostringstream msg;
        msg << "spectral integral refinement check failed for " << label << ": coarse=("
            << coarse << "," << coarse_im << ") fine=(" << fine << "," << fine_im
            << ") rel_diff=" << (scale > 0.0 ? diff / scale : diff)
            << " (tol " << refinement_rel_tol << "); increase grid_points or widen the grid";
        throw NumericError(msg.str());
    }
}

template <typename T, typename Fn>
T checked_impl(const FrequencyGrid& grid, const Fn& f, const std::string& label) {
    std::vector<T> coarse(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) coarse[i] = f(grid[i]);
    const FrequencyGrid fine_grid = grid.refined();
    std::vector<T> fine(fine_grid.size());
    for (std::size_t i = 0; i < fine_grid.size(); ++i) fine[i] = f(fine_grid[i]);
    const T ic = trapezoid_impl(grid, coarse);
    const T iff = trapezoid_impl(fine_grid, fine);
    if constexpr (std::is_same_v<T, double>) {
        check_agreement(ic, iff, 0.0, 0.0, label);
    } else {
        check_agreement(ic.real(), iff.real(), ic.imag(), iff.imag(), label);
    }
    return iff;
}

template <typename T>
T sampled_checked_impl(const FrequencyGrid& grid, const std::vector<T>& f,
                       const std::string& label) {
    const T full = trapezoid_impl(grid, f);
    // Every-other-sample trapezoid over the same span.
    T acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 2; i + 2 < f.size(); i += 2) acc += f[i];
    const T half = acc * (2.0 * grid.spacing() / two_pi);
    if constexpr (std::is_same_v<T, double>) {
        check_agreement(half, full, 0.0, 0.0, label);
    } else {
        check_agreement(half.real(), full.real(), half.imag(), full.imag(), label);
    }
    return full;
}

}  // namespace

double spectral_trapezoid(const FrequencyGrid& grid, const std::vector<double>& f) {
    return trapezoid_impl(grid, f);
}

std::complex<double> spectral_trapezoid(const FrequencyGrid& grid,
                                        const std::vector<std::complex<double>>& f) {
    return trapezoid_impl(grid, f);
}

double spectral_integral_checked(const FrequencyGrid& grid,
                                 const std::function<double(double)>& f,
                                 const std::string& label) {
    return checked_impl<double>(grid, f, label);
}

std::complex<double> spectral_integral_checked(
    const FrequencyGrid& grid, const std::function<std::complex<double>(double)>& f,
    const std::string& label) {
    return checked_impl<std::complex<double>>(grid, f, label);
}

double sampled_integral_checked(const FrequencyGrid& grid, const std::vector<double>& f,
                                const std::string& label) {
    return sampled_checked_impl(grid, f, label);
}

std::complex<double> sampled_integral_checked(const FrequencyGrid& grid,
                                              const std::vector<std::complex<double>>& f,
                                              const std::string& label) {
    return sampled_checked_impl(grid, f, label);
}

double time_trapezoid(const std::vector<double>& f, double dt) {
    if (f.size() < 2) return 0.0;
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) acc += f[i];
    return acc * dt;
}

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre: order must be positive");
    GaussLegendre out;
    out.nodes.resize(n);
    out.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based starting guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        out.nodes[i] = -x;
        out.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        out.weights[i] = w;
        out.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) out.nodes[n / 2] = 0.0;
    return out;
}

double wrap_pi(double x) {
    double y = std::remainder(x, two_pi);  // (-pi, pi] up to the -pi edge
    if (y <= -std::numbers::pi) y += two_pi;
    return y;
}

}  // namespace cavmem

#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "cavmem/grid.hpp"

namespace cavmem {

// Every spectral integral must reproduce under interval doubling to this
// relative tolerance or the run aborts.
inline constexpr double refinement_rel_tol = 1e-8;

// Trapezoid rule with the measure d(omega)/(2*pi) over the grid.
double spectral_trapezoid(const FrequencyGrid& grid, const std::vector<double>& f);
std::complex<double> spectral_trapezoid(const FrequencyGrid& grid,
                                        const std::vector<std::complex<double>>& f);

// Evaluate the integrand on the grid and on the interval-doubled grid; throw
// NumericError (with `label` in the message) if the two disagree.
double spectral_integral_checked(const FrequencyGrid& grid,
                                 const std::function<double(double)>& f,
                                 const std::string& label);
std::complex<double> spectral_integral_checked(const FrequencyGrid& grid,
                                               const std::function<std::complex<double>(double)>& f,
                                               const std::string& label);

// Refinement check for integrands only known at the samples: full-resolution
// trapezoid against the every-other-sample trapezoid, same tolerance.
double sampled_integral_checked(const FrequencyGrid& grid, const std::vector<double>& f,
                                const std::string& label);
std::complex<double> sampled_integral_checked(const FrequencyGrid& grid,
                                              const std::vector<std::complex<double>>& f,
                                              const std::string& label);

// Uniform-spacing trapezoid in time.
double time_trapezoid(const std::vector<double>& f, double dt);

struct GaussLegendre {
    std::vector<double> nodes;    // ascending, on [-1, 1]
    std::vector<double> weights;  // sum to 2
};

// Nodes and weights by Newton iteration on the Legendre polynomial.
GaussLegendre gauss_legendre(int n);

double wrap_pi(double x);  // wrap an angle to (-pi, pi]

}  // namespace cavmem

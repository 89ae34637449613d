#pragma once

#include <cstddef>
#include <vector>

namespace cavmem {

// Uniform frequency grid, symmetric about zero, with an odd point count so
// omega = 0 is a sample. Samples are (i - n/2)*spacing, which keeps the
// negated partner of every sample and the shared points of a refined grid
// bit-exact.
class FrequencyGrid {
public:
    static constexpr std::size_t default_points = 4097;

    FrequencyGrid() : FrequencyGrid(1.0, 3) {}
    FrequencyGrid(double half_span, std::size_t points);

    // Default span +-8*sigma: |A(omega)|^2 is below 1e-55 at the edge.
    static FrequencyGrid for_sigma(double sigma, std::size_t points = default_points);

    std::size_t size() const { return samples_.size(); }
    double spacing() const { return spacing_; }
    double half_span() const { return half_span_; }
    std::size_t zero_index() const { return (samples_.size() - 1) / 2; }
    double operator[](std::size_t i) const { return samples_[i]; }
    const std::vector<double>& samples() const { return samples_; }

    // Same span, interval count doubled: 2(N-1)+1 points.
    FrequencyGrid refined() const;

    bool same_shape(const FrequencyGrid& other) const;

private:
    double half_span_;
    double spacing_;
    std::vector<double> samples_;
};

}  // namespace cavmem

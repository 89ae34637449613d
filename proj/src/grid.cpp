#include "cavmem/grid.hpp"

#include <cmath>

#include "cavmem/errors.hpp"

namespace cavmem {

FrequencyGrid::FrequencyGrid(double half_span, std::size_t points) : half_span_(half_span) {
    if (!(half_span > 0.0) || !std::isfinite(half_span)) {
        throw ConfigError("frequency grid: half_span must be positive and finite");
    }
    if (points < 3 || points % 2 == 0) {
        throw ConfigError("frequency grid: point count must be odd and at least 3");
    }
    const std::size_t m = (points - 1) / 2;
    spacing_ = half_span / static_cast<double>(m);
    samples_.resize(points);
    for (std::size_t i = 0; i < points; ++i) {
        // (i - m) * spacing keeps omega and -omega exact partners.
        samples_[i] = (static_cast<double>(i) - static_cast<double>(m)) * spacing_;
    }
}

FrequencyGrid FrequencyGrid::for_sigma(double sigma, std::size_t points) {
    if (!(sigma > 0.0)) {
        throw ConfigError("frequency grid: sigma must be positive");
    }
    return FrequencyGrid(8.0 * sigma, points);
}

FrequencyGrid FrequencyGrid::refined() const {
    return FrequencyGrid(half_span_, 2 * (samples_.size() - 1) + 1);
}

bool FrequencyGrid::same_shape(const FrequencyGrid& other) const {
    return samples_.size() == other.samples_.size() && half_span_ == other.half_span_;
}

}  // namespace cavmem

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <random>

#include "cavmem/qubit.hpp"

namespace test_util {

// Deterministic draws; the raw engine output is mapped to [0,1) by hand so the
// sequences do not depend on the standard library's distribution details.
struct Rng {
    std::mt19937_64 eng;

    explicit Rng(std::uint64_t seed = default_seed()) : eng(seed) {}

    static std::uint64_t default_seed() {
        if (const char* s = std::getenv("CAVMEM_TEST_SEED")) {
            return std::strtoull(s, nullptr, 10);
        }
        return 12345;
    }

    double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }
};

inline cavmem::QubitState random_qubit(Rng& rng) {
    const double chi = std::acos(rng.uniform(-1.0, 1.0));
    const double phi = rng.uniform(-3.14159, 3.14159);
    return cavmem::QubitState::from_angles(chi, phi);
}

}  // namespace test_util

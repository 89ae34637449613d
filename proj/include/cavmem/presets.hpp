#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cavmem/params.hpp"

namespace cavmem {

// Named parameter points for the stock experiments. All values are ratios to
// kappa; provenance records where each number comes from.
struct Preset {
    std::string name;
    std::string title;
    double delta = 1.0;
    double gamma = 1.0;
    double kappa_j = 0.0;
    double sigma = 1.0;
    double c_min = 5.0;
    double c_max = 80.0;
    std::optional<double> c_fixed;        // fixed-C presets (e.g. demonstration points)
    bool c_at_pi = false;                 // fixed C resolved to C_pi at run time
    std::optional<double> g_fixed;        // presets quoting g directly
    std::optional<Scheme> scheme;         // empty: sweep both schemes
    std::vector<double> sigma_list;       // bandwidth-scan presets
    std::string provenance;
};

const std::vector<Preset>& preset_catalog();
const Preset* find_preset(const std::string& name);

}  // namespace cavmem

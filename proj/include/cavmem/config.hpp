#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cavmem {

// Flat TOML subset: `key = value` lines, values are numbers, quoted strings,
// booleans, or homogeneous arrays of those; `#` comments. Sections and nested
// tables are rejected, as are unknown keys at resolution time.
using TomlValue = std::variant<double, std::string, bool, std::vector<double>,
                               std::vector<std::string>>;
using TomlMap = std::map<std::string, TomlValue>;

TomlMap parse_toml_flat(const std::string& text);

// Run configuration, all values optional so CLI flags, config files and
// presets can be layered. Rates are ratios to kappa; when `kappa` is given,
// absolute rates are normalized by it (and times multiplied by it) on load.
struct RunConfig {
    std::optional<std::string> preset;
    std::optional<std::string> scheme;  // "push-pull", "on-off", "both"
    std::optional<double> kappa;
    std::optional<double> gamma;
    std::optional<double> kappa_j;
    std::optional<double> delta;
    std::optional<double> delta_c;
    std::optional<double> sigma;
    std::optional<double> g;
    std::optional<double> c;
    std::optional<double> c_min;
    std::optional<double> c_max;
    std::optional<std::size_t> c_points;
    std::optional<double> theta;
    std::optional<double> delay;
    std::optional<double> eta;
    std::optional<std::size_t> grid_points;
    std::optional<double> rel_tol;
    std::optional<double> abs_tol;
    std::optional<std::size_t> samples;
    std::optional<double> duration;
    std::optional<double> kappa_q;
    std::optional<int> atom_state;  // 1 or 2
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out_dir;
    std::optional<std::vector<double>> sigma_list;
    std::optional<std::vector<std::string>> conventions;
    std::optional<int> bloch_polar;
    std::optional<int> bloch_azimuth;
    std::optional<bool> optimize_interferometer;

    static RunConfig from_text(const std::string& text);
    static RunConfig from_file(const std::filesystem::path& path);

    // Fields set in `higher` win.
    void merge_from(const RunConfig& higher);

    // Divide rates by kappa, multiply times by kappa, then set kappa = 1.
    void normalize_units();
};

}  // namespace cavmem

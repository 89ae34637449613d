#include "cavmem/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "cavmem/errors.hpp"

namespace cavmem {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') in_string = !in_string;
        if (line[i] == '#' && !in_string) return line.substr(0, i);
    }
    return line;
}

bool valid_key(const std::string& key) {
    if (key.empty()) return false;
    for (char c : key) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

double parse_number(const std::string& text, int lineno) {
    const std::string t = trim(text);
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || t.empty()) {
        std::ostringstream msg;
        msg << "config line " << lineno << ": '" << t << "' is not a number";
        throw ConfigError(msg.str());
    }
    return v;
}

std::string parse_string(const std::string& text, int lineno) {
    const std::string t = trim(text);
    if (t.size() < 2 || t.front() != '"' || t.back() != '"') {
        std::ostringstream msg;
        msg << "config line " << lineno << ": expected a quoted string, got '" << t << "'";
        throw ConfigError(msg.str());
    }
    return t.substr(1, t.size() - 2);
}

std::vector<std::string> split_top_level(const std::string& body, int lineno) {
    std::vector<std::string> parts;
    std::string current;
    bool in_string = false;
    for (char c : body) {
        if (c == '"') in_string = !in_string;
        if (c == ',' && !in_string) {
            parts.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    if (in_string) {
        std::ostringstream msg;
        msg << "config line " << lineno << ": unterminated string";
        throw ConfigError(msg.str());
    }
    if (!trim(current).empty() || !parts.empty()) parts.push_back(current);
    return parts;
}

TomlValue parse_value(const std::string& raw, int lineno) {
    const std::string t = trim(raw);
    if (t.empty()) {
        std::ostringstream msg;
        msg << "config line " << lineno << ": missing value";
        throw ConfigError(msg.str());
    }
    if (t == "true") return true;
    if (t == "false") return false;
    if (t.front() == '"') return parse_string(t, lineno);
    if (t.front() == '[') {
        if (t.back() != ']') {
            std::ostringstream msg;
            msg << "config line " << lineno << ": arrays must close on the same line";
            throw ConfigError(msg.str());
        }
        const std::string body = t.substr(1, t.size() - 2);
        const std::vector<std::string> parts = split_top_level(body, lineno);
        if (parts.empty() || (parts.size() == 1 && trim(parts[0]).empty())) {
            return std::vector<double>{};
        }
        if (trim(parts[0]).front() == '"') {
            std::vector<std::string> out;
            for (const auto& p : parts) out.push_back(parse_string(p, lineno));
            return out;
        }
        std::vector<double> out;
        for (const auto& p : parts) out.push_back(parse_number(p, lineno));
        return out;
    }
    return parse_number(t, lineno);
}

[[noreturn]] void fail_kind(const std::string& key, const char* wanted) {
    throw ConfigError("config key '" + key + "' must be a " + wanted);
}

double as_number(const TomlMap& m, const std::string& key) {
    if (const auto* v = std::get_if<double>(&m.at(key))) return *v;
    fail_kind(key, "number");
}

std::string as_string(const TomlMap& m, const std::string& key) {
    if (const auto* v = std::get_if<std::string>(&m.at(key))) return *v;
    fail_kind(key, "string");
}

bool as_bool(const TomlMap& m, const std::string& key) {
    if (const auto* v = std::get_if<bool>(&m.at(key))) return *v;
    fail_kind(key, "boolean");
}

std::vector<double> as_numbers(const TomlMap& m, const std::string& key) {
    if (const auto* v = std::get_if<std::vector<double>>(&m.at(key))) return *v;
    fail_kind(key, "number array");
}

std::vector<std::string> as_strings(const TomlMap& m, const std::string& key) {
    if (const auto* v = std::get_if<std::vector<std::string>>(&m.at(key))) return *v;
    fail_kind(key, "string array");
}

std::size_t as_count(const TomlMap& m, const std::string& key) {
    const double v = as_number(m, key);
    if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
        fail_kind(key, "nonnegative integer");
    }
    return static_cast<std::size_t>(v);
}

int as_int(const TomlMap& m, const std::string& key) {
    const double v = as_number(m, key);
    if (v != static_cast<double>(static_cast<int>(v))) fail_kind(key, "integer");
    return static_cast<int>(v);
}

}  // namespace

TomlMap parse_toml_flat(const std::string& text) {
    TomlMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            std::ostringstream msg;
            msg << "config line " << lineno << ": sections are not supported (flat keys only)";
            throw ConfigError(msg.str());
        }
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": expected 'key = value'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(body.substr(0, eq));
        if (!valid_key(key)) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": invalid key '" << key << "'";
            throw ConfigError(msg.str());
        }
        if (out.count(key)) {
            std::ostringstream msg;
            msg << "config line " << lineno << ": duplicate key '" << key << "'";
            throw ConfigError(msg.str());
        }
        out.emplace(key, parse_value(body.substr(eq + 1), lineno));
    }
    return out;
}

RunConfig RunConfig::from_text(const std::string& text) {
    const TomlMap m = parse_toml_flat(text);
    RunConfig cfg;
    for (const auto& [key, value] : m) {
        (void)value;
        if (key == "preset") cfg.preset = as_string(m, key);
        else if (key == "scheme") cfg.scheme = as_string(m, key);
        else if (key == "kappa") cfg.kappa = as_number(m, key);
        else if (key == "gamma") cfg.gamma = as_number(m, key);
        else if (key == "kappa_j") cfg.kappa_j = as_number(m, key);
        else if (key == "delta") cfg.delta = as_number(m, key);
        else if (key == "delta_c") cfg.delta_c = as_number(m, key);
        else if (key == "sigma") cfg.sigma = as_number(m, key);
        else if (key == "g") cfg.g = as_number(m, key);
        else if (key == "c") cfg.c = as_number(m, key);
        else if (key == "c_min") cfg.c_min = as_number(m, key);
        else if (key == "c_max") cfg.c_max = as_number(m, key);
        else if (key == "c_points") cfg.c_points = as_count(m, key);
        else if (key == "theta") cfg.theta = as_number(m, key);
        else if (key == "delay") cfg.delay = as_number(m, key);
        else if (key == "eta") cfg.eta = as_number(m, key);
        else if (key == "grid_points") cfg.grid_points = as_count(m, key);
        else if (key == "rel_tol") cfg.rel_tol = as_number(m, key);
        else if (key == "abs_tol") cfg.abs_tol = as_number(m, key);
        else if (key == "samples") cfg.samples = as_count(m, key);
        else if (key == "duration") cfg.duration = as_number(m, key);
        else if (key == "kappa_q") cfg.kappa_q = as_number(m, key);
        else if (key == "atom_state") cfg.atom_state = as_int(m, key);
        else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(as_count(m, key));
        else if (key == "out_dir") cfg.out_dir = as_string(m, key);
        else if (key == "sigma_list") cfg.sigma_list = as_numbers(m, key);
        else if (key == "conventions") cfg.conventions = as_strings(m, key);
        else if (key == "bloch_polar") cfg.bloch_polar = as_int(m, key);
        else if (key == "bloch_azimuth") cfg.bloch_azimuth = as_int(m, key);
        else if (key == "optimize_interferometer") cfg.optimize_interferometer = as_bool(m, key);
        else throw ConfigError("unknown config key '" + key + "'");
    }
    return cfg;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str());
}

void RunConfig::merge_from(const RunConfig& higher) {
    auto pick = [](auto& mine, const auto& theirs) {
        if (theirs) mine = theirs;
    };
    pick(preset, higher.preset);
    pick(scheme, higher.scheme);
    pick(kappa, higher.kappa);
    pick(gamma, higher.gamma);
    pick(kappa_j, higher.kappa_j);
    pick(delta, higher.delta);
    pick(delta_c, higher.delta_c);
    pick(sigma, higher.sigma);
    pick(g, higher.g);
    pick(c, higher.c);
    pick(c_min, higher.c_min);
    pick(c_max, higher.c_max);
    pick(c_points, higher.c_points);
    pick(theta, higher.theta);
    pick(delay, higher.delay);
    pick(eta, higher.eta);
    pick(grid_points, higher.grid_points);
    pick(rel_tol, higher.rel_tol);
    pick(abs_tol, higher.abs_tol);
    pick(samples, higher.samples);
    pick(duration, higher.duration);
    pick(kappa_q, higher.kappa_q);
    pick(atom_state, higher.atom_state);
    pick(seed, higher.seed);
    pick(out_dir, higher.out_dir);
    pick(sigma_list, higher.sigma_list);
    pick(conventions, higher.conventions);
    pick(bloch_polar, higher.bloch_polar);
    pick(bloch_azimuth, higher.bloch_azimuth);
    pick(optimize_interferometer, higher.optimize_interferometer);
}

void RunConfig::normalize_units() {
    if (!kappa) return;
    const double k = *kappa;
    if (!(k > 0.0)) throw ConfigError("config: kappa must be positive");
    auto rate = [&](std::optional<double>& v) {
        if (v) v = *v / k;
    };
    rate(gamma);
    rate(kappa_j);
    rate(delta);
    rate(delta_c);
    rate(sigma);
    rate(g);
    rate(kappa_q);
    if (delay) delay = *delay * k;
    if (duration) duration = *duration * k;
    if (sigma_list) {
        for (double& s : *sigma_list) s /= k;
    }
    kappa = 1.0;
}

}  // namespace cavmem

#include "cavmem/params.hpp"

#include <cmath>
#include <stdexcept>

namespace cavmem {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

bool all_finite(const SystemParams& p) {
    return std::isfinite(p.kappa) && std::isfinite(p.kappa_j) && std::isfinite(p.gamma) &&
           std::isfinite(p.g) && std::isfinite(p.delta_c) && std::isfinite(p.delta_1) &&
           std::isfinite(p.delta_2);
}

}  // namespace

void SystemParams::validate() const {
    require(all_finite(*this), "SystemParams: all entries must be finite");
    require(kappa > 0.0, "SystemParams: kappa must be positive");
    require(gamma > 0.0, "SystemParams: gamma must be positive");
    require(kappa_j >= 0.0, "SystemParams: kappa_j must be nonnegative");
    require(g >= 0.0, "SystemParams: g must be nonnegative");
}

SystemParams SystemParams::normalized() const {
    validate();
    SystemParams out = *this;
    out.kappa = 1.0;
    out.kappa_j = kappa_j / kappa;
    out.gamma = gamma / kappa;
    out.g = g / kappa;
    out.delta_c = delta_c / kappa;
    out.delta_1 = delta_1 / kappa;
    out.delta_2 = delta_2 / kappa;
    return out;
}

double SystemParams::detuning(int state) const {
    require(state == 1 || state == 2, "SystemParams: ground-state index must be 1 or 2");
    return state == 1 ? delta_1 : delta_2;
}

void FullSystemParams::validate() const {
    base.validate();
    require(std::isfinite(kappa_q) && kappa_q > 0.0, "FullSystemParams: kappa_q must be positive");
    require(std::isfinite(g_q) && g_q >= 0.0, "FullSystemParams: g_q must be nonnegative");
}

const char* scheme_name(Scheme s) {
    return s == Scheme::OnOff ? "on-off" : "push-pull";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "on-off" || name == "onoff") return Scheme::OnOff;
    if (name == "push-pull" || name == "pushpull") return Scheme::PushPull;
    throw std::invalid_argument("unknown scheme '" + name + "' (expected push-pull or on-off)");
}

Detunings build_detunings(const SchemeGeometry& geom) {
    require(std::isfinite(geom.delta) && geom.delta > 0.0,
            "SchemeGeometry: ground-state separation must be positive");
    if (geom.scheme == Scheme::OnOff) return {0.0, geom.delta};
    return {-0.5 * geom.delta, 0.5 * geom.delta};
}

SystemParams with_geometry(SystemParams p, const SchemeGeometry& geom) {
    const Detunings d = build_detunings(geom);
    p.delta_1 = d.delta_1;
    p.delta_2 = d.delta_2;
    return p;
}

double cooperativity(const SystemParams& p) {
    p.validate();
    return p.cooperativity();
}

double g_from_cooperativity(double c, double kappa, double gamma) {
    require(std::isfinite(c) && c >= 0.0, "g_from_cooperativity: C must be nonnegative");
    require(kappa > 0.0 && gamma > 0.0, "g_from_cooperativity: kappa and gamma must be positive");
    return std::sqrt(c * kappa * gamma);
}

}  // namespace cavmem

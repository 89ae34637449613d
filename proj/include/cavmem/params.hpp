#pragma once

#include <string>

namespace cavmem {

// All rates are amplitude-damping rates (half the energy decay rates) and all
// frequencies are detunings from the carrier, expressed in units of the main
// cavity coupling rate kappa. kappa is kept explicitly so absolute inputs can
// be normalized; the physics depends on the ratios only.
struct SystemParams {
    double kappa = 1.0;    // main cavity coupling rate (the global unit)
    double kappa_j = 0.0;  // parasitic cavity loss rate
    double gamma = 1.0;    // atomic spontaneous damping rate
    double g = 0.0;        // single-photon Rabi coupling
    double delta_c = 0.0;  // cavity-carrier detuning
    double delta_1 = 0.0;  // atomic detuning, ground state 1
    double delta_2 = 0.0;  // atomic detuning, ground state 2

    // kappa > 0, gamma > 0, kappa_j >= 0, g >= 0, everything finite.
    void validate() const;

    double cooperativity() const { return g * g / (kappa * gamma); }

    // Same physics rescaled so kappa == 1. Two parameter sets with equal
    // ratios produce bit-identical reflectivities downstream.
    SystemParams normalized() const;

    double detuning(int state) const;  // state is 1 or 2
};

// Reflection formulas always keep the constructed gamma; LosslessAtom
// substitutes gamma = 0 into them (no dynamics change), which makes the
// |r| = 1 property directly testable when kappa_j = 0.
enum class LossMode { Physical, LosslessAtom };

// The full three-amplitude model: the atom couples to a fictitious
// spontaneous-emission cavity (rate kappa_q, coupling g_q) whose bad-cavity
// limit reproduces gamma = g_q^2 / kappa_q.
struct FullSystemParams {
    SystemParams base;
    double kappa_q = 1e4;
    double g_q = 0.0;

    void validate() const;
    double implied_gamma() const { return g_q * g_q / kappa_q; }
};

enum class Scheme { OnOff, PushPull };

const char* scheme_name(Scheme s);
Scheme scheme_from_name(const std::string& name);

// Ground-state separation delta > 0 plus the tuning choice: on-off parks the
// carrier on resonance with state 1, push-pull at the midpoint.
struct SchemeGeometry {
    Scheme scheme = Scheme::PushPull;
    double delta = 1.0;
};

struct Detunings {
    double delta_1;
    double delta_2;
};

// OnOff -> (0, delta); PushPull -> (-delta/2, +delta/2). Rejects delta <= 0.
Detunings build_detunings(const SchemeGeometry& geom);

SystemParams with_geometry(SystemParams p, const SchemeGeometry& geom);

double cooperativity(const SystemParams& p);

// Inverse of C = g^2/(kappa*gamma); rejects negative C.
double g_from_cooperativity(double c, double kappa, double gamma);

}  // namespace cavmem

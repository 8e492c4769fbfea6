#pragma once

#include <functional>
#include <optional>

#include "zzfree/transforms.hpp"

namespace zzfree {

/// zeta = E(1q1,0,1q2) + E(0) - E(1q1) - E(1q2) from the labeled dressed
/// spectrum of the full device Hamiltonian.
double static_zz_exact(const DeviceSpec& device);

/// Eq.-zeta closed form on the dressed two-qubit parameters:
/// zeta = 2 J10^2/(Dbar - d1bar) - 2 J01^2/(Dbar + d2bar).
double static_zz_sw(const EffectiveTwoQubit& eff);

struct FreedomCondition {
    double gamma = 0.0;
    double delta_bar_required = 0.0;  // detuning at which zeta_sw vanishes
};

FreedomCondition zz_freedom_condition(const EffectiveTwoQubit& eff);

struct TunableCouplerParams {
    double omega1 = 0.0, omega2 = 0.0, omega_c = 0.0;
    double delta1 = 0.0, delta2 = 0.0, delta_c = 0.0;
    double g1c = 0.0, g2c = 0.0, g12 = 0.0;
};

struct Pt4Report {
    double zeta = 0.0;
    double zeta2 = 0.0, zeta3 = 0.0, zeta4 = 0.0;
};

/// Fourth-order perturbative static ZZ for the qubit/tunable-coupler/qubit
/// topology (anharmonic coupler enters at fourth order).
Pt4Report static_zz_pt4(const TunableCouplerParams& p);

/// Bisection root finder over a scalar sweep: a grid pre-scan locates sign
/// changes, each refined to `tol`. No sign change -> empty list.
std::vector<double> find_zero(const std::function<double(double)>& evaluator, double lo,
                              double hi, int grid = 64, double tol = 1e-6);

}  // namespace zzfree

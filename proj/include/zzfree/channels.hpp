#pragma once

#include "zzfree/transforms.hpp"

namespace zzfree {

/// Two-qubit quantum channel as a 16x16 real Pauli transfer matrix.
struct QuantumChannel {
    Eigen::Matrix<double, 16, 16> ptm;

    static QuantumChannel identity();
    QuantumChannel then(const QuantumChannel& next) const;  // apply this, then next
    bool trace_preserving(double tol = 1e-12) const;
};

struct CoherenceTimes {
    double T1 = 0.0;  // us; <= 0 means no decoherence
    double T2 = 0.0;
};

/// R_ij = Tr[P_i U P_j U^+]/d for a 4x4 unitary.
QuantumChannel ptm_of_unitary(const Matrix& U);

/// Single-qubit T1/T2 map applied for t ns on the given qubit (0 or 1),
/// tensored with identity on the other.
QuantumChannel decoherence_channel(const CoherenceTimes& ct, double t_ns, int which_qubit);

/// Average gate fidelity of `actual` against `ideal`: (Tr[R_i^T R]/d + 1)/(d+1).
double average_gate_fidelity(const QuantumChannel& actual, const QuantumChannel& ideal);

struct EchoedCrResult {
    double fidelity = 0.0;
    double error = 0.0;
};

/// Echoed-CR sequence error: CR(+Omega), pi pulse, CR(-Omega), pi pulse, a
/// global ZZ phase exp(-i 2 pi alpha_zz t_g ZZ/4), then per-qubit decoherence
/// for the full gate time. The segment Hamiltonians come from the coefficient
/// sets with the ZZ part removed (it is applied once, globally). Compared
/// against the ZX90 whose sense matches the calibrated ZX sign.
EchoedCrResult echoed_cr_error(const PauliCoefficients& plus, const PauliCoefficients& minus,
                               double alpha_zz, const CoherenceTimes& q1,
                               const CoherenceTimes& q2, double tau_ns, double tg_ns);

struct DephasingModel {
    double slope = 0.00288;   // us^-1 per (GHz/Phi0)
    double offset = 0.039;    // us^-1
    double A_phi = 0.0;       // flux-noise amplitude (Phi0^2), sqrt-log form
    double omega_ir = 0.0;    // infrared cutoff (rad/us)
};

enum class DephasingForm { Linear, SqrtLog };

/// Pure dephasing rate (us^-1) from the flux slope D_phi = |d f01 / d Phi| in
/// GHz per Phi0.
double flux_dephasing_rate(double D_phi, const DephasingModel& model,
                           DephasingForm form = DephasingForm::Linear, double t_us = 0.0);

struct TanhPulse {
    double f0 = 0.0;
    double f_end = 0.0;
    double x = 5.0;

    /// Flux at time t for gate length tg (s = 1/(2 tg)).
    double at(double t, double tg) const;
};

struct Polynomial {
    std::vector<double> coeffs;  // c0 + c1 x + c2 x^2 + ...
    double operator()(double x) const;
};

/// alpha_ZZ(omega1) in GHz: inv_scale/(omega1 - pole) + quad(omega1 - center)^2 + offset,
/// with the three terms quoted in MHz.
struct ZzFit {
    double inv_scale = 0.0;
    double inv_pole = 0.0;
    double quad_scale = 0.0;
    double quad_center = 0.0;
    double offset = 0.0;

    double operator()(double omega1) const;
};

/// Gate length solving 2 pi * integral of alpha_ZZ(t) dt = pi along the
/// composed path flux -> omega1 -> alpha_ZZ, by monotone bisection to 0.1 ns.
double cz_phase_gate_length(const TanhPulse& pulse, const Polynomial& omega1_of_f,
                            const ZzFit& zz_of_omega1, double tg_lo = 50.0,
                            double tg_hi = 4000.0);

/// Second-order degenerate perturbation theory gap between two near-degenerate
/// bare labels: eigenvalue splitting of H0 + QVQ + QVP(E-H0)^-1 PV with one
/// fixed-point update of E.
double degenerate_gap(const HamiltonianMatrix& H, const BareLabel& a, const BareLabel& b);

}  // namespace zzfree

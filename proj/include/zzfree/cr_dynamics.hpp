#pragma once

#include <array>
#include <memory>
#include <optional>

#include "zzfree/transforms.hpp"

namespace zzfree {

enum class CrModel {
    Effective,  // dressed two-qubit matrix of the SW reduction, total excitation <= nmax
    Full        // dressed basis of the full device Hamiltonian
};

struct CrOptions {
    CrModel model = CrModel::Effective;
    int eff_nmax = 4;                 // effective-model truncation (15 states)
    std::optional<double> omega_d;    // drive frequency override (GHz)
    double cancel_A = 0.0;            // active-cancellation tone on the target (GHz)
    double cancel_phi = 0.0;
};

struct CrCoefficients {
    PauliCoefficients paulis;  // two-qubit, ordered (control, target)
    double omega_d = 0.0;
    double quality = 1.0;      // min computational-block support after the first split
    bool flagged = false;      // quality < 1/sqrt(2): block assignment unreliable
};

/// Rotate the driven device at the (dressed) target frequency, least-action
/// split computational 4 vs rest, split again into control sectors, and
/// decompose the 4x4 in the Pauli basis.
CrCoefficients cr_pauli_coefficients(const DeviceSpec& device, const DriveSpec& drive,
                                     const CrOptions& opts = {});

/// Precomputed static data for repeated evaluations at different amplitudes.
class CrEngine {
  public:
    CrEngine(const DeviceSpec& device, const DriveSpec& drive, const CrOptions& opts = {});

    CrCoefficients at(double Omega) const;
    CrCoefficients at(double Omega, double cancel_A, double cancel_phi) const;
    double omega_d() const { return omega_d_; }
    double static_zz() const;  // beta_ZZ at Omega = 0

    const EffectiveTwoQubit& effective() const;

    struct Impl;

  private:
    std::shared_ptr<Impl> impl_;
    double omega_d_ = 0.0;
};

struct EtaParams {
    double Delta = 0.0;   // omega2 - omega1 (GHz)
    double delta1 = 0.0;
    double delta2 = 0.0;
    double J01 = 0.0;
    double J10 = 0.0;
};

struct EtaReport {
    double eta = 0.0;  // 1/GHz
    double r = 0.0;    // delta1/delta2
    double gamma = 0.0;
    std::array<double, 7> A{};
    bool near_pole = false;  // within 10 MHz of a perturbative pole
};

/// Quadratic coefficient of the drive-induced ZZ shift, beta_ZZ ~ zeta + eta Omega^2.
EtaReport dynamical_eta(const EtaParams& p);

enum class CancellationMethod { LeastAction, QuadraticOrder, ClosedForm };

struct CancellationReport {
    std::optional<double> omega_star_la;
    std::optional<double> omega_star_on;
    std::optional<double> omega_star_closed;
};

/// Drive amplitude at which the total ZZ vanishes; absent means no dynamical
/// freedom. The least-action root is accepted only when it is a genuine
/// crossing (small residual, unflagged blocks) and the leading-order parts
/// oppose in sign.
CancellationReport cancellation_amplitude(const DeviceSpec& device, const DriveSpec& drive,
                                          const CrOptions& opts = {}, double omega_max = 0.2,
                                          double grid_step = 0.001);

/// f_ECR of the echoed sequence from the two-qubit coefficients.
double echoed_cr_rate(const PauliCoefficients& coeffs);

struct Zx90Calibration {
    double Omega = 0.0;
    double f_ecr = 0.0;
    double alpha_zx = 0.0;
};

/// Solve f_ECR(Omega) = 1/(4 tau) for a flat-top length tau (ns). Throws
/// DomainError with the minimum feasible gate length when the required rate
/// exceeds the saturated maximum.
Zx90Calibration calibrate_zx90(const CrEngine& engine, double tau_ns, double omega_max = 0.2);

struct ActiveCancellation {
    double A = 0.0;    // cancellation amplitude (GHz)
    double phi = 0.0;  // cancellation phase (rad)
    double residual = 0.0;
    bool converged = false;
};

/// Find the target-qubit tone (A, phi) that zeroes beta_IX and beta_IY.
ActiveCancellation active_cancellation(const CrEngine& engine, double Omega);

}  // namespace zzfree

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "zzfree/device.hpp"

namespace zzfree {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealMatrix = Eigen::MatrixXd;

/// Multi-index occupation label (n_1, ..., n_K) in subsystem declaration order.
using BareLabel = std::vector<int>;

/// Dense Hermitian matrix on the labeled tensor-product Fock basis.
/// Basis ordering is row-major over the multi-indices in declaration order.
struct HamiltonianMatrix {
    Matrix entries;
    std::vector<BareLabel> basis;
    std::vector<int> dims;

    int dim() const { return static_cast<int>(entries.rows()); }
    int index_of(const BareLabel& lab) const;
    int total_excitation(int basis_index) const;
    bool is_hermitian(double rel_tol = 1e-12) const;
};

/// Lowering operator of an n-level ladder.
RealMatrix lowering(int dim);

/// Operator acting on subsystem `which`, identity elsewhere.
Matrix embed(const std::vector<int>& dims, int which, const Matrix& op);

/// Bare ladders plus -g_ij (a_i - a_i^+)(a_j - a_j^+); with device.rwa only
/// the excitation-conserving part +g_ij (a_i a_j^+ + a_i^+ a_j) is kept.
HamiltonianMatrix build_static(const DeviceSpec& device);

struct DriveOperators {
    Matrix control;    // Omega * sum sqrt(n+1)(|n><n+1| + h.c.) on control
    Matrix crosstalk;  // R * Omega * (same) on crosstalk target, zero matrix if none
};

DriveOperators build_drive(const DeviceSpec& device, const DriveSpec& drive);

/// Time-independent Hamiltonian in the frame rotating at drive.omega_d,
/// expressed in the dressed (labeled) eigenbasis of H_static: diagonal dressed
/// energies shifted by -omega_d * N, plus the drive restricted to |dN| = 1
/// with amplitudes Omega/2 (control, phase phi0) and R*Omega/2 (crosstalk,
/// phase phi0 + phiR). Terms still oscillating in the frame are dropped.
/// Basis labels of the result are the bare labels of H_static.
HamiltonianMatrix rotating_frame_rwa(const HamiltonianMatrix& H_static,
                                     const DriveOperators& ops, const DriveSpec& drive,
                                     double omega_d);

}  // namespace zzfree

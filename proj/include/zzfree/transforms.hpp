#pragma once

#include <map>
#include <string>

#include "zzfree/hamiltonian.hpp"

namespace zzfree {

/// Eigenvalues with bare-label assignment by maximum overlap. Labeling is a
/// bijection (greedy by descending overlap). `vectors` columns are ordered by
/// basis label index and gauge-fixed so the largest-magnitude component of
/// each eigenvector is real positive.
struct DressedSpectrum {
    std::vector<double> energies;   // energies[i] belongs to basis label i
    std::vector<double> overlaps;   // |<bare label i | eigvec>|
    Matrix vectors;
    std::vector<BareLabel> basis;
    std::vector<int> dims;
    bool ambiguous = false;         // two best overlaps within 1e-6

    double energy_of(const BareLabel& lab) const;
    double overlap_of(const BareLabel& lab) const;
};

DressedSpectrum diagonalize_labeled(const HamiltonianMatrix& H);

/// Closed-form Schrieffer-Wolff reduction of a qubit/coupler/qubit device to
/// dressed two-qubit parameters. Requires exactly two qubits and one coupler.
struct EffectiveTwoQubit {
    double omega1_bar = 0.0, omega2_bar = 0.0;
    double delta1_bar = 0.0, delta2_bar = 0.0;
    double J[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // J[n1][n2], two-photon limit

    double detuning() const { return omega2_bar - omega1_bar; }  // Delta-bar
    double gamma() const { return J[1][0] / J[0][1]; }
};

EffectiveTwoQubit sw_effective(const DeviceSpec& device);

/// Unitary block diagonalization via the least-action transform
/// T = S S_BD^+ S_P^{-1/2}: among unitaries realizing the block structure, T
/// is the one closest to the identity. Eigenvectors are assigned to blocks by
/// dominant squared support, ties toward the first block.
struct BlockDecomposition {
    Matrix T;
    Matrix H_BD;
    std::vector<std::vector<int>> blocks;
    double min_block_support = 1.0;  // sqrt of the smallest assigned support
};

BlockDecomposition least_action_blockdiag(const Matrix& H,
                                          const std::vector<std::vector<int>>& blocks);

/// Coefficients of a 2- or 3-qubit Hamiltonian in the Pauli basis, using the
/// normalization of the effective CR Hamiltonian: strings containing X or Y
/// divide by 2, pure Z/I strings divide by 2^(number of non-identity factors).
struct PauliCoefficients {
    std::map<std::string, double> values;
    int nqubits = 2;

    double get(const std::string& label) const;
    Matrix reconstruct() const;
};

double pauli_divisor(const std::string& label);
PauliCoefficients pauli_decompose(const Matrix& H);

}  // namespace zzfree

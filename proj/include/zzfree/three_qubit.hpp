#pragma once

#include <array>
#include <map>

#include "zzfree/transforms.hpp"

namespace zzfree {

enum class ThreeQubitTopology { Triangle, Chain };

struct ThreeQubitCoupler {
    double omega_c = 0.0;
    int qa = 0, qb = 1;      // coupled qubit indices
    double ga = 0.0, gb = 0.0;
};

struct ThreeQubitDevice {
    std::array<double, 3> omega{};
    std::array<double, 3> delta{};
    std::vector<ThreeQubitCoupler> couplers;
    std::map<std::pair<int, int>, double> g_direct;  // keys (0,1), (0,2), (1,2)

    ThreeQubitTopology topology() const;
    double direct(int a, int b) const;
    /// Built from a DeviceSpec with three qubit-role subsystems; couplers must
    /// each couple exactly two qubits.
    static ThreeQubitDevice from_device(const DeviceSpec& device);
};

enum class ThreeQubitMethod { RwaPt, RwaSsw, RwaSw, NrwaPt, NrwaSsw, NrwaSw };

const char* method_name(ThreeQubitMethod m);
ThreeQubitMethod parse_method(const std::string& name);

struct ThreeQubitEffective {
    // dressed transition frequencies wbar_q(n) for n = 0..2
    std::array<std::array<double, 3>, 3> wbar{};
    // J[pair][n][m] for n, m in {0, 1}; pair order (0,1), (0,2), (1,2)
    std::array<std::array<std::array<double, 2>, 2>, 3> J{};

    static int pair_index(int a, int b);
};

/// Coupler elimination: dressed frequencies and state-resolved exchange rates.
ThreeQubitEffective effective_couplings(const ThreeQubitDevice& dev);

/// Two- and three-body Pauli coefficients of the computational subspace.
PauliCoefficients three_q_pauli(const ThreeQubitDevice& dev, ThreeQubitMethod method);

std::map<ThreeQubitMethod, PauliCoefficients> method_comparison(const ThreeQubitDevice& dev);

}  // namespace zzfree

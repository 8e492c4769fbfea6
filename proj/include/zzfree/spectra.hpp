#pragma once

#include <vector>

namespace zzfree {

// All frequencies and energies are linear frequencies in GHz. The 2*pi shows
// up only in time evolution (channels.hpp) and in the flux-noise dephasing
// formula, matching how the source values are quoted.

struct TransmonParams {
    double EC = 0.0;     // charging energy (GHz)
    double EJ = 0.0;     // Josephson energy (GHz)
    double ng = 0.0;     // offset charge
    int ncut = 15;       // charge-basis cutoff, adaptively doubled
};

struct DuffingParams {
    double omega = 0.0;  // 0->1 transition (GHz)
    double delta = 0.0;  // anharmonicity (GHz, signed)
    int nlevels = 2;
};

struct CsfqParams {
    double EC = 0.0;
    double EJ = 0.0;     // large-junction Josephson energy (GHz)
    double alpha = 0.0;  // junction ratio, 0 < alpha < 1/2
    double f = 0.5;      // reduced flux Phi/Phi0
    int L = 10;          // potential expanded to order 2L
};

struct TunableTransmonParams {
    double EC = 0.0;
    double EJsum = 0.0;  // E_J1 + E_J2 (GHz)
    double d = 0.0;      // junction asymmetry (a-1)/(a+1)
    double f = 0.0;      // reduced flux
};

struct ResonatorParams {
    double omega_r = 0.0;  // GHz; if 0, derived from L (nH) and C (fF)
    double L = 0.0;
    double C = 0.0;

    double frequency() const;
};

/// Ordered bare level energies with E(0) = 0.
struct LevelLadder {
    std::vector<double> energies;

    double transition(int n) const { return energies.at(n + 1) - energies.at(n); }
    double omega01() const { return transition(0); }
    double anharmonicity() const { return transition(1) - transition(0); }
    int levels() const { return static_cast<int>(energies.size()); }
};

/// Lowest k eigenvalues of 4EC(n-ng)^2 - (EJ/2)(|n><n+1| + h.c.) in the
/// truncated charge basis, shifted so E(0) = 0. The cutoff is doubled until
/// the top requested level moves by less than 1e-9 GHz.
LevelLadder transmon_charge_spectrum(const TransmonParams& p, int k);

/// E(n) = omega*n + (delta/2) n(n-1).
LevelLadder duffing_ladder(const DuffingParams& p);

struct CsfqSpectrum {
    double omega01 = 0.0;
    double delta = 0.0;
    double xi = 0.0;      // minimizing expansion parameter
    double phi0 = 0.0;    // potential minimum
};

/// CSFQ spectrum from the order-2L potential expansion around the minimum,
/// Rayleigh-Schrodinger orders 0+2+3 in the Fock basis, with the expansion
/// parameter xi chosen by golden-section minimization of f01(xi).
CsfqSpectrum csfq_spectrum(const CsfqParams& p);

/// Same computation, returning the lowest k ladder levels.
LevelLadder csfq_ladder(const CsfqParams& p, int k);

/// Flux-tuned plasma frequency: omega(f) = sqrt(8 EC EJ(f)), delta = -EC,
/// omega01 = omega(f) + delta, with EJ(f) = EJsum sqrt(cos^2 + d^2 sin^2).
struct TunableTransmonSpectrum {
    double omega01 = 0.0;
    double delta = 0.0;
};
TunableTransmonSpectrum tunable_transmon_freq(const TunableTransmonParams& p);

struct PairCouplings {
    double g_qr = 0.0;
    double g_12 = 0.0;
};

/// g_qr = (1/2)(C_qr/sqrt(C_q C_r)) sqrt(w_q w_r) and the two-hop analogue
/// g_12 = (1/2)(C_1r C_2r / sqrt(C_1 C_2) C_r) sqrt(w_1 w_2).
PairCouplings coupling_from_capacitances(double C1r, double C2r, double C1, double C2,
                                         double Cr, double omega1, double omega2,
                                         double omega_r);

}  // namespace zzfree
